#pragma once

#include <string>

#include "pqs/security.hpp"
#include "pqs/states.hpp"
#include "pqs/twisting.hpp"

namespace pqs {

// I(A:B) - I(A:E) on the ccq density matrix: classical mutual information of
// the outcome table minus the Holevo information of Eve about A's register.
// May be negative; reported as-is.
double dw_rate(const CcqEnsemble& c);

// log2 of the trace norm of the partial transpose over the given positions.
// Values above -1e-12 that land below zero are numeric noise and clamp to 0.
double log_negativity(const DensityMatrix& rho, const std::vector<int>& cut);
// Same with the cut taken over all B-side labels.
double log_negativity(const DensityMatrix& rho);

struct PbitNegativityResult {
  bool precondition_holds = false;  // both sqrt blocks stay positive under PT
  double formula = 0.0;             // log2(1 + ||X^Gamma||)
};

// Closed-form negativity of an X-form pbit; the formula is certified only when
// the precondition flag is set.
PbitNegativityResult pbit_log_negativity(const XFormPbit& x,
                                         const Options& opt = {});

struct ErUpperResult {
  double bound = 0.0;
  bool irreducible = false;
};

// log2 d plus the average of the supplied per-outcome bounds; conditionals
// must match the post-measurement shield states of gamma for outcomes ii.
// All-zero bounds certify the pdit irreducible.
ErUpperResult er_upper_bound_pdit(
    const DensityMatrix& gamma, const std::vector<DensityMatrix>& conditionals,
    const std::vector<double>& conditional_er_bounds);

struct WitnessResult {
  double max_overlap = 0.0;
  DensityMatrix best_key;  // traced key state achieving the max
};

// Samples product pure states across the (A A'):(B B') cut, twists, traces the
// shield, and reports the largest overlap with the maximally entangled state.
WitnessResult er_lower_witness(long samples, const Twisting& tw, long dAp,
                               long dBp, uint64_t seed);

// max(0, 1 - 16 eps).
double near_pbit_rate_bound(double eps);

struct NearPbitDiagnostics {
  double eps = 0.0;
  double bound = 0.0;         // max(0, 1 - 16 eps)
  double i_ab = 0.0;
  double i_ae = 0.0;
  double dw = 0.0;
  double i_ab_floor = 0.0;    // 1 - 4 eps log2(4) - h(eps)
  double i_ae_ceiling = 0.0;  // 8 eps - h(eps), as stated
};

// Evaluates the mutual-information legs on a concrete squeezed ccq ensemble.
NearPbitDiagnostics near_pbit_diagnostics(const CcqEnsemble& squeezed,
                                          double eps);

struct RateReport {
  double dw_rate = 0.0;
  double log_negativity = 0.0;
  bool er_upper_known = false;
  double er_upper = 0.0;
  double er_lower_witness = 0.0;
  std::string notes;
};

}  // namespace pqs
