#pragma once

#include <array>

#include "pqs/states.hpp"

namespace pqs {

struct FamilyParams {
  double p = 0.3;
  long d = 2;
  long k = 1;
  long m = 1;

  void validate() const;
};

// Two-qubit key with corner blocks p(tau1 +- tau2)/2 and middle diagonal
// (1/2 - p) tau2, where (tau1, tau2) is the hiding pair of tensor power k.
DensityMatrix family_state(double p, long d, long k, const Options& opt = {});

// Analytic positivity of the partial transpose: 0 < p <= 1/3 and
// (1 - p)/p >= (d/(d-1))^k.
bool ppt_condition(double p, long d, long k);

// Exact smallest eigenvalue of the partial transpose, computed from the
// pattern spectrum of the hiding blocks; valid at any (d, k).
double family_pt_min_eig(double p, long d, long k);

struct RecurrenceResult {
  DensityMatrix state;
  double success = 0.0;
};

// Bilateral CNOT from the source key onto the target key, measurement of the
// target key in the computational basis, post-selection on the all-zero
// outcome; both shields are kept.
RecurrenceResult recurrence_round(const DensityMatrix& source,
                                  const DensityMatrix& target);

// State surviving m-1 recurrence rounds on family states, built from the
// block formula (tensor powers of the key blocks) without simulating rounds.
DensityMatrix recurrence_output(double p, long d, long k, long m,
                                const Options& opt = {});

// Normalization N = 2 p^m + 2 (1/2 - p)^m; equals the post-selection
// probability accumulated over the m-1 rounds.
double recurrence_success(double p, long m);

// (1/2)(1 - 2^{-k})^m / (1 + ((1-2p)/(2p))^m).
double recurrence_block_norm(double p, long k, long m);

// Exact smallest eigenvalue of the recurrence output's partial transpose,
// from the per-copy pattern spectrum; valid far beyond dense reach.
double recurrence_pt_min_eig(double p, long d, long k, long m);

// The privacy-squeezed recurrence state in closed form: a two-qubit state
// with corner entries a, coherence b = a (1 - 2^{-k})^m, and middle entries c.
DensityMatrix squeezed_recurrence_state(double p, long k, long m,
                                        const Options& opt = {});

// Bell-correlated hiding flags: weights over (phi+, phi-, psi+, psi-) with
// flag states tau_i (x) tau_j.
DensityMatrix npt_candidate(long d, long k,
                            const std::array<double, 4>& weights = {0.25, 0.25,
                                                                    0.25, 0.25},
                            const Options& opt = {});

// Closed form for the witness expectation separating the candidate's
// transposed blocks; strictly positive for d >= 2.
double npt_witness_value(long d, long k);

// Same quantity by dense trace evaluation.
double npt_witness_numeric(long d, long k, const Options& opt = {});

struct CpqcReport {
  long d = 0;
  long k = 0;
  std::array<double, 2> outcome_prob{};
  std::array<double, 2> outcome_fidelity{};
  double controller_overlap = 0.0;
  double flag_overlap = 0.0;
  double premeasure_key_distance = 0.0;
  bool premeasure_key_ppt = false;
};

// Controlled key state: Bell-correlated purified hiding flags with a
// controller register split into orthogonal sectors. Reports the controller's
// two-outcome measurement statistics and the post-outcome key fidelities.
CpqcReport cpqc_demo(long d, long k, const Options& opt = {});

}  // namespace pqs
