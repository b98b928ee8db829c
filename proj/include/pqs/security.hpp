#pragma once

#include <string>
#include <vector>

#include "pqs/linalg.hpp"

namespace pqs {

// Classical-classical-quantum ensemble: outcome probabilities for the key
// measurement plus Eve's conditional state per outcome.
struct CcqEnsemble {
  long dA = 0;
  long dB = 0;
  Eigen::MatrixXd p;      // dA x dB outcome probabilities
  std::vector<Mat> eve;   // row-major over (i, j); empty matrix when p(i,j) <= tol
  double tol = kDefaultTol;

  const Mat& eve_at(long i, long j) const;
  bool has_eve(long i, long j) const;
  long eve_dim() const;
  Mat average_eve() const;
  void validate() const;
};

// Measure the first two subsystems of a purification in the standard basis and
// hand the environment to Eve.
CcqEnsemble ccq_of(const DensityMatrix& rho);

// Max deviation of Eve's conditionals from their average stays within eps.
bool is_B_secure(const CcqEnsemble& c, double eps);
// Additionally the outcome distribution is eps-close to uniform diagonal.
bool has_B_key(const CcqEnsemble& c, double eps);

// chi = S(average Eve) - sum p S(conditional), base 2.
double holevo(const CcqEnsemble& c);

// sum p_ij || eve_ij - average ||.
double security_norm(const CcqEnsemble& c);
// l1 distance of the outcome distribution from uniform diagonal.
double uniformity(const CcqEnsemble& c);
// Trace distance of the full ccq state from uniform-diagonal key tensor average Eve.
double joint_distance(const CcqEnsemble& c);

// One implication evaluated on a concrete ensemble: premise is the epsilon the
// implication is instantiated at, lhs the concluded quantity, rhs its bound.
struct BoundRow {
  std::string name;
  double premise = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

std::vector<BoundRow> criteria_bounds(const CcqEnsemble& c);

// Trace norm of the (00,11) key block.
double block_norm_key_quality(const DensityMatrix& rho);

// Closed-form distance-to-private-state bound from the block norm defect.
double delta_of_eps(double eps);

struct CoherenceReport {
  double overlap = 0.0;       // Tr rho P+
  double re_coherence = 0.0;  // Re <00|rho|11>
  bool to_coherence = false;  // overlap >= 1-eps implies coherence > 1/2-eps
  bool to_overlap = false;    // coherence > 1/2-eps implies overlap >= 1-2eps
};

CoherenceReport coherence_overlap_bounds(const DensityMatrix& two_qubit);

struct EveBlockRow {
  long i = 0, j = 0, ip = 0, jp = 0;
  double block_norm = 0.0;   // trace norm of the (ij, i'j') key block
  double fid_product = 0.0;  // sqrt(p p') F(eve_ij, eve_i'j')
};

std::vector<EveBlockRow> eve_block_representation(const DensityMatrix& rho);

// Rotate Eve's side to the canonical frame of the average Eve state so that
// ensembles from different purifications can be compared outcome by outcome.
CcqEnsemble canonical_gauge(const CcqEnsemble& c);
// Trace distance between two ccq states after canonical gauge fixing.
double ccq_distance(const CcqEnsemble& a, const CcqEnsemble& b);

}  // namespace pqs
