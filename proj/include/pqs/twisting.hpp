#pragma once

#include <vector>

#include "pqs/linalg.hpp"

namespace pqs {

// Key-controlled shield unitary U = sum_kl |kl><kl| tensor U^{kl}.
struct Twisting {
  long dA = 2;
  long dB = 2;
  std::vector<Mat> blocks;  // row-major over (k, l): blocks[k*dB + l]

  const Mat& block(long k, long l) const;
  long shield_dim() const;
  void validate(double tol = kDefaultTol) const;
  static Twisting identity_twisting(long dA, long dB, long shield);
};

Mat assemble(const Twisting& t);

DensityMatrix apply_twisting(const DensityMatrix& rho, const Twisting& t);

// Zero out blocks between different key indices (dephasing in the key basis).
DensityMatrix key_dephase(const DensityMatrix& rho, long dA, long dB);

// Twisting that rotates the (00,11) block to its singular-value form, so the
// reduced key state picks up coherence equal to that block's trace norm.
// full_corollary additionally rotates the (01,10) block.
Twisting psq_twisting(const DensityMatrix& rho, bool full_corollary = false);

// Twist by psq_twisting, then trace out the shield; two-qubit output whose
// (|00>,|11>) entry equals the trace norm of the input's (00,11) block.
DensityMatrix privacy_squeeze(const DensityMatrix& rho, bool full_corollary = false);

}  // namespace pqs
