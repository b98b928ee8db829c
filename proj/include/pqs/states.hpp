#pragma once

#include <utility>
#include <vector>

#include "pqs/linalg.hpp"

namespace pqs {

// Two-qubit key state in block form determined by one operator X with trace norm 1.
struct XFormPbit {
  Mat X;
  long dAp = 0;  // shield party dimensions; dAp * dBp must equal X.rows()
  long dBp = 0;

  void validate(double tol = kDefaultTol) const;
};

// Key dimension d, shield state sigma, and the d controlled shield unitaries.
struct PditSpec {
  long d = 2;
  DensityMatrix sigma;
  std::vector<Mat> unitaries;

  void validate(double tol = kDefaultTol) const;
};

struct FlagsFormResult {
  DensityMatrix state;
  bool orthogonal_flags = false;
};

// Projector onto (1/sqrt(d)) sum_i |ii>, layout (A, B).
DensityMatrix max_entangled(long d, const Options& opt = {});

// Normalized projectors onto the symmetric and antisymmetric subspaces of
// C^d tensor C^d, layout (A', B').
DensityMatrix werner_sym(long d, const Options& opt = {});
DensityMatrix werner_asym(long d, const Options& opt = {});

// tau1 = ((rho_s + rho_a)/2)^(tensor k), tau2 = rho_s^(tensor k); each copy adds a
// shield pair labeled A'<i>, B'<i>.
std::pair<DensityMatrix, DensityMatrix> hiding_pair(long d, int k, const Options& opt = {});

// P+ on the key pair tensor sigma on the shield.
DensityMatrix basic_pdit(long d, const DensityMatrix& sigma, const Options& opt = {});

// (1/d) sum_ij |ii><jj| tensor U_i sigma U_j^dag.
DensityMatrix pdit_from_spec(const PditSpec& spec, const Options& opt = {});

// Two-qubit key state with blocks (sqrt(XX^dag), X; X^dag, sqrt(X^dag X)) / 2.
DensityMatrix pbit_from_X(const XFormPbit& x, const Options& opt = {});

// p psi+ tensor rho_plus + (1-p) psi- tensor rho_minus.
FlagsFormResult flags_form(double p, const DensityMatrix& rho_plus,
                           const DensityMatrix& rho_minus, const Options& opt = {});

// Swap-operator key state: X = V/d^2 on a d x d shield pair.
DensityMatrix gamma_V(long d, const Options& opt = {});

// Hadamard-phase key state on a d x d shield pair; d must be a power of 2.
DensityMatrix flower(long d, const Options& opt = {});

Mat swap_operator(long d);
Mat sym_projector(long d);
Mat asym_projector(long d);

}  // namespace pqs
