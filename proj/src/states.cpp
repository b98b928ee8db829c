#include "pqs/states.hpp"

#include <cmath>
#include <string>

namespace pqs {

namespace {

SystemLayout pair_layout(long d, int index, int count) {
  if (count == 1) return {{d, d}, {"A'", "B'"}};
  std::string n = std::to_string(index);
  return {{d, d}, {"A'" + n, "B'" + n}};
}

void require_key_dim(long d) {
  if (d < 2) fail(ErrorCode::invalid_arg, "key dimension must be at least 2");
}

void check_unitary(const Mat& u, double tol, const char* what) {
  if (u.rows() != u.cols()) fail(ErrorCode::dimension, std::string(what) + ": block is not square");
  double res = (u * u.adjoint() - identity(u.rows())).cwiseAbs().maxCoeff();
  if (res > std::max(tol, 1e-10))
    fail(ErrorCode::invalid_arg, std::string(what) + ": block is not unitary");
}

}  // namespace

void XFormPbit::validate(double tol) const {
  if (X.rows() != X.cols()) fail(ErrorCode::dimension, "X must be square");
  if (dAp < 1 || dBp < 1 || dAp * dBp != X.rows())
    fail(ErrorCode::dimension, "shield party dimensions do not match X");
  double n = trace_norm(X);
  if (std::abs(n - 1.0) > std::max(tol, 1e-9))
    fail(ErrorCode::invalid_arg, "trace norm of X must equal 1");
}

void PditSpec::validate(double tol) const {
  require_key_dim(d);
  sigma.validate();
  if (static_cast<long>(unitaries.size()) != d)
    fail(ErrorCode::invalid_arg, "need exactly d shield unitaries");
  for (const Mat& u : unitaries) {
    check_unitary(u, tol, "pdit spec");
    if (u.rows() != sigma.m.rows())
      fail(ErrorCode::dimension, "unitary dimension does not match shield");
  }
}

Mat swap_operator(long d) {
  Mat v = Mat::Zero(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

Mat sym_projector(long d) { return 0.5 * (identity(d * d) + swap_operator(d)); }

Mat asym_projector(long d) { return 0.5 * (identity(d * d) - swap_operator(d)); }

DensityMatrix max_entangled(long d, const Options& opt) {
  require_key_dim(d);
  guard_dim(d * d, opt.max_dim);
  Vec psi = Vec::Zero(d * d);
  for (long i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return {psi * psi.adjoint(), {{d, d}, {"A", "B"}}, opt.tol};
}

DensityMatrix werner_sym(long d, const Options& opt) {
  require_key_dim(d);
  guard_dim(d * d, opt.max_dim);
  double w = 2.0 / static_cast<double>(d * d + d);
  return {w * sym_projector(d), {{d, d}, {"A'", "B'"}}, opt.tol};
}

DensityMatrix werner_asym(long d, const Options& opt) {
  require_key_dim(d);
  guard_dim(d * d, opt.max_dim);
  double w = 2.0 / static_cast<double>(d * d - d);
  return {w * asym_projector(d), {{d, d}, {"A'", "B'"}}, opt.tol};
}

std::pair<DensityMatrix, DensityMatrix> hiding_pair(long d, int k, const Options& opt) {
  require_key_dim(d);
  if (k < 1) fail(ErrorCode::invalid_arg, "copy count must be at least 1");
  long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= d * d;
    guard_dim(total, opt.max_dim);
  }
  Mat s = werner_sym(d, opt).m;
  Mat a = werner_asym(d, opt).m;
  Mat base1 = 0.5 * (s + a);
  Mat tau1 = kron_power(base1, k);
  Mat tau2 = kron_power(s, k);
  SystemLayout layout = pair_layout(d, 1, k);
  for (int i = 2; i <= k; ++i) layout = merge(layout, pair_layout(d, i, k));
  return {{tau1, layout, opt.tol}, {tau2, layout, opt.tol}};
}

DensityMatrix basic_pdit(long d, const DensityMatrix& sigma, const Options& opt) {
  require_key_dim(d);
  guard_dim(d * d * sigma.m.rows(), opt.max_dim);
  DensityMatrix key = max_entangled(d, opt);
  return {tensor(key.m, sigma.m), merge(key.layout, sigma.layout), opt.tol};
}

DensityMatrix pdit_from_spec(const PditSpec& spec, const Options& opt) {
  spec.validate(opt.tol);
  long d = spec.d;
  long s = spec.sigma.m.rows();
  guard_dim(d * d * s, opt.max_dim);
  Mat out = Mat::Zero(d * d * s, d * d * s);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      Mat blk = spec.unitaries[i] * spec.sigma.m * spec.unitaries[j].adjoint() /
                static_cast<double>(d);
      out.block((i * d + i) * s, (j * d + j) * s, s, s) = blk;
    }
  SystemLayout key{{d, d}, {"A", "B"}};
  return {out, merge(key, spec.sigma.layout), opt.tol};
}

DensityMatrix pbit_from_X(const XFormPbit& x, const Options& opt) {
  x.validate(opt.tol);
  long s = x.X.rows();
  guard_dim(4 * s, opt.max_dim);
  Mat out = Mat::Zero(4 * s, 4 * s);
  out.block(0, 0, s, s) = 0.5 * hermitian_sqrt(x.X * x.X.adjoint());
  out.block(0, 3 * s, s, s) = 0.5 * x.X;
  out.block(3 * s, 0, s, s) = 0.5 * x.X.adjoint();
  out.block(3 * s, 3 * s, s, s) = 0.5 * hermitian_sqrt(x.X.adjoint() * x.X);
  return {out, {{2, 2, x.dAp, x.dBp}, {"A", "B", "A'", "B'"}}, opt.tol};
}

FlagsFormResult flags_form(double p, const DensityMatrix& rho_plus,
                           const DensityMatrix& rho_minus, const Options& opt) {
  if (p < 0.0 || p > 1.0) fail(ErrorCode::invalid_arg, "weight must lie in [0, 1]");
  if (rho_plus.m.rows() != rho_minus.m.rows())
    fail(ErrorCode::dimension, "flag states differ in dimension");
  long s = rho_plus.m.rows();
  guard_dim(4 * s, opt.max_dim);
  Vec plus = Vec::Zero(4), minus = Vec::Zero(4);
  plus(0) = plus(3) = 1.0 / std::sqrt(2.0);
  minus(0) = 1.0 / std::sqrt(2.0);
  minus(3) = -1.0 / std::sqrt(2.0);
  Mat out = p * tensor(Mat(plus * plus.adjoint()), rho_plus.m) +
            (1.0 - p) * tensor(Mat(minus * minus.adjoint()), rho_minus.m);
  SystemLayout key{{2, 2}, {"A", "B"}};
  FlagsFormResult res;
  res.state = {out, merge(key, rho_plus.layout), opt.tol};
  res.orthogonal_flags = std::abs((rho_plus.m * rho_minus.m).trace()) <= std::max(opt.tol, 1e-10);
  return res;
}

DensityMatrix gamma_V(long d, const Options& opt) {
  require_key_dim(d);
  XFormPbit x;
  x.X = swap_operator(d) / static_cast<double>(d * d);
  x.dAp = d;
  x.dBp = d;
  return pbit_from_X(x, opt);
}

DensityMatrix flower(long d, const Options& opt) {
  if (d < 2 || (d & (d - 1)) != 0)
    fail(ErrorCode::invalid_arg, "shield dimension must be a power of 2");
  Mat h(2, 2);
  double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  Mat w = h;
  for (long m = 2; m < d; m *= 2) w = tensor(w, h);
  Mat u = Mat::Zero(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) u(i * d + i, j * d + j) = w(i, j);
  XFormPbit x;
  x.X = u.transpose() / static_cast<double>(d);
  x.dAp = d;
  x.dBp = d;
  return pbit_from_X(x, opt);
}

}  // namespace pqs
