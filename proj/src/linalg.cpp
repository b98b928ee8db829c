#include "pqs/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pqs {

namespace {

std::vector<long> strides_of(const std::vector<long>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

void check_positions(const std::vector<int>& pos, std::size_t nsys, const char* what) {
  std::vector<int> sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= static_cast<int>(nsys))
      fail(ErrorCode::invalid_arg, std::string(what) + ": subsystem index out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      fail(ErrorCode::invalid_arg, std::string(what) + ": duplicate subsystem index");
  }
}

double max_abs(const Mat& m) {
  double v = 0.0;
  for (long c = 0; c < m.cols(); ++c)
    for (long r = 0; r < m.rows(); ++r) v = std::max(v, std::abs(m(r, c)));
  return v;
}

}  // namespace

long SystemLayout::total_dim() const {
  long t = 1;
  for (long d : dims) t *= d;
  return t;
}

void SystemLayout::validate() const {
  if (dims.size() != labels.size())
    fail(ErrorCode::invalid_arg, "layout: dims and labels differ in length");
  for (long d : dims)
    if (d < 1) fail(ErrorCode::dimension, "layout: subsystem dimension below 1");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) fail(ErrorCode::invalid_arg, "layout: empty label");
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) fail(ErrorCode::invalid_arg, "layout: duplicate label " + labels[i]);
  }
}

int SystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  fail(ErrorCode::unknown_name, "layout: no subsystem labeled " + label);
}

std::vector<int> SystemLayout::indices_of(const std::vector<std::string>& names) const {
  std::vector<int> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(index_of(n));
  return out;
}

SystemLayout SystemLayout::subset(const std::vector<int>& keep) const {
  check_positions(keep, dims.size(), "layout subset");
  SystemLayout out;
  for (int i : keep) {
    out.dims.push_back(dims[i]);
    out.labels.push_back(labels[i]);
  }
  return out;
}

SystemLayout SystemLayout::single(long d, const std::string& label) { return {{d}, {label}}; }

SystemLayout SystemLayout::keyed(long dA, long dB, long dAp, long dBp) {
  return {{dA, dB, dAp, dBp}, {"A", "B", "A'", "B'"}};
}

SystemLayout merge(const SystemLayout& a, const SystemLayout& b) {
  SystemLayout out = a;
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  out.validate();
  return out;
}

void DensityMatrix::validate() const {
  layout.validate();
  if (m.rows() != m.cols()) fail(ErrorCode::dimension, "density matrix is not square");
  if (layout.total_dim() != m.rows())
    fail(ErrorCode::dimension, "layout dimension does not match matrix size");
  double herm = max_abs(m - m.adjoint());
  if (herm > tol) fail(ErrorCode::numeric, "Hermiticity residual above tolerance");
  double tr_err = std::abs(m.trace() - cx(1.0, 0.0));
  if (tr_err > tol) fail(ErrorCode::numeric, "trace deviates from 1 beyond tolerance");
  if (min_eigenvalue(m, tol) < -tol)
    fail(ErrorCode::numeric, "negative eigenvalue beyond tolerance");
}

DensityMatrix PureState::to_density(double tol) const {
  DensityMatrix out;
  out.m = v * v.adjoint();
  out.layout = layout;
  out.tol = tol;
  return out;
}

Mat tensor(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec tensor(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Mat kron_power(const Mat& a, int k) {
  if (k < 1) fail(ErrorCode::invalid_arg, "kron_power: exponent below 1");
  Mat out = a;
  for (int i = 1; i < k; ++i) out = tensor(out, a);
  return out;
}

Mat partial_trace(const Mat& m, const std::vector<long>& dims, const std::vector<int>& keep) {
  check_positions(keep, dims.size(), "partial_trace");
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<int> traced;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), i)) traced.push_back(i);

  auto strides = strides_of(dims);
  long total = 1;
  for (long d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    fail(ErrorCode::dimension, "partial_trace: matrix size does not match dims");

  long K = 1;
  for (int i : keep_sorted) K *= dims[i];
  long T = total / K;

  // Offsets into the full index for every kept multi-index and every traced one.
  std::vector<long> offK(K, 0), offT(T, 0);
  {
    std::vector<long> digit(keep_sorted.size(), 0);
    for (long k = 0; k < K; ++k) {
      long off = 0;
      for (std::size_t p = 0; p < keep_sorted.size(); ++p) off += digit[p] * strides[keep_sorted[p]];
      offK[k] = off;
      for (int p = static_cast<int>(keep_sorted.size()) - 1; p >= 0; --p) {
        if (++digit[p] < dims[keep_sorted[p]]) break;
        digit[p] = 0;
      }
    }
  }
  {
    std::vector<long> digit(traced.size(), 0);
    for (long t = 0; t < T; ++t) {
      long off = 0;
      for (std::size_t p = 0; p < traced.size(); ++p) off += digit[p] * strides[traced[p]];
      offT[t] = off;
      for (int p = static_cast<int>(traced.size()) - 1; p >= 0; --p) {
        if (++digit[p] < dims[traced[p]]) break;
        digit[p] = 0;
      }
    }
  }

  Mat out = Mat::Zero(K, K);
  for (long kc = 0; kc < K; ++kc)
    for (long kr = 0; kr < K; ++kr) {
      cx s = 0.0;
      for (long t = 0; t < T; ++t) s += m(offK[kr] + offT[t], offK[kc] + offT[t]);
      out(kr, kc) = s;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  DensityMatrix out;
  out.m = partial_trace(rho.m, rho.layout.dims, keep_sorted);
  out.layout = rho.layout.subset(keep_sorted);
  out.tol = rho.tol;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  return partial_trace(rho, rho.layout.indices_of(keep));
}

std::vector<int> b_side(const SystemLayout& layout) {
  std::vector<int> out;
  for (std::size_t i = 0; i < layout.labels.size(); ++i)
    if (!layout.labels[i].empty() && layout.labels[i][0] == 'B')
      out.push_back(static_cast<int>(i));
  return out;
}

Mat partial_transpose(const Mat& m, const std::vector<long>& dims,
                      const std::vector<int>& transposed) {
  check_positions(transposed, dims.size(), "partial_transpose");
  auto strides = strides_of(dims);
  long total = 1;
  for (long d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    fail(ErrorCode::dimension, "partial_transpose: matrix size does not match dims");

  std::vector<char> is_t(dims.size(), 0);
  for (int i : transposed) is_t[i] = 1;

  // Split every full index into the offset carried by transposed positions and the rest.
  std::vector<long> offT(total, 0);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx, off = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) {
      long digit = rem / strides[p];
      rem -= digit * strides[p];
      if (is_t[p]) off += digit * strides[p];
    }
    offT[idx] = off;
  }

  Mat out(total, total);
  for (long c = 0; c < total; ++c) {
    long tc = offT[c], kc = c - tc;
    for (long r = 0; r < total; ++r) {
      long tr = offT[r], kr = r - tr;
      out(r, c) = m(tc + kr, tr + kc);
    }
  }
  return out;
}

DensityMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& transposed) {
  DensityMatrix out;
  out.m = partial_transpose(rho.m, rho.layout.dims, transposed);
  out.layout = rho.layout;
  out.tol = rho.tol;
  return out;
}

DensityMatrix partial_transpose(const DensityMatrix& rho,
                                const std::vector<std::string>& transposed) {
  return partial_transpose(rho, rho.layout.indices_of(transposed));
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

std::vector<double> hermitian_eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigenvalue solver failed");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  return out;
}

double trace_norm(const Mat& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::dimension, "trace_norm: matrix is not square");
  if (is_hermitian(m, 1e-12 * std::max(1.0, max_abs(m)))) {
    Mat h = 0.5 * (m + m.adjoint());
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(h)) s += std::abs(ev);
    return s;
  }
  if (m.rows() > 32) {
    Eigen::BDCSVD<Mat> svd(m);
    return svd.singularValues().sum();
  }
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const Mat& a, const Mat& b) { return trace_norm(a - b); }

Mat hermitian_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigenvalue solver failed");
  Eigen::VectorXd ev = es.eigenvalues();
  // Zero out eigenvalues at noise scale so the square root does not amplify them.
  double cut = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (long i = 0; i < ev.size(); ++i) ev(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Mat key_block(const Mat& m, long dA, long dB, long i, long j, long k, long l) {
  long dk = dA * dB;
  if (m.rows() != m.cols() || m.rows() % dk != 0)
    fail(ErrorCode::dimension, "key_block: matrix size not divisible by key dimension");
  if (i < 0 || i >= dA || k < 0 || k >= dA || j < 0 || j >= dB || l < 0 || l >= dB)
    fail(ErrorCode::invalid_arg, "key_block: key index out of range");
  long s = m.rows() / dk;
  return m.block((i * dB + j) * s, (k * dB + l) * s, s, s);
}

double fidelity(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    fail(ErrorCode::dimension, "fidelity: size mismatch");
  Mat s = hermitian_sqrt(rho);
  Mat h = s * sigma * s;
  auto evs = hermitian_eigenvalues(0.5 * (h + h.adjoint()));
  double cut = 1e-13 * std::max(1.0, std::abs(evs.back()));
  double f = 0.0;
  for (double ev : evs)
    if (ev > cut) f += std::sqrt(ev);
  return std::clamp(f, 0.0, 1.0);
}

double von_neumann_entropy(const Mat& rho, double tol) {
  double s = 0.0;
  for (double ev : hermitian_eigenvalues(0.5 * (rho + rho.adjoint())))
    if (ev > tol) s -= ev * std::log2(ev);
  return s;
}

double relative_entropy(const Mat& rho, const Mat& sigma, double tol) {
  if (rho.rows() != sigma.rows())
    fail(ErrorCode::dimension, "relative_entropy: size mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sigma + sigma.adjoint()));
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigenvalue solver failed");

  double cross = 0.0;   // Tr rho log2 sigma restricted to supp(sigma)
  double leak = 0.0;    // weight of rho outside supp(sigma)
  for (long i = 0; i < sigma.rows(); ++i) {
    double q = es.eigenvalues()(i);
    Vec v = es.eigenvectors().col(i);
    double w = std::real(v.dot(rho * v));
    if (q > tol)
      cross += w * std::log2(q);
    else
      leak += std::max(w, 0.0);
  }
  if (leak > tol) return std::numeric_limits<double>::infinity();

  double neg_entropy = 0.0;  // Tr rho log2 rho
  for (double ev : hermitian_eigenvalues(0.5 * (rho + rho.adjoint())))
    if (ev > tol) neg_entropy += ev * std::log2(ev);

  double out = neg_entropy - cross;
  if (out < 0.0 && out > -1e-8) out = 0.0;
  return out;
}

PureState purify(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho.m + rho.m.adjoint()));
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigenvalue solver failed");
  long n = rho.m.rows();
  std::vector<long> kept;
  for (long i = n - 1; i >= 0; --i)
    if (es.eigenvalues()(i) > rho.tol) kept.push_back(i);
  if (kept.empty()) fail(ErrorCode::numeric, "purify: input has no support above tolerance");
  long r = static_cast<long>(kept.size());

  Vec v = Vec::Zero(n * r);
  for (long e = 0; e < r; ++e) {
    double w = std::sqrt(es.eigenvalues()(kept[e]));
    for (long a = 0; a < n; ++a) v(a * r + e) = w * es.eigenvectors()(a, kept[e]);
  }
  PureState out;
  out.v = v;
  out.layout = merge(rho.layout, SystemLayout::single(r, "E"));
  return out;
}

double min_eigenvalue(const Mat& m, double tol) {
  if (!is_hermitian(m, tol)) fail(ErrorCode::invalid_arg, "min_eigenvalue: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigenvalue solver failed");
  return es.eigenvalues()(0);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double Rng::uniform() {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double Rng::gauss() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

cx Rng::gauss_cx() {
  double re = gauss();
  double im = gauss();
  return cx(re, im);
}

long Rng::integer(long lo, long hi) {
  if (hi < lo) fail(ErrorCode::invalid_arg, "integer: empty range");
  long span = hi - lo + 1;
  long v = lo + static_cast<long>(uniform() * static_cast<double>(span));
  return std::min(v, hi);
}

Mat random_unitary(long d, Rng& rng) {
  Mat g(d, d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) g(r, c) = rng.gauss_cx();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Mat rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long j = 0; j < d; ++j) {
    cx rd = rmat(j, j);
    double a = std::abs(rd);
    if (a > 0.0) q.col(j) *= rd / a;
  }
  return q;
}

Mat random_density(long d, Rng& rng, long rank) {
  if (rank < 1 || rank > d) rank = d;
  Mat g(d, rank);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < rank; ++c) g(r, c) = rng.gauss_cx();
  Mat m = g * g.adjoint();
  m /= m.trace().real();
  return 0.5 * (m + m.adjoint());
}

Vec random_pure(long d, Rng& rng) {
  Vec v(d);
  for (long i = 0; i < d; ++i) v(i) = rng.gauss_cx();
  v /= v.norm();
  return v;
}

std::vector<double> random_distribution(long n, Rng& rng) {
  std::vector<double> p(n);
  double s = 0.0;
  for (long i = 0; i < n; ++i) {
    p[i] = -std::log(1.0 - rng.uniform());
    s += p[i];
  }
  for (long i = 0; i < n; ++i) p[i] /= s;
  return p;
}

Mat identity(long d) { return Mat::Identity(d, d); }

Vec basis_ket(long d, long i) {
  Vec v = Vec::Zero(d);
  v(i) = 1.0;
  return v;
}

}  // namespace pqs
