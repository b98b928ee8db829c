#include "pqs/rates.hpp"

#include <cmath>

namespace pqs {

namespace {

double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

}  // namespace

double dw_rate(const CcqEnsemble& c) {
  c.validate();
  std::vector<double> pa(c.dA, 0.0), pb(c.dB, 0.0), pab;
  pab.reserve(c.dA * c.dB);
  for (long i = 0; i < c.dA; ++i)
    for (long j = 0; j < c.dB; ++j) {
      double w = c.p(i, j);
      pa[i] += w;
      pb[j] += w;
      pab.push_back(w);
    }
  double i_ab = shannon(pa) + shannon(pb) - shannon(pab);

  long r = c.eve_dim();
  double i_ae = 0.0;
  if (r > 0) {
    Mat avg = Mat::Zero(r, r);
    double cond_sum = 0.0;
    for (long i = 0; i < c.dA; ++i) {
      if (pa[i] <= c.tol) continue;
      Mat cond = Mat::Zero(r, r);
      for (long j = 0; j < c.dB; ++j)
        if (c.has_eve(i, j) && c.p(i, j) > c.tol)
          cond += c.p(i, j) * c.eve_at(i, j);
      avg += cond;
      cond /= pa[i];
      cond_sum += pa[i] * von_neumann_entropy(cond, c.tol);
    }
    double total = avg.trace().real();
    if (total > c.tol) {
      avg /= total;
      i_ae = von_neumann_entropy(avg, c.tol) - cond_sum;
    }
  }
  return i_ab - i_ae;
}

double log_negativity(const DensityMatrix& rho, const std::vector<int>& cut) {
  Mat pt = partial_transpose(rho.m, rho.layout.dims, cut);
  double value = std::log2(trace_norm(pt));
  if (value < 0.0 && value > -1e-12) value = 0.0;
  return value;
}

double log_negativity(const DensityMatrix& rho) {
  return log_negativity(rho, b_side(rho.layout));
}

PbitNegativityResult pbit_log_negativity(const XFormPbit& x,
                                         const Options& opt) {
  x.validate();
  PbitNegativityResult out;
  Mat xx = hermitian_sqrt(Mat(x.X * x.X.adjoint()));
  Mat yy = hermitian_sqrt(Mat(x.X.adjoint() * x.X));
  std::vector<long> dims = {x.dAp, x.dBp};
  double floor = -std::max(opt.tol, 1e-10);
  bool ok =
      min_eigenvalue(partial_transpose(xx, dims, {1})) >= floor &&
      min_eigenvalue(partial_transpose(yy, dims, {1})) >= floor;
  out.precondition_holds = ok;
  out.formula =
      std::log2(1.0 + trace_norm(partial_transpose(x.X, dims, {1})));
  return out;
}

ErUpperResult er_upper_bound_pdit(
    const DensityMatrix& gamma, const std::vector<DensityMatrix>& conditionals,
    const std::vector<double>& conditional_er_bounds) {
  gamma.validate();
  if (gamma.layout.dims.size() < 2 ||
      gamma.layout.dims[0] != gamma.layout.dims[1])
    fail(ErrorCode::invalid_arg, "key part must be square");
  long d = gamma.layout.dims[0];
  if (static_cast<long>(conditionals.size()) != d ||
      static_cast<long>(conditional_er_bounds.size()) != d)
    fail(ErrorCode::invalid_arg,
         "need one conditional and one bound per key outcome");

  long s = gamma.dim() / (d * d);
  const double structure_tol = 1e-8;
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j)
      if (trace_norm(key_block(gamma.m, d, d, i, i, j, j)) <
          1.0 / static_cast<double>(d) - structure_tol)
        fail(ErrorCode::invalid_arg,
             "state is not a private state: key coherence block (" +
                 std::to_string(i) + "," + std::to_string(j) +
                 ") is not maximal");
  for (long i = 0; i < d; ++i) {
    if (conditional_er_bounds[i] < 0.0)
      fail(ErrorCode::invalid_arg, "conditional bounds must be nonnegative");
    Mat block = key_block(gamma.m, d, d, i, i, i, i);
    double w = block.trace().real();
    if (std::abs(w - 1.0 / static_cast<double>(d)) > structure_tol)
      fail(ErrorCode::invalid_arg,
           "state is not a private state: key outcome " + std::to_string(i) +
           " has weight " + std::to_string(w) + " instead of 1/d");
    if (conditionals[i].dim() != s)
      fail(ErrorCode::dimension, "conditional has wrong shield dimension");
    if (trace_distance(Mat(block / w), conditionals[i].m) > 1e-8)
      fail(ErrorCode::invalid_arg,
           "conditional does not match the post-measurement shield state");
  }

  double avg = 0.0;
  for (double b : conditional_er_bounds) avg += b;
  avg /= static_cast<double>(d);

  ErUpperResult out;
  out.bound = std::log2(static_cast<double>(d)) + avg;
  out.irreducible = avg == 0.0;
  return out;
}

WitnessResult er_lower_witness(long samples, const Twisting& tw, long dAp,
                               long dBp, uint64_t seed) {
  if (samples < 1) fail(ErrorCode::invalid_arg, "need at least one sample");
  tw.validate();
  if (tw.dA != tw.dB)
    fail(ErrorCode::invalid_arg, "overlap target needs equal key dimensions");
  if (dAp * dBp != tw.shield_dim())
    fail(ErrorCode::dimension, "shield split does not match the twisting");

  long d = tw.dA;
  long shield = dAp * dBp;
  Rng rng(seed);
  double best = -1.0;
  Mat best_key;

  for (long n = 0; n < samples; ++n) {
    Vec a = random_pure(d * dAp, rng);
    Vec b = random_pure(d * dBp, rng);

    // Product ket across (A A'):(B B'), twisted cell by cell.
    Mat cells(d * d, shield);
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j) {
        Vec v(shield);
        for (long ap = 0; ap < dAp; ++ap)
          for (long bp = 0; bp < dBp; ++bp)
            v(ap * dBp + bp) = a(i * dAp + ap) * b(j * dBp + bp);
        cells.row(i * d + j) = (tw.block(i, j) * v).transpose();
      }

    double overlap = 0.0;
    for (long s = 0; s < shield; ++s) {
      cx w = 0.0;
      for (long i = 0; i < d; ++i) w += cells(i * d + i, s);
      overlap += std::norm(w);
    }
    overlap /= static_cast<double>(d);

    if (overlap > best) {
      best = overlap;
      best_key = cells * cells.adjoint();
    }
  }

  WitnessResult out;
  out.max_overlap = best;
  out.best_key = {best_key, {{d, d}, {"A", "B"}}, kDefaultTol};
  return out;
}

double near_pbit_rate_bound(double eps) {
  if (eps < 0.0) fail(ErrorCode::invalid_arg, "defect must be nonnegative");
  return std::max(0.0, 1.0 - 16.0 * eps);
}

NearPbitDiagnostics near_pbit_diagnostics(const CcqEnsemble& squeezed,
                                          double eps) {
  NearPbitDiagnostics out;
  out.eps = eps;
  out.bound = near_pbit_rate_bound(eps);
  out.dw = dw_rate(squeezed);

  std::vector<double> pa(squeezed.dA, 0.0), pb(squeezed.dB, 0.0), pab;
  for (long i = 0; i < squeezed.dA; ++i)
    for (long j = 0; j < squeezed.dB; ++j) {
      double w = squeezed.p(i, j);
      pa[i] += w;
      pb[j] += w;
      pab.push_back(w);
    }
  out.i_ab = shannon(pa) + shannon(pb) - shannon(pab);
  out.i_ae = out.i_ab - out.dw;
  double h = binary_entropy(std::min(1.0, std::max(0.0, eps)));
  out.i_ab_floor = 1.0 - 8.0 * eps - h;
  out.i_ae_ceiling = 8.0 * eps - h;
  return out;
}

}  // namespace pqs
