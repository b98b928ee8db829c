#include "pqs/family.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace pqs {

namespace {

std::vector<std::string> dedupe(std::vector<std::string> labels) {
  std::set<std::string> seen;
  for (auto& l : labels) {
    if (seen.insert(l).second) continue;
    int n = 2;
    std::string cand;
    do {
      cand = l + "_" + std::to_string(n++);
    } while (!seen.insert(cand).second);
    l = cand;
  }
  return labels;
}

SystemLayout keyed_over(const SystemLayout& shield) {
  SystemLayout out;
  out.dims = {2, 2};
  out.labels = {"A", "B"};
  out.dims.insert(out.dims.end(), shield.dims.begin(), shield.dims.end());
  out.labels.insert(out.labels.end(), shield.labels.begin(),
                    shield.labels.end());
  out.labels = dedupe(out.labels);
  out.validate();
  return out;
}

void place(Mat& m, long s, int r, int c, const Mat& blk) {
  m.block(r * s, c * s, s, s) = blk;
}

Mat assemble_family_blocks(const Mat& corner, const Mat& off, const Mat& mid) {
  long s = corner.rows();
  Mat m = Mat::Zero(4 * s, 4 * s);
  place(m, s, 0, 0, corner);
  place(m, s, 3, 3, corner);
  place(m, s, 0, 3, off);
  place(m, s, 3, 0, off.adjoint());
  place(m, s, 1, 1, mid);
  place(m, s, 2, 2, mid);
  return m;
}

void require_two_qubit_key(const DensityMatrix& rho, const char* who) {
  if (rho.layout.dims.size() < 2 || rho.layout.dims[0] != 2 ||
      rho.layout.dims[1] != 2)
    fail(ErrorCode::invalid_arg,
         std::string(who) + " state needs a two-qubit key");
}

Vec bell_ket(int a, int b, double sign) {
  Vec v = Vec::Zero(4);
  v(a) = 1.0 / std::sqrt(2.0);
  v(b) = sign / std::sqrt(2.0);
  return v;
}

}  // namespace

void FamilyParams::validate() const {
  if (!(p > 0.0) || p > 0.5)
    fail(ErrorCode::invalid_arg, "weight must lie in (0, 1/2]");
  if (d < 2) fail(ErrorCode::invalid_arg, "dimension must be at least 2");
  if (k < 1) fail(ErrorCode::invalid_arg, "tensor power must be at least 1");
  if (m < 1) fail(ErrorCode::invalid_arg, "copy count must be at least 1");
}

DensityMatrix family_state(double p, long d, long k, const Options& opt) {
  FamilyParams{p, d, k, 1}.validate();
  auto [t1, t2] = hiding_pair(d, static_cast<int>(k), opt);
  long s = t1.layout.total_dim();
  guard_dim(4 * s, opt.max_dim);
  Mat m = assemble_family_blocks(0.5 * p * (t1.m + t2.m),
                                 0.5 * p * (t1.m - t2.m), (0.5 - p) * t2.m);
  return {m, keyed_over(t1.layout), opt.tol};
}

bool ppt_condition(double p, long d, long k) {
  FamilyParams{p, d, k, 1}.validate();
  if (p > 1.0 / 3.0) return false;
  double ratio = (1.0 - p) / p;
  double need = std::pow(static_cast<double>(d) / static_cast<double>(d - 1),
                         static_cast<double>(k));
  return ratio >= need;
}

double family_pt_min_eig(double p, long d, long k) {
  FamilyParams{p, d, k, 1}.validate();
  double dd = static_cast<double>(d);
  double plus = 1.0 / dd;
  double perp = 1.0 / (dd * dd + dd);
  double all_perp = std::pow(dd * dd - 1.0, -static_cast<double>(k));
  double mn = std::numeric_limits<double>::infinity();
  for (long w = 0; w <= k; ++w) {
    double l2 = std::pow(plus, static_cast<double>(w)) *
                std::pow(perp, static_cast<double>(k - w));
    double l1 = (w == 0) ? all_perp : 0.0;
    double corner = 0.5 * p * (l1 + l2);
    double mid_plus = (0.5 - p) * l2 + 0.5 * p * (l1 - l2);
    double mid_minus = (0.5 - p) * l2 - 0.5 * p * (l1 - l2);
    mn = std::min({mn, corner, mid_plus, mid_minus});
  }
  return mn;
}

RecurrenceResult recurrence_round(const DensityMatrix& source,
                                  const DensityMatrix& target) {
  require_two_qubit_key(source, "source");
  require_two_qubit_key(target, "target");
  long ss = source.layout.total_dim() / 4;
  long st = target.layout.total_dim() / 4;
  Mat joint = tensor(source.m, target.m);

  // The bilateral CNOT permutes target key bits by the source key bits; the
  // all-zero post-measurement branch therefore selects joint basis states
  // whose target key equals the source key.
  long dt = 4 * st;
  long out_dim = 4 * ss * st;
  std::vector<long> sel(out_dim);
  for (long z = 0; z < 4; ++z)
    for (long s = 0; s < ss; ++s)
      for (long t = 0; t < st; ++t)
        sel[(z * ss + s) * st + t] = (z * ss + s) * dt + z * st + t;

  Mat out(out_dim, out_dim);
  for (long r = 0; r < out_dim; ++r)
    for (long c = 0; c < out_dim; ++c) out(r, c) = joint(sel[r], sel[c]);

  double success = out.trace().real();
  if (success < 1e-12)
    fail(ErrorCode::numeric, "post-selected branch has zero probability");
  out /= success;

  SystemLayout shields;
  shields.dims.insert(shields.dims.end(), source.layout.dims.begin() + 2,
                      source.layout.dims.end());
  shields.labels.insert(shields.labels.end(), source.layout.labels.begin() + 2,
                        source.layout.labels.end());
  shields.dims.insert(shields.dims.end(), target.layout.dims.begin() + 2,
                      target.layout.dims.end());
  shields.labels.insert(shields.labels.end(), target.layout.labels.begin() + 2,
                        target.layout.labels.end());
  return {{out, keyed_over(shields), source.tol}, success};
}

DensityMatrix recurrence_output(double p, long d, long k, long m,
                                const Options& opt) {
  FamilyParams{p, d, k, m}.validate();
  auto [t1, t2] = hiding_pair(d, static_cast<int>(k), opt);
  long s = t1.layout.total_dim();
  long total = 4;
  for (long i = 0; i < m; ++i) {
    total *= s;
    guard_dim(total, opt.max_dim);
  }
  Mat corner = kron_power(0.5 * p * (t1.m + t2.m), static_cast<int>(m));
  Mat off = kron_power(0.5 * p * (t1.m - t2.m), static_cast<int>(m));
  Mat mid = kron_power((0.5 - p) * t2.m, static_cast<int>(m));
  Mat out = assemble_family_blocks(corner, off, mid) / recurrence_success(p, m);

  SystemLayout shields = t1.layout;
  for (long i = 1; i < m; ++i) {
    shields.dims.insert(shields.dims.end(), t1.layout.dims.begin(),
                        t1.layout.dims.end());
    shields.labels.insert(shields.labels.end(), t1.layout.labels.begin(),
                          t1.layout.labels.end());
  }
  return {out, keyed_over(shields), opt.tol};
}

double recurrence_success(double p, long m) {
  FamilyParams{p, 2, 1, m}.validate();
  return 2.0 * std::pow(p, static_cast<double>(m)) +
         2.0 * std::pow(0.5 - p, static_cast<double>(m));
}

double recurrence_block_norm(double p, long k, long m) {
  FamilyParams{p, 2, k, m}.validate();
  double num =
      0.5 * std::pow(1.0 - std::pow(2.0, -static_cast<double>(k)),
                     static_cast<double>(m));
  double q = (1.0 - 2.0 * p) / (2.0 * p);
  return num / (1.0 + std::pow(q, static_cast<double>(m)));
}

double recurrence_pt_min_eig(double p, long d, long k, long m) {
  FamilyParams{p, d, k, m}.validate();
  double dd = static_cast<double>(d);
  double plus = 1.0 / dd;
  double perp = 1.0 / (dd * dd + dd);
  double all_perp = std::pow(dd * dd - 1.0, -static_cast<double>(k));
  std::vector<double> l1(k + 1, 0.0), l2(k + 1, 0.0);
  l1[0] = all_perp;
  for (long w = 0; w <= k; ++w)
    l2[w] = std::pow(plus, static_cast<double>(w)) *
            std::pow(perp, static_cast<double>(k - w));

  double tuples = std::pow(static_cast<double>(k + 1), static_cast<double>(m));
  if (tuples > 5e6)
    fail(ErrorCode::resource, "pattern enumeration too large");

  double n = recurrence_success(p, m);
  double mn = std::numeric_limits<double>::infinity();
  std::vector<long> w(m, 0);
  while (true) {
    double corner = 1.0, mid = 1.0, off = 1.0;
    for (long t = 0; t < m; ++t) {
      corner *= 0.5 * p * (l1[w[t]] + l2[w[t]]);
      mid *= (0.5 - p) * l2[w[t]];
      off *= 0.5 * p * (l1[w[t]] - l2[w[t]]);
    }
    mn = std::min({mn, corner / n, (mid + off) / n, (mid - off) / n});
    long t = 0;
    while (t < m && ++w[t] > k) w[t++] = 0;
    if (t == m) break;
  }
  return mn;
}

DensityMatrix squeezed_recurrence_state(double p, long k, long m,
                                        const Options& opt) {
  FamilyParams{p, 2, k, m}.validate();
  double n = recurrence_success(p, m);
  double a = std::pow(p, static_cast<double>(m)) / n;
  double c = std::pow(0.5 - p, static_cast<double>(m)) / n;
  double b = a * std::pow(1.0 - std::pow(2.0, -static_cast<double>(k)),
                          static_cast<double>(m));
  Mat s = Mat::Zero(4, 4);
  s(0, 0) = a;
  s(3, 3) = a;
  s(1, 1) = c;
  s(2, 2) = c;
  s(0, 3) = b;
  s(3, 0) = b;
  return {s, {{2, 2}, {"A", "B"}}, opt.tol};
}

DensityMatrix npt_candidate(long d, long k, const std::array<double, 4>& weights,
                            const Options& opt) {
  FamilyParams{0.25, d, k, 1}.validate();
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0 || w > 1.0)
      fail(ErrorCode::invalid_arg, "weights must lie in [0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    fail(ErrorCode::invalid_arg, "weights must sum to 1");

  auto [t1, t2] = hiding_pair(d, static_cast<int>(k), opt);
  long s = t1.layout.total_dim();
  guard_dim(4 * s * s, opt.max_dim);

  std::array<Vec, 4> bells = {bell_ket(0, 3, 1.0), bell_ket(0, 3, -1.0),
                              bell_ket(1, 2, 1.0), bell_ket(1, 2, -1.0)};
  std::array<Mat, 4> flags = {tensor(t1.m, t1.m), tensor(t1.m, t2.m),
                              tensor(t2.m, t1.m), tensor(t2.m, t2.m)};
  Mat m = Mat::Zero(4 * s * s, 4 * s * s);
  for (int i = 0; i < 4; ++i) {
    if (weights[i] == 0.0) continue;
    Mat key = bells[i] * bells[i].adjoint();
    m += weights[i] * tensor(key, flags[i]);
  }

  SystemLayout shields = t1.layout;
  shields.dims.insert(shields.dims.end(), t1.layout.dims.begin(),
                      t1.layout.dims.end());
  shields.labels.insert(shields.labels.end(), t1.layout.labels.begin(),
                        t1.layout.labels.end());
  return {m, keyed_over(shields), opt.tol};
}

double npt_witness_value(long d, long k) {
  FamilyParams{0.25, d, k, 1}.validate();
  double dd = static_cast<double>(d);
  double kk = static_cast<double>(k);
  double trace_r = 1.0 - std::pow((dd * dd - 1.0) / (dd * dd + dd), kk);
  return trace_r *
         (std::pow(dd * dd - 1.0, -kk) - std::pow(dd * dd + dd, -kk));
}

double npt_witness_numeric(long d, long k, const Options& opt) {
  FamilyParams{0.25, d, k, 1}.validate();
  auto [t1, t2] = hiding_pair(d, static_cast<int>(k), opt);
  long s = t1.layout.total_dim();
  guard_dim(s * s, opt.max_dim);

  Mat t1g = partial_transpose(t1, b_side(t1.layout)).m;
  Mat t2g = partial_transpose(t2, b_side(t2.layout)).m;
  Mat pplus = max_entangled(d, opt).m;
  Mat pperp = Mat::Identity(d * d, d * d) - pplus;
  Mat q = Mat::Identity(s, s) - kron_power(pperp, static_cast<int>(k));
  Mat proj = kron_power(pperp / static_cast<double>(d * d - 1),
                        static_cast<int>(k));
  Mat witness = tensor(q, proj);
  double first = (witness * tensor(t2g, Mat(t1g - t2g))).trace().real();
  double second = (witness * tensor(t1g, Mat(t1g + t2g))).trace().real();
  return first - second;
}

CpqcReport cpqc_demo(long d, long k, const Options& opt) {
  FamilyParams{0.25, d, k, 1}.validate();

  // Expected purification ranks: the balanced hiding state has full rank, the
  // symmetric one has rank ((d^2+d)/2)^k; guard before building anything.
  long s_expect = 1;
  long r2_expect = 1;
  for (long i = 0; i < k; ++i) {
    s_expect *= d * d;
    guard_dim(s_expect, opt.max_dim);
    r2_expect *= d * (d + 1) / 2;
  }
  guard_dim(4 * s_expect * (s_expect + r2_expect), opt.max_dim);

  auto [t1, t2] = hiding_pair(d, static_cast<int>(k), opt);
  long s = t1.layout.total_dim();
  PureState f1 = purify(t1);
  PureState f2 = purify(t2);
  long r1 = f1.dim() / s;
  long r2 = f2.dim() / s;
  long rc = r1 + r2;
  guard_dim(4 * s * rc, opt.max_dim);

  Vec psi = Vec::Zero(4 * s * rc);
  for (long a = 0; a < s; ++a) {
    for (long e = 0; e < r1; ++e) {
      cx amp = 0.5 * f1.v(a * r1 + e);
      psi((0 * s + a) * rc + e) += amp;
      psi((3 * s + a) * rc + e) += amp;
    }
    for (long e = 0; e < r2; ++e) {
      cx amp = 0.5 * f2.v(a * r2 + e);
      psi((0 * s + a) * rc + r1 + e) += amp;
      psi((3 * s + a) * rc + r1 + e) -= amp;
    }
  }

  SystemLayout full;
  full.dims = {2, 2};
  full.labels = {"A", "B"};
  full.dims.insert(full.dims.end(), t1.layout.dims.begin(),
                   t1.layout.dims.end());
  full.labels.insert(full.labels.end(), t1.layout.labels.begin(),
                     t1.layout.labels.end());
  full.dims.push_back(rc);
  full.labels.push_back("C");
  full.validate();
  int nsub = static_cast<int>(full.dims.size());

  CpqcReport rep;
  rep.d = d;
  rep.k = k;

  Vec emb1 = Vec::Zero(s * rc);
  Vec emb2 = Vec::Zero(s * rc);
  for (long a = 0; a < s; ++a) {
    for (long e = 0; e < r1; ++e) emb1(a * rc + e) = f1.v(a * r1 + e);
    for (long e = 0; e < r2; ++e) emb2(a * rc + r1 + e) = f2.v(a * r2 + e);
  }
  rep.flag_overlap = std::abs(emb1.dot(emb2));

  Vec psi_plus = bell_ket(0, 3, 1.0);
  Vec psi_minus = bell_ket(0, 3, -1.0);
  std::array<Mat, 2> key_targets = {psi_plus * psi_plus.adjoint(),
                                    psi_minus * psi_minus.adjoint()};
  std::array<Mat, 2> sigma;

  for (int outcome = 0; outcome < 2; ++outcome) {
    long lo = (outcome == 0) ? 0 : r1;
    long hi = (outcome == 0) ? r1 : rc;
    Vec proj = Vec::Zero(psi.size());
    for (long z = 0; z < 4; ++z)
      for (long a = 0; a < s; ++a)
        for (long c = lo; c < hi; ++c)
          proj((z * s + a) * rc + c) = psi((z * s + a) * rc + c);
    double prob = proj.squaredNorm();
    rep.outcome_prob[outcome] = prob;
    if (prob < 1e-12)
      fail(ErrorCode::numeric, "controller outcome has zero probability");
    proj /= std::sqrt(prob);
    Mat rho = proj * proj.adjoint();
    Mat key = partial_trace(rho, full.dims, {0, 1});
    rep.outcome_fidelity[outcome] = fidelity(key, key_targets[outcome]);
    sigma[outcome] = partial_trace(rho, full.dims, {nsub - 1});
  }
  rep.controller_overlap = (sigma[0] * sigma[1]).trace().real();

  Mat full_rho = psi * psi.adjoint();
  Mat key_pre = partial_trace(full_rho, full.dims, {0, 1});
  Mat ideal = 0.5 * (key_targets[0] + key_targets[1]);
  rep.premeasure_key_distance = trace_distance(key_pre, ideal);
  Mat key_pt = partial_transpose(key_pre, {2, 2}, {1});
  rep.premeasure_key_ppt = min_eigenvalue(key_pt) >= -1e-10;
  return rep;
}

}  // namespace pqs
