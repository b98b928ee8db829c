#include "pqs/security.hpp"

#include <algorithm>
#include <cmath>

namespace pqs {

namespace {

constexpr double kSlack = 1e-12;

void require_square_outcomes(const CcqEnsemble& c) {
  if (c.dA != c.dB)
    fail(ErrorCode::invalid_arg, "outcome grid must be square for key comparisons");
}

}  // namespace

const Mat& CcqEnsemble::eve_at(long i, long j) const {
  if (i < 0 || i >= dA || j < 0 || j >= dB)
    fail(ErrorCode::invalid_arg, "outcome index out of range");
  return eve[i * dB + j];
}

bool CcqEnsemble::has_eve(long i, long j) const { return eve_at(i, j).size() != 0; }

long CcqEnsemble::eve_dim() const {
  for (const Mat& m : eve)
    if (m.size() != 0) return m.rows();
  return 0;
}

Mat CcqEnsemble::average_eve() const {
  long r = eve_dim();
  if (r == 0) fail(ErrorCode::invalid_arg, "ensemble has no Eve states");
  Mat avg = Mat::Zero(r, r);
  for (long i = 0; i < dA; ++i)
    for (long j = 0; j < dB; ++j)
      if (has_eve(i, j)) avg += p(i, j) * eve_at(i, j);
  return avg;
}

void CcqEnsemble::validate() const {
  if (dA < 1 || dB < 1) fail(ErrorCode::invalid_arg, "outcome grid is empty");
  if (p.rows() != dA || p.cols() != dB)
    fail(ErrorCode::dimension, "probability grid does not match outcome grid");
  if (static_cast<long>(eve.size()) != dA * dB)
    fail(ErrorCode::dimension, "Eve table does not match outcome grid");
  double total = 0.0;
  long r = eve_dim();
  for (long i = 0; i < dA; ++i)
    for (long j = 0; j < dB; ++j) {
      if (p(i, j) < -tol) fail(ErrorCode::numeric, "negative outcome probability");
      total += p(i, j);
      if (p(i, j) > tol) {
        if (!has_eve(i, j))
          fail(ErrorCode::invalid_arg, "missing Eve state on a supported outcome");
        const Mat& m = eve_at(i, j);
        if (m.rows() != r || m.cols() != r)
          fail(ErrorCode::dimension, "Eve state dimensions differ");
        if (!is_hermitian(m, tol)) fail(ErrorCode::numeric, "Eve state is not Hermitian");
        if (std::abs(m.trace() - cx(1.0, 0.0)) > 1e-8)
          fail(ErrorCode::numeric, "Eve state trace deviates from 1");
        if (min_eigenvalue(m, tol) < -tol)
          fail(ErrorCode::numeric, "Eve state has a negative eigenvalue");
      }
    }
  if (std::abs(total - 1.0) > 1e-8) fail(ErrorCode::numeric, "probabilities do not sum to 1");
}

CcqEnsemble ccq_of(const DensityMatrix& rho) {
  if (rho.layout.dims.size() < 2)
    fail(ErrorCode::invalid_arg, "state must carry key subsystems in the first two slots");
  PureState ps = purify(rho);
  const auto& dims = ps.layout.dims;
  long dA = dims[0], dB = dims[1];
  long r = dims.back();
  long total = ps.v.size();
  long shield = total / (dA * dB * r);

  CcqEnsemble c;
  c.dA = dA;
  c.dB = dB;
  c.tol = rho.tol;
  c.p = Eigen::MatrixXd::Zero(dA, dB);
  c.eve.assign(dA * dB, Mat());
  for (long a = 0; a < dA; ++a)
    for (long b = 0; b < dB; ++b) {
      Mat w(shield, r);
      long base = (a * dB + b) * shield;
      for (long s = 0; s < shield; ++s)
        for (long e = 0; e < r; ++e) w(s, e) = ps.v((base + s) * r + e);
      double pab = w.squaredNorm();
      c.p(a, b) = pab;
      if (pab > c.tol) {
        Mat ev = (w.transpose() * w.conjugate()) / pab;
        c.eve[a * dB + b] = 0.5 * (ev + ev.adjoint());
      }
    }
  return c;
}

bool is_B_secure(const CcqEnsemble& c, double eps) {
  Mat avg = c.average_eve();
  for (long i = 0; i < c.dA; ++i)
    for (long j = 0; j < c.dB; ++j)
      if (c.p(i, j) > c.tol && trace_norm(c.eve_at(i, j) - avg) > eps) return false;
  return true;
}

bool has_B_key(const CcqEnsemble& c, double eps) {
  require_square_outcomes(c);
  return uniformity(c) <= eps && is_B_secure(c, eps);
}

double holevo(const CcqEnsemble& c) {
  Mat avg = c.average_eve();
  double chi = von_neumann_entropy(avg, c.tol);
  for (long i = 0; i < c.dA; ++i)
    for (long j = 0; j < c.dB; ++j)
      if (c.p(i, j) > c.tol) chi -= c.p(i, j) * von_neumann_entropy(c.eve_at(i, j), c.tol);
  if (chi < 0.0 && chi > -1e-9) chi = 0.0;
  return chi;
}

double security_norm(const CcqEnsemble& c) {
  Mat avg = c.average_eve();
  double s = 0.0;
  for (long i = 0; i < c.dA; ++i)
    for (long j = 0; j < c.dB; ++j)
      if (c.p(i, j) > c.tol) s += c.p(i, j) * trace_norm(c.eve_at(i, j) - avg);
  return s;
}

double uniformity(const CcqEnsemble& c) {
  require_square_outcomes(c);
  double ideal = 1.0 / static_cast<double>(c.dA);
  double s = 0.0;
  for (long i = 0; i < c.dA; ++i)
    for (long j = 0; j < c.dB; ++j)
      s += std::abs(c.p(i, j) - (i == j ? ideal : 0.0));
  return s;
}

double joint_distance(const CcqEnsemble& c) {
  require_square_outcomes(c);
  long r = c.eve_dim();
  Mat avg = c.average_eve();
  double ideal = 1.0 / static_cast<double>(c.dA);
  double s = 0.0;
  for (long i = 0; i < c.dA; ++i)
    for (long j = 0; j < c.dB; ++j) {
      Mat real = c.has_eve(i, j) ? Mat(c.p(i, j) * c.eve_at(i, j)) : Mat(Mat::Zero(r, r));
      if (i == j) real -= ideal * avg;
      s += trace_norm(real);
    }
  return s;
}

std::vector<BoundRow> criteria_bounds(const CcqEnsemble& c) {
  require_square_outcomes(c);
  const double ln2 = std::log(2.0);
  double chi = holevo(c);
  double norm = security_norm(c);
  double unif = uniformity(c);
  double joint = joint_distance(c);
  double d_key = static_cast<double>(c.dA);
  double d_eve = static_cast<double>(c.eve_dim());

  double avg_fid = 0.0;
  {
    Mat avg = c.average_eve();
    for (long i = 0; i < c.dA; ++i)
      for (long j = 0; j < c.dB; ++j)
        if (c.p(i, j) > c.tol) avg_fid += c.p(i, j) * fidelity(c.eve_at(i, j), avg);
  }

  // Full-matrix route for the cq product gap; equals the averaged norm for a
  // block-diagonal classical register.
  double full_gap = 0.0;
  {
    long r = c.eve_dim();
    Mat avg = c.average_eve();
    long n = c.dA * c.dB * r;
    Mat diff = Mat::Zero(n, n);
    for (long i = 0; i < c.dA; ++i)
      for (long j = 0; j < c.dB; ++j) {
        Mat blk = c.has_eve(i, j) ? Mat(c.p(i, j) * (c.eve_at(i, j) - avg))
                                  : Mat(Mat::Zero(r, r));
        diff.block((i * c.dB + j) * r, (i * c.dB + j) * r, r, r) = blk;
      }
    full_gap = trace_norm(diff);
  }

  std::vector<BoundRow> rows;
  auto push_le = [&rows](const std::string& name, double premise, double lhs, double rhs) {
    rows.push_back({name, premise, lhs, rhs, lhs <= rhs + kSlack});
  };
  auto push_ge = [&rows](const std::string& name, double premise, double lhs, double rhs) {
    rows.push_back({name, premise, lhs, rhs, lhs >= rhs - kSlack});
  };

  push_ge("fidelity_from_norm", norm, avg_fid, 1.0 - norm / 2.0);

  double fid_eps = std::max(0.0, 1.0 - avg_fid);
  push_le("norm_from_fidelity_printed", fid_eps, norm, 8.0 * fid_eps);
  push_le("norm_from_fidelity_proof", fid_eps, norm, 2.0 * std::sqrt(2.0 * fid_eps));

  push_le("product_gap_matrix_route", norm, full_gap, norm);

  push_le("norm_from_holevo_raw", chi, norm, std::sqrt(2.0 * chi));
  push_le("norm_from_holevo_bits", chi, norm, std::sqrt(2.0 * ln2 * chi));

  push_le("holevo_from_norm", norm, chi,
          3.0 * norm * std::log2(std::max(2.0, d_eve)) +
              std::max(binary_entropy(norm), 2.0 * norm));

  double u_chi = std::max(unif, chi);
  push_le("joint_from_unif_and_holevo_stated", u_chi, joint, u_chi + std::sqrt(u_chi));
  push_le("joint_from_unif_and_holevo_proof", u_chi, joint, u_chi + std::sqrt(2.0 * u_chi));

  push_le("uniformity_from_joint", joint, unif, joint);

  push_le("holevo_from_joint_stated", joint, chi,
          4.0 * joint * std::log2(d_key) + binary_entropy(joint));
  push_le("holevo_from_joint_proof", joint, chi,
          4.0 * std::sqrt(joint) * std::log2(d_key) + binary_entropy(2.0 * std::sqrt(joint)));

  return rows;
}

double block_norm_key_quality(const DensityMatrix& rho) {
  if (rho.layout.dims.size() < 2 || rho.layout.dims[0] != 2 || rho.layout.dims[1] != 2)
    fail(ErrorCode::invalid_arg, "state must carry a two-qubit key in the first two slots");
  return trace_norm(key_block(rho.m, 2, 2, 0, 0, 1, 1));
}

double delta_of_eps(double eps) {
  if (eps <= 0.0 || eps >= 0.125)
    fail(ErrorCode::invalid_arg, "argument must lie strictly between 0 and 1/8");
  double x = std::sqrt(2.0 * eps);
  return 2.0 * std::sqrt(8.0 * x + binary_entropy(2.0 * x)) + 2.0 * x;
}

CoherenceReport coherence_overlap_bounds(const DensityMatrix& two_qubit) {
  if (two_qubit.m.rows() != 4)
    fail(ErrorCode::invalid_arg, "state must be two qubits");
  CoherenceReport rep;
  const Mat& m = two_qubit.m;
  rep.overlap = 0.5 * std::real(m(0, 0) + m(3, 3)) + std::real(m(0, 3));
  rep.re_coherence = std::real(m(0, 3));
  // overlap >= 1 - eps at eps = 1 - overlap; conclusion: coherence > 1/2 - eps.
  rep.to_coherence = rep.re_coherence >= rep.overlap - 0.5 - kSlack;
  // coherence > 1/2 - eps at eps = 1/2 - coherence; conclusion: overlap >= 1 - 2 eps.
  rep.to_overlap = rep.overlap >= 2.0 * rep.re_coherence - kSlack;
  return rep;
}

std::vector<EveBlockRow> eve_block_representation(const DensityMatrix& rho) {
  if (rho.layout.dims.size() < 2)
    fail(ErrorCode::invalid_arg, "state must carry key subsystems in the first two slots");
  long dA = rho.layout.dims[0], dB = rho.layout.dims[1];
  CcqEnsemble c = ccq_of(rho);

  std::vector<EveBlockRow> rows;
  for (long a = 0; a < dA * dB; ++a)
    for (long b = a; b < dA * dB; ++b) {
      EveBlockRow row;
      row.i = a / dB;
      row.j = a % dB;
      row.ip = b / dB;
      row.jp = b % dB;
      row.block_norm =
          trace_norm(key_block(rho.m, dA, dB, row.i, row.j, row.ip, row.jp));
      if (c.p(row.i, row.j) > c.tol && c.p(row.ip, row.jp) > c.tol) {
        row.fid_product = std::sqrt(c.p(row.i, row.j) * c.p(row.ip, row.jp)) *
                          fidelity(c.eve_at(row.i, row.j), c.eve_at(row.ip, row.jp));
      }
      rows.push_back(row);
    }
  return rows;
}

CcqEnsemble canonical_gauge(const CcqEnsemble& c) {
  long r = c.eve_dim();
  if (r == 0) return c;
  Eigen::SelfAdjointEigenSolver<Mat> es(c.average_eve());
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigenvalue solver failed");

  // Descending eigenvalue order; phases are fixed below against a reference
  // operator built from the ensemble itself, so that ensembles differing only
  // by a unitary on Eve's side land on the same representative.
  Mat w(r, r);
  for (long k = 0; k < r; ++k) w.col(k) = es.eigenvectors().col(r - 1 - k);

  Mat ref = Mat::Zero(r, r);
  for (long i = 0; i < c.dA; ++i)
    for (long j = 0; j < c.dB; ++j)
      if (c.has_eve(i, j) && c.p(i, j) > c.tol)
        ref += (1.0 + static_cast<double>(i * c.dB + j) * 0.61803398875) * c.p(i, j) *
               c.eve_at(i, j);
  Mat t = w.adjoint() * ref * w;

  Vec phase = Vec::Constant(r, cx(1.0, 0.0));
  for (long k = 1; k < r; ++k) {
    for (long m = 0; m < k; ++m) {
      if (std::abs(t(m, k)) > 1e-8) {
        phase(k) = std::conj(t(m, k)) * phase(m) / std::abs(t(m, k));
        break;
      }
    }
  }
  for (long k = 0; k < r; ++k) w.col(k) *= phase(k);

  CcqEnsemble out = c;
  for (Mat& m : out.eve)
    if (m.size() != 0) m = w.adjoint() * m * w;
  return out;
}

double ccq_distance(const CcqEnsemble& a, const CcqEnsemble& b) {
  if (a.dA != b.dA || a.dB != b.dB)
    fail(ErrorCode::dimension, "outcome grid mismatch");
  CcqEnsemble ca = canonical_gauge(a);
  CcqEnsemble cb = canonical_gauge(b);
  long r = std::max(ca.eve_dim(), cb.eve_dim());
  double s = 0.0;
  for (long i = 0; i < a.dA; ++i)
    for (long j = 0; j < a.dB; ++j) {
      Mat ma = Mat::Zero(r, r);
      Mat mb = Mat::Zero(r, r);
      if (ca.has_eve(i, j)) {
        const Mat& m = ca.eve_at(i, j);
        ma.topLeftCorner(m.rows(), m.cols()) = ca.p(i, j) * m;
      }
      if (cb.has_eve(i, j)) {
        const Mat& m = cb.eve_at(i, j);
        mb.topLeftCorner(m.rows(), m.cols()) = cb.p(i, j) * m;
      }
      s += trace_norm(ma - mb);
    }
  return s;
}

}  // namespace pqs
