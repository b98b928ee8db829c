#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "pqs/common.hpp"

namespace pqs {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-10;

// Ordered list of subsystem dimensions with labels. Index 0 is the most
// significant factor: a basis ket |i0 i1 ... in> maps to row
// ((i0*d1 + i1)*d2 + i2)*...
struct SystemLayout {
  std::vector<long> dims;
  std::vector<std::string> labels;

  long total_dim() const;
  void validate() const;
  int index_of(const std::string& label) const;
  std::vector<int> indices_of(const std::vector<std::string>& names) const;
  SystemLayout subset(const std::vector<int>& keep) const;
  static SystemLayout single(long d, const std::string& label);
  // Key pair A,B plus shields A',B'.
  static SystemLayout keyed(long dA, long dB, long dAp, long dBp);
};

SystemLayout merge(const SystemLayout& a, const SystemLayout& b);

struct DensityMatrix {
  Mat m;
  SystemLayout layout;
  double tol = kDefaultTol;

  long dim() const { return m.rows(); }
  // Hermiticity residual within tol, trace within tol of 1, min eigenvalue >= -tol.
  void validate() const;
};

struct PureState {
  Vec v;
  SystemLayout layout;

  long dim() const { return v.size(); }
  DensityMatrix to_density(double tol = kDefaultTol) const;
};

Mat tensor(const Mat& a, const Mat& b);
Vec tensor(const Vec& a, const Vec& b);
Mat kron_power(const Mat& a, int k);

Mat partial_trace(const Mat& m, const std::vector<long>& dims, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

// Positions whose labels start with 'B'; the transpose cut used for all
// positivity checks.
std::vector<int> b_side(const SystemLayout& layout);

Mat partial_transpose(const Mat& m, const std::vector<long>& dims,
                      const std::vector<int>& transposed);
DensityMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& transposed);
DensityMatrix partial_transpose(const DensityMatrix& rho,
                                const std::vector<std::string>& transposed);

// Sum of singular values; for a difference of density matrices the value lies in [0, 2].
double trace_norm(const Mat& m);
double trace_distance(const Mat& a, const Mat& b);

// Tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].
double fidelity(const Mat& rho, const Mat& sigma);

// Base-2 entropy; eigenvalues at or below tol contribute zero.
double von_neumann_entropy(const Mat& rho, double tol = kDefaultTol);

// S(rho || sigma) in bits; +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const Mat& rho, const Mat& sigma, double tol = kDefaultTol);

// Environment dimension equals the numerical rank of rho; the extra subsystem
// is labeled "E".
PureState purify(const DensityMatrix& rho);

// Smallest eigenvalue of a Hermitian matrix; rejects non-Hermitian input.
double min_eigenvalue(const Mat& m, double tol = kDefaultTol);

std::vector<double> hermitian_eigenvalues(const Mat& m);

double binary_entropy(double x);

bool is_hermitian(const Mat& m, double tol = kDefaultTol);

// Positive square root of a Hermitian PSD matrix; noise-scale eigenvalues are dropped.
Mat hermitian_sqrt(const Mat& m);

// Block (i j, k l) of a matrix on key pair (dA x dB) tensor shield: the shield-sized
// submatrix at key row i*dB+j, key column k*dB+l.
Mat key_block(const Mat& m, long dA, long dB, long i, long j, long k, long l);

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform();             // [0, 1)
  double gauss();               // standard normal
  cx gauss_cx();                // complex standard normal, variance 1 per axis
  long integer(long lo, long hi);  // inclusive bounds

 private:
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
Mat random_unitary(long d, Rng& rng);
// Random density matrix of the given rank (full rank when rank < 1).
Mat random_density(long d, Rng& rng, long rank = -1);
Vec random_pure(long d, Rng& rng);
std::vector<double> random_distribution(long n, Rng& rng);

Mat identity(long d);
Vec basis_ket(long d, long i);

}  // namespace pqs
