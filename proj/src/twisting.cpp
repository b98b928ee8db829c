#include "pqs/twisting.hpp"

#include <Eigen/SVD>

namespace pqs {

namespace {

void check_two_qubit_key(const DensityMatrix& rho) {
  if (rho.layout.dims.size() < 2 || rho.layout.dims[0] != 2 || rho.layout.dims[1] != 2)
    fail(ErrorCode::invalid_arg, "state must carry a two-qubit key in the first two slots");
}

}  // namespace

const Mat& Twisting::block(long k, long l) const {
  if (k < 0 || k >= dA || l < 0 || l >= dB)
    fail(ErrorCode::invalid_arg, "twisting: key index out of range");
  return blocks[k * dB + l];
}

long Twisting::shield_dim() const {
  if (blocks.empty()) fail(ErrorCode::invalid_arg, "twisting: no blocks");
  return blocks.front().rows();
}

void Twisting::validate(double tol) const {
  if (dA < 1 || dB < 1) fail(ErrorCode::invalid_arg, "twisting: key dimensions below 1");
  if (static_cast<long>(blocks.size()) != dA * dB)
    fail(ErrorCode::invalid_arg, "twisting: missing key block");
  long s = shield_dim();
  for (const Mat& u : blocks) {
    if (u.rows() != s || u.cols() != s)
      fail(ErrorCode::dimension, "twisting: shield dimensions differ between blocks");
    double res = (u * u.adjoint() - identity(s)).cwiseAbs().maxCoeff();
    if (res > std::max(tol, 1e-10)) fail(ErrorCode::invalid_arg, "twisting: block is not unitary");
  }
}

Twisting Twisting::identity_twisting(long dA, long dB, long shield) {
  Twisting t;
  t.dA = dA;
  t.dB = dB;
  t.blocks.assign(dA * dB, identity(shield));
  return t;
}

Mat assemble(const Twisting& t) {
  t.validate();
  long s = t.shield_dim();
  long n = t.dA * t.dB * s;
  Mat u = Mat::Zero(n, n);
  for (long k = 0; k < t.dA; ++k)
    for (long l = 0; l < t.dB; ++l)
      u.block((k * t.dB + l) * s, (k * t.dB + l) * s, s, s) = t.block(k, l);
  return u;
}

DensityMatrix apply_twisting(const DensityMatrix& rho, const Twisting& t) {
  Mat u = assemble(t);
  if (u.rows() != rho.m.rows())
    fail(ErrorCode::dimension, "twisting dimension does not match state");
  return {u * rho.m * u.adjoint(), rho.layout, rho.tol};
}

DensityMatrix key_dephase(const DensityMatrix& rho, long dA, long dB) {
  long dk = dA * dB;
  if (rho.m.rows() % dk != 0)
    fail(ErrorCode::dimension, "state dimension not divisible by key dimension");
  long s = rho.m.rows() / dk;
  Mat out = Mat::Zero(rho.m.rows(), rho.m.cols());
  for (long b = 0; b < dk; ++b)
    out.block(b * s, b * s, s, s) = rho.m.block(b * s, b * s, s, s);
  return {out, rho.layout, rho.tol};
}

Twisting psq_twisting(const DensityMatrix& rho, bool full_corollary) {
  check_two_qubit_key(rho);
  long s = rho.m.rows() / 4;
  Twisting t = Twisting::identity_twisting(2, 2, s);

  Mat a0011 = key_block(rho.m, 2, 2, 0, 0, 1, 1);
  Eigen::JacobiSVD<Mat> svd(a0011, Eigen::ComputeFullU | Eigen::ComputeFullV);
  t.blocks[0] = svd.matrixU().adjoint();   // U_00
  t.blocks[3] = svd.matrixV().adjoint();   // U_11

  if (full_corollary) {
    Mat a0110 = key_block(rho.m, 2, 2, 0, 1, 1, 0);
    Eigen::JacobiSVD<Mat> svd2(a0110, Eigen::ComputeFullU | Eigen::ComputeFullV);
    t.blocks[1] = svd2.matrixU().adjoint();  // U_01
    t.blocks[2] = svd2.matrixV().adjoint();  // U_10
  }
  return t;
}

DensityMatrix privacy_squeeze(const DensityMatrix& rho, bool full_corollary) {
  check_two_qubit_key(rho);
  DensityMatrix twisted = apply_twisting(rho, psq_twisting(rho, full_corollary));
  return partial_trace(twisted, std::vector<int>{0, 1});
}

}  // namespace pqs
