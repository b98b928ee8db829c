#include <cmath>

#include "doctest.h"
#include "pqs/states.hpp"
#include "pqs/twisting.hpp"

using namespace pqs;

TEST_CASE("maximally entangled projector") {
  DensityMatrix p2 = max_entangled(2);
  p2.validate();
  CHECK(std::abs(p2.m(0, 3) - cx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(p2.m(0, 0) - cx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(p2.m(1, 1)) < 1e-15);
  auto evs = hermitian_eigenvalues(p2.m);
  CHECK(std::abs(evs.back() - 1.0) < 1e-13);
  CHECK(std::abs(evs[evs.size() - 2]) < 1e-13);

  for (long d : {2L, 3L}) {
    DensityMatrix p = max_entangled(d);
    Mat ma = partial_trace(p.m, {d, d}, {0});
    CHECK((ma - identity(d) / static_cast<double>(d)).cwiseAbs().maxCoeff() < 1e-14);
  }

  Mat pt = partial_transpose(max_entangled(3).m, {3, 3}, {1});
  CHECK(std::abs(min_eigenvalue(pt) - (-1.0 / 3.0)) < 1e-12);

  CHECK_THROWS_AS(max_entangled(1), Error);
}

TEST_CASE("Werner states") {
  for (long d : {2L, 3L}) {
    DensityMatrix s = werner_sym(d);
    DensityMatrix a = werner_asym(d);
    s.validate();
    a.validate();
    CHECK(std::abs((s.m * a.m).trace()) < 1e-14);
    double ws = 0.5 * static_cast<double>(d * d + d);
    double wa = 0.5 * static_cast<double>(d * d - d);
    CHECK((ws * s.m + wa * a.m - identity(d * d)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(min_eigenvalue(partial_transpose(s.m, {d, d}, {1})) > -1e-12);
    // The extreme antisymmetric state is entangled: min PT eigenvalue is -1/d.
    double neg = min_eigenvalue(partial_transpose(a.m, {d, d}, {1}));
    CHECK(std::abs(neg - (-1.0 / static_cast<double>(d))) < 1e-12);
  }

  // PT of the symmetric Werner state against its projector expansion at d=2.
  long d = 2;
  Mat pplus = max_entangled(d).m;
  Mat pperp = identity(d * d) - pplus;
  double den = static_cast<double>(d * d + d);
  Mat expected = pperp / den + (1.0 + d) * pplus / den;
  Mat got = partial_transpose(werner_sym(d).m, {d, d}, {1});
  CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hiding pair") {
  auto [t1, t2] = hiding_pair(2, 1);
  t1.validate();
  t2.validate();

  Mat v = swap_operator(2);
  Mat rho_s = (identity(4) + v) / 6.0;
  Mat rho_a = (identity(4) - v) / 2.0;
  CHECK((t1.m - 0.5 * (rho_s + rho_a)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((t2.m - rho_s).cwiseAbs().maxCoeff() < 1e-14);

  // Trace-norm distance between the pair from the eigenvalue route.
  Mat diff = t1.m - t2.m;
  double sum_abs = 0.0;
  for (double ev : hermitian_eigenvalues(diff)) sum_abs += std::abs(ev);
  CHECK(std::abs(trace_norm(diff) - sum_abs) < 1e-13);
  CHECK(std::abs(sum_abs - 1.0) < 1e-13);

  auto [u1, u2] = hiding_pair(2, 2);
  u1.validate();
  u2.validate();
  REQUIRE(u1.layout.labels.size() == 4);
  CHECK(u1.layout.labels[0] == "A'1");
  CHECK(u1.layout.labels[3] == "B'2");

  Mat pplus = max_entangled(2).m;
  Mat pperp3 = (identity(4) - pplus) / 3.0;
  Mat expected = tensor(pperp3, pperp3);
  Mat got = partial_transpose(u1.m, u1.layout.dims, {1, 3});
  CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-14);

  for (const auto& st : {u1, u2}) {
    for (std::vector<int> cut : {std::vector<int>{0}, {1}, {2}, {3}, {1, 3}, {0, 2}}) {
      CHECK(min_eigenvalue(partial_transpose(st.m, st.layout.dims, cut)) > -1e-12);
    }
  }

  CHECK_THROWS_AS(hiding_pair(2, 8), Error);  // resource guard
}

TEST_CASE("basic pdit") {
  DensityMatrix trivial{Mat::Identity(1, 1), SystemLayout::single(1, "A'"), kDefaultTol};
  DensityMatrix b = basic_pdit(2, trivial);
  b.validate();
  CHECK((b.m - max_entangled(2).m).cwiseAbs().maxCoeff() < 1e-15);

  DensityMatrix shield{identity(4) / 4.0, {{2, 2}, {"A'", "B'"}}, kDefaultTol};
  DensityMatrix g = basic_pdit(2, shield);
  g.validate();
  REQUIRE(g.layout.labels == std::vector<std::string>{"A", "B", "A'", "B'"});
  Mat expected = Mat::Zero(16, 16);
  for (long i : {0L, 3L})
    for (long j : {0L, 3L}) expected.block(i * 4, j * 4, 4, 4) = 0.5 * shield.m;
  CHECK((g.m - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("pdit from spec") {
  Rng rng(31);
  DensityMatrix sigma{random_density(3, rng), SystemLayout::single(3, "A'"), kDefaultTol};

  PditSpec id_spec{2, sigma, {identity(3), identity(3)}};
  CHECK((pdit_from_spec(id_spec).m - basic_pdit(2, sigma).m).cwiseAbs().maxCoeff() < 1e-14);

  PditSpec spec{2, sigma, {random_unitary(3, rng), random_unitary(3, rng)}};
  DensityMatrix direct = pdit_from_spec(spec);
  direct.validate();

  Twisting t;
  t.dA = 2;
  t.dB = 2;
  t.blocks = {spec.unitaries[0], identity(3), identity(3), spec.unitaries[1]};
  DensityMatrix via_twist = apply_twisting(basic_pdit(2, sigma), t);
  CHECK((direct.m - via_twist.m).cwiseAbs().maxCoeff() < 1e-12);

  PditSpec bad{2, sigma, {identity(3), 2.0 * identity(3)}};
  CHECK_THROWS_AS(pdit_from_spec(bad), Error);

  PditSpec d3{3, sigma, {random_unitary(3, rng), random_unitary(3, rng), random_unitary(3, rng)}};
  pdit_from_spec(d3).validate();
}

TEST_CASE("pbit from X") {
  Rng rng(32);

  Mat rho = random_density(4, rng);
  XFormPbit pos{rho, 2, 2};
  DensityMatrix from_x = pbit_from_X(pos);
  from_x.validate();
  DensityMatrix shield{rho, {{2, 2}, {"A'", "B'"}}, kDefaultTol};
  CHECK((from_x.m - basic_pdit(2, shield).m).cwiseAbs().maxCoeff() < 1e-12);

  XFormPbit bad{identity(4), 2, 2};
  CHECK_THROWS_AS(pbit_from_X(bad), Error);

  Mat x = Mat::Zero(2, 2);
  x(0, 0) = 0.7;
  x(1, 1) = -0.3;
  DensityMatrix plus{Mat::Zero(2, 2), {{2, 1}, {"A'", "B'"}}, kDefaultTol};
  DensityMatrix minus = plus;
  plus.m(0, 0) = 1.0;
  minus.m(1, 1) = 1.0;
  DensityMatrix hermitian_route = pbit_from_X({x, 2, 1});
  FlagsFormResult flag_route = flags_form(0.7, plus, minus);
  CHECK(flag_route.orthogonal_flags);
  CHECK((hermitian_route.m - flag_route.state.m).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("flags form") {
  DensityMatrix sigma{identity(2) / 2.0, SystemLayout::single(2, "A'"), kDefaultTol};
  FlagsFormResult all_plus = flags_form(1.0, sigma, sigma);
  DensityMatrix expected = basic_pdit(2, sigma);
  CHECK((all_plus.state.m - expected.m).cwiseAbs().maxCoeff() < 1e-14);

  long d = 2;
  double p = 0.5 * (1.0 + 1.0 / static_cast<double>(d));
  FlagsFormResult wF = flags_form(p, werner_sym(d), werner_asym(d));
  CHECK(wF.orthogonal_flags);
  CHECK((wF.state.m - gamma_V(d).m).cwiseAbs().maxCoeff() < 1e-12);

  FlagsFormResult same = flags_form(0.5, sigma, sigma);
  CHECK_FALSE(same.orthogonal_flags);
  Mat pt = partial_transpose(same.state.m, same.state.layout.dims, {1});
  CHECK(min_eigenvalue(pt) > -1e-12);

  CHECK_THROWS_AS(flags_form(1.5, sigma, sigma), Error);
}

TEST_CASE("swap operator key state") {
  for (long d : {2L, 3L, 4L, 5L}) {
    DensityMatrix g = gamma_V(d);
    g.validate();
    Mat pt = partial_transpose(g.m, g.layout.dims, {1, 3});
    double expected = 1.0 + 1.0 / static_cast<double>(d);
    CHECK(std::abs(trace_norm(pt) - expected) < 1e-9);
  }
  DensityMatrix g2 = gamma_V(2);
  CHECK(std::abs(std::log2(trace_norm(partial_transpose(g2.m, g2.layout.dims, {1, 3}))) -
                 0.5849625007211562) < 1e-9);
}

TEST_CASE("Hadamard-phase key state") {
  DensityMatrix f2 = flower(2);
  f2.validate();

  Mat h(2, 2);
  double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  Mat u = Mat::Zero(4, 4);
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) u(i * 2 + i, j * 2 + j) = h(i, j);
  Mat x = u.transpose() / 2.0;
  CHECK(std::abs(trace_norm(x) - 1.0) < 1e-12);

  Mat sigma = Mat::Zero(4, 4);
  sigma(0, 0) = 0.5;
  sigma(3, 3) = 0.5;
  CHECK((hermitian_sqrt(x * x.adjoint()) - sigma).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((key_block(f2.m, 2, 2, 0, 0, 0, 0) - 0.5 * sigma).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((key_block(f2.m, 2, 2, 0, 0, 1, 1) - 0.5 * x).cwiseAbs().maxCoeff() < 1e-12);

  flower(4).validate();
  CHECK_THROWS_AS(flower(3), Error);
  CHECK_THROWS_AS(flower(1), Error);
}
