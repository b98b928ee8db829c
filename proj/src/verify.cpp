#include "pqs/verify.hpp"

#include <cmath>
#include <functional>

#include "pqs/family.hpp"
#include "pqs/rates.hpp"
#include "pqs/security.hpp"
#include "pqs/states.hpp"
#include "pqs/twisting.hpp"

namespace pqs {

namespace {

struct Ctx {
  Rng rng;
  double tol;

  bool within(double residual, double scale) const {
    return std::abs(residual) <= scale * tol;
  }
};

using CheckFn = std::function<bool(Ctx&)>;

DensityMatrix random_keyed22(long shield_each, Rng& rng) {
  long n = 4 * shield_each * shield_each;
  return {random_density(n, rng),
          SystemLayout::keyed(2, 2, shield_each, shield_each), kDefaultTol};
}

Twisting random_twisting22(long shield, Rng& rng) {
  Twisting t;
  t.dA = 2;
  t.dB = 2;
  for (int i = 0; i < 4; ++i) t.blocks.push_back(random_unitary(shield, rng));
  return t;
}

VerifyGroup run_group(const std::string& name,
                      const std::vector<std::pair<std::string, CheckFn>>& checks,
                      std::uint64_t seed, double tol) {
  VerifyGroup g;
  g.name = name;
  for (const auto& [check_name, fn] : checks) {
    Ctx ctx{Rng(seed), tol};
    bool ok = false;
    try {
      ok = fn(ctx);
    } catch (...) {
      ok = false;
    }
    g.checks.push_back({check_name, ok});
    ++seed;
  }
  return g;
}

std::vector<std::pair<std::string, CheckFn>> linalg_checks() {
  return {
      {"unitary-residual",
       [](Ctx& c) {
         Mat u = random_unitary(6, c.rng);
         return c.within((u.adjoint() * u - Mat::Identity(6, 6))
                             .cwiseAbs()
                             .maxCoeff(),
                         10.0);
       }},
      {"tensor-trace",
       [](Ctx& c) {
         Mat a = random_density(3, c.rng), b = random_density(4, c.rng);
         return c.within(tensor(a, b).trace().real() - 1.0, 10.0);
       }},
      {"partial-trace-marginal",
       [](Ctx& c) {
         Mat a = random_density(3, c.rng), b = random_density(4, c.rng);
         Mat back = partial_trace(tensor(a, b), {3, 4}, {0});
         return c.within((back - a).cwiseAbs().maxCoeff(), 10.0);
       }},
      {"double-transpose",
       [](Ctx& c) {
         Mat m = random_density(12, c.rng);
         Mat twice =
             partial_transpose(partial_transpose(m, {3, 4}, {1}), {3, 4}, {1});
         return c.within((twice - m).cwiseAbs().maxCoeff(), 10.0);
       }},
      {"trace-norm-spectrum",
       [](Ctx& c) {
         Mat a = random_density(6, c.rng), b = random_density(6, c.rng);
         Mat h = a - b;
         double s = 0.0;
         for (double ev : hermitian_eigenvalues(h)) s += std::abs(ev);
         return c.within(trace_norm(h) - s, 100.0);
       }},
      {"purified-marginal",
       [](Ctx& c) {
         DensityMatrix rho{random_density(5, c.rng),
                           SystemLayout::single(5, "A"), kDefaultTol};
         PureState ps = purify(rho);
         Mat back = partial_trace(ps.to_density().m, ps.layout.dims, {0});
         return c.within((back - rho.m).cwiseAbs().maxCoeff(), 100.0);
       }},
  };
}

std::vector<std::pair<std::string, CheckFn>> states_checks() {
  return {
      {"pdit-residuals",
       [](Ctx& c) {
         PditSpec spec;
         spec.d = 3;
         spec.sigma = {random_density(3, c.rng), SystemLayout::single(3, "A'"),
                       kDefaultTol};
         for (int i = 0; i < 3; ++i)
           spec.unitaries.push_back(random_unitary(3, c.rng));
         DensityMatrix g = pdit_from_spec(spec);
         return c.within(g.m.trace().real() - 1.0, 10.0) &&
                c.within((g.m - g.m.adjoint()).cwiseAbs().maxCoeff(), 10.0);
       }},
      {"flower-block-norm",
       [](Ctx& c) {
         return c.within(block_norm_key_quality(flower(2)) - 0.5, 100.0);
       }},
      {"werner-orthogonality",
       [](Ctx& c) {
         Mat s = werner_sym(3).m, a = werner_asym(3).m;
         return c.within((s * a).trace().real(), 10.0) &&
                c.within(s.trace().real() - 1.0, 10.0);
       }},
      {"hiding-trace",
       [](Ctx& c) {
         auto [t1, t2] = hiding_pair(2, 2);
         return c.within(t1.m.trace().real() - 1.0, 10.0) &&
                c.within(t2.m.trace().real() - 1.0, 10.0);
       }},
      {"projector-idempotence",
       [](Ctx& c) {
         Mat p = max_entangled(3).m;
         return c.within((p * p - p).cwiseAbs().maxCoeff(), 10.0);
       }},
  };
}

std::vector<std::pair<std::string, CheckFn>> twisting_checks() {
  return {
      {"twisted-residuals",
       [](Ctx& c) {
         DensityMatrix rho = random_keyed22(2, c.rng);
         DensityMatrix tw = apply_twisting(rho, random_twisting22(4, c.rng));
         return c.within(tw.m.trace().real() - 1.0, 100.0) &&
                c.within((tw.m - tw.m.adjoint()).cwiseAbs().maxCoeff(), 100.0);
       }},
      {"block-norm-invariant",
       [](Ctx& c) {
         DensityMatrix rho = random_keyed22(2, c.rng);
         DensityMatrix tw = apply_twisting(rho, random_twisting22(4, c.rng));
         return c.within(block_norm_key_quality(tw) -
                             block_norm_key_quality(rho),
                         1e3);
       }},
      {"squeeze-recovers-key",
       [](Ctx& c) {
         DensityMatrix sigma{random_density(3, c.rng),
                             SystemLayout::single(3, "A'"), kDefaultTol};
         DensityMatrix sq = privacy_squeeze(basic_pdit(2, sigma));
         return c.within((sq.m - max_entangled(2).m).cwiseAbs().maxCoeff(),
                         1e3);
       }},
  };
}

std::vector<std::pair<std::string, CheckFn>> security_checks() {
  return {
      {"outcome-distribution",
       [](Ctx& c) {
         CcqEnsemble e = ccq_of(random_keyed22(2, c.rng));
         return c.within(e.p.sum() - 1.0, 100.0);
       }},
      {"rate-ignores-twisting",
       [](Ctx& c) {
         DensityMatrix rho = random_keyed22(2, c.rng);
         DensityMatrix tw = apply_twisting(rho, random_twisting22(4, c.rng));
         return c.within(dw_rate(ccq_of(rho)) - dw_rate(ccq_of(tw)), 1e4);
       }},
      {"pdit-security",
       [](Ctx& c) {
         DensityMatrix sigma{random_density(2, c.rng),
                             SystemLayout::single(2, "A'"), kDefaultTol};
         DensityMatrix g = basic_pdit(2, sigma);
         CcqEnsemble e = ccq_of(g);
         return c.within(security_norm(e), 1e4) && c.within(uniformity(e), 1e4);
       }},
  };
}

std::vector<std::pair<std::string, CheckFn>> family_checks() {
  return {
      {"block-norm-two-routes",
       [](Ctx& c) {
         double formula = recurrence_block_norm(0.3, 1, 2);
         double direct =
             block_norm_key_quality(recurrence_output(0.3, 2, 1, 2));
         return c.within(formula - direct, 1e3);
       }},
      {"transpose-closed-form",
       [](Ctx& c) {
         DensityMatrix rho = family_state(0.3, 2, 1);
         DensityMatrix pt = partial_transpose(rho, b_side(rho.layout));
         return c.within(family_pt_min_eig(0.3, 2, 1) - min_eigenvalue(pt.m),
                         1e3);
       }},
      {"success-probability",
       [](Ctx& c) {
         double p = 0.2 + 0.25 * c.rng.uniform();
         DensityMatrix rho = family_state(p, 2, 1);
         RecurrenceResult r = recurrence_round(rho, rho);
         return c.within(r.success - recurrence_success(p, 2), 1e3);
       }},
      {"witness-two-routes",
       [](Ctx& c) {
         return c.within(npt_witness_value(2, 1) - npt_witness_numeric(2, 1),
                         1e3);
       }},
  };
}

std::vector<std::pair<std::string, CheckFn>> rates_checks() {
  return {
      {"ideal-rate",
       [](Ctx& c) {
         DensityMatrix sigma{random_density(3, c.rng),
                             SystemLayout::single(3, "A'"), kDefaultTol};
         return c.within(dw_rate(ccq_of(basic_pdit(2, sigma))) - 1.0, 1e4);
       }},
      {"bell-negativity",
       [](Ctx& c) {
         return c.within(log_negativity(max_entangled(2), {1}) - 1.0, 1e3);
       }},
      {"pbit-two-routes",
       [](Ctx& c) {
         XFormPbit x{swap_operator(2) / 4.0, 2, 2};
         return c.within(pbit_log_negativity(x).formula -
                             log_negativity(gamma_V(2)),
                         1e3);
       }},
      {"witness-ceiling",
       [](Ctx& c) {
         Twisting id = Twisting::identity_twisting(2, 2, 4);
         return er_lower_witness(200, id, 2, 2, c.rng.integer(0, 1 << 20))
                    .max_overlap <= 0.5 + 1e3 * c.tol;
       }},
  };
}

}  // namespace

long VerifyGroup::passed() const {
  long n = 0;
  for (const VerifyCheck& c : checks)
    if (c.passed) ++n;
  return n;
}

bool VerifyReport::all_passed() const {
  for (const VerifyGroup& g : groups)
    if (!g.ok()) return false;
  return true;
}

VerifyReport run_verify(std::uint64_t seed, double tol) {
  VerifyReport r;
  r.groups.push_back(run_group("linalg", linalg_checks(), seed + 100, tol));
  r.groups.push_back(run_group("states", states_checks(), seed + 200, tol));
  r.groups.push_back(run_group("twisting", twisting_checks(), seed + 300, tol));
  r.groups.push_back(run_group("security", security_checks(), seed + 400, tol));
  r.groups.push_back(run_group("family", family_checks(), seed + 500, tol));
  r.groups.push_back(run_group("rates", rates_checks(), seed + 600, tol));
  return r;
}

}  // namespace pqs
