// Acceptance suite: one criterion per invocation (1..12 or "all"), one
// pass/fail line per criterion, exit 0 only if every requested criterion holds.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "pqs/family.hpp"
#include "pqs/linalg.hpp"
#include "pqs/rates.hpp"
#include "pqs/security.hpp"
#include "pqs/states.hpp"
#include "pqs/twisting.hpp"

using namespace pqs;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct Checker {
  bool ok = true;
  std::string summary;
  std::string faults;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!faults.empty()) faults += "; ";
    faults += what;
  }
  void note(const std::string& s) {
    if (!summary.empty()) summary += "; ";
    summary += s;
  }
};

Twisting random_twisting22(long shield, Rng& rng) {
  Twisting t;
  t.dA = 2;
  t.dB = 2;
  for (int i = 0; i < 4; ++i) t.blocks.push_back(random_unitary(shield, rng));
  return t;
}

DensityMatrix random_keyed22(Rng& rng) {
  return {random_density(16, rng), SystemLayout::keyed(2, 2, 2, 2), kDefaultTol};
}

// 1. Bell-shield negativity values sit strictly below the one-bit key rate.
Checker c01() {
  Checker c;
  double max_dev = 0.0;
  for (long d = 2; d <= 5; ++d) {
    DensityMatrix g = gamma_V(d);
    double ln = log_negativity(g);
    double expect = std::log2(1.0 + 1.0 / static_cast<double>(d));
    max_dev = std::max(max_dev, std::abs(ln - expect));
    c.require(std::abs(ln - expect) <= 1e-9,
              "log negativity off at d=" + std::to_string(d) + ": " + num(ln));
    DensityMatrix cond{Mat::Identity(d * d, d * d) / static_cast<double>(d * d),
                      {{d, d}, {"A'", "B'"}}, kDefaultTol};
    ErUpperResult er = er_upper_bound_pdit(g, {cond, cond}, {0.0, 0.0});
    c.require(er.bound == 1.0,
              "relative entropy bound not one bit at d=" + std::to_string(d));
    c.require(er.irreducible, "bound not certified at d=" + std::to_string(d));
    c.require(expect < er.bound,
              "negativity not below the key rate at d=" + std::to_string(d));
  }
  c.note("negativity matches log2(1+1/d) for d=2..5, max deviation " + num(max_dev) +
         ", each below the certified one-bit bound");
  return c;
}

// 2. Analytic PPT threshold of the family matches dense transpose spectra.
Checker c02() {
  Checker c;
  const double ps[] = {0.10, 0.20, 0.30, 0.33};
  int cells = 0;
  double worst_gap = 1.0;
  for (double p : ps)
    for (long d = 2; d <= 5; ++d)
      for (long k = 1; k <= 2; ++k) {
        bool analytic = ppt_condition(p, d, k);
        DensityMatrix fam = family_state(p, d, k);
        double me = min_eigenvalue(partial_transpose(fam, b_side(fam.layout)).m);
        bool numeric = me >= -1e-10;
        ++cells;
        worst_gap = std::min(worst_gap, std::abs(me));
        c.require(analytic == numeric,
                  "analytic/numeric mismatch at p=" + num(p) + " d=" +
                      std::to_string(d) + " k=" + std::to_string(k) +
                      " (min eig " + num(me) + ")");
      }
  c.require(ppt_condition(0.3, 2, 1), "boundary cell p=0.3 d=2 k=1 not PPT");
  c.require(!ppt_condition(0.3, 2, 2), "boundary cell p=0.3 d=2 k=2 not NPT");
  c.note(std::to_string(cells) +
         " grid cells agree between the threshold formula and dense spectra; "
         "boundary pair (0.3,2,1)/(0.3,2,2) splits PPT/NPT");
  return c;
}

// 3. Closed-form recurrence output equals iterated rounds, with the pinned
//    success probability and block norms.
Checker c03() {
  Checker c;
  DensityMatrix fam = family_state(0.3, 2, 1);
  RecurrenceResult round = recurrence_round(fam, fam);
  DensityMatrix closed = recurrence_output(0.3, 2, 1, 2);
  c.require(round.state.m.rows() == closed.m.rows(), "dimension mismatch");
  double max_entry = (round.state.m - closed.m).cwiseAbs().maxCoeff();
  c.require(max_entry <= 1e-10,
            "iterated round differs from closed form by " + num(max_entry));
  c.require(std::abs(round.success - 0.26) <= 1e-12,
            "round success " + num(round.success) + " != 0.26");
  c.require(std::abs(recurrence_success(0.3, 2) - 0.26) <= 1e-12,
            "closed-form success " + num(recurrence_success(0.3, 2)));
  double bn = recurrence_block_norm(0.3, 1, 2);
  c.require(std::abs(bn - 9.0 / 104.0) <= 1e-12,
            "block norm " + num(bn) + " != 9/104");
  double worst = 0.0;
  for (long m = 1; m <= 3; ++m) {
    double dense = block_norm_key_quality(recurrence_output(0.3, 2, 1, m));
    double formula = recurrence_block_norm(0.3, 1, m);
    worst = std::max(worst, std::abs(dense - formula));
    c.require(std::abs(dense - formula) <= 1e-10,
              "block norm mismatch at m=" + std::to_string(m));
  }
  c.note("iterated rounds equal the closed form (max entry gap " + num(max_entry) +
         "), success 0.26, block norm 9/104, dense/formula block norms agree for "
         "m=1..3 (worst " + num(worst) + ")");
  return c;
}

// 4. The ccq reduction ignores twisting.
Checker c04() {
  Checker c;
  Rng rng(401);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    DensityMatrix rho = random_keyed22(rng);
    Twisting tw = random_twisting22(4, rng);
    double dist = ccq_distance(ccq_of(rho), ccq_of(apply_twisting(rho, tw)));
    worst = std::max(worst, dist);
    c.require(dist <= 1e-10,
              "twisting moved the ccq state by " + num(dist) + " at rep " +
                  std::to_string(rep));
  }
  c.note("100 random state/twisting pairs leave the ccq state fixed, worst "
         "distance " + num(worst));
  return c;
}

// 5. Exact pdits pass the key test; Eve block norms factor into fidelities.
Checker c05() {
  Checker c;
  Rng rng(501);
  for (int rep = 0; rep < 100; ++rep) {
    PditSpec spec;
    spec.d = 2 + rep % 3;
    long s = 2 + rep % 2;
    spec.sigma = {random_density(s, rng), SystemLayout::single(s, "A'"),
                  kDefaultTol};
    for (long i = 0; i < spec.d; ++i)
      spec.unitaries.push_back(random_unitary(s, rng));
    c.require(has_B_key(ccq_of(pdit_from_spec(spec)), 1e-10),
              "pdit failed the key test at rep " + std::to_string(rep));
  }
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    DensityMatrix rho = random_keyed22(rng);
    for (const EveBlockRow& row : eve_block_representation(rho))
      worst = std::max(worst, std::abs(row.block_norm - row.fid_product));
  }
  c.require(worst < 1e-9,
            "block norm / fidelity identity discrepancy " + num(worst));
  c.note("100 random pdits pass the key test at eps=1e-10; block-norm vs "
         "fidelity identity holds on 100 general states (worst gap " +
         num(worst) + ")");
  return c;
}

// 6. Squeezed recurrence outputs keep a large singlet overlap; the
//    overlap/coherence implications hold on random two-qubit states.
Checker c06() {
  Checker c;
  Mat pplus = max_entangled(2).m;
  struct Row { double p; long k; long m; };
  const Row dense_rows[] = {{0.3, 1, 2}, {0.3, 2, 2}, {0.25, 1, 3},
                            {0.45, 2, 2}, {0.2, 1, 2}};
  double worst_margin = 1.0;
  for (const Row& r : dense_rows) {
    DensityMatrix sq = privacy_squeeze(recurrence_output(r.p, 2, r.k, r.m));
    double bn = block_norm_key_quality(sq);
    double eps = 0.5 - bn;
    double overlap = (sq.m * pplus).trace().real();
    worst_margin = std::min(worst_margin, overlap - (1.0 - 2.0 * eps));
    c.require(overlap >= 1.0 - 2.0 * eps - 1e-12,
              "overlap " + num(overlap) + " below 1-2eps at p=" + num(r.p) +
                  " k=" + std::to_string(r.k) + " m=" + std::to_string(r.m));
  }
  const Row model_rows[] = {{0.3, 6, 2}, {0.3, 8, 3}, {0.2, 10, 2}};
  for (const Row& r : model_rows) {
    DensityMatrix sq = squeezed_recurrence_state(r.p, r.k, r.m);
    double eps = 0.5 - recurrence_block_norm(r.p, r.k, r.m);
    double overlap = (sq.m * pplus).trace().real();
    c.require(overlap >= 1.0 - 2.0 * eps - 1e-12,
              "model overlap below 1-2eps at k=" + std::to_string(r.k));
  }
  Rng rng(601);
  int violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    DensityMatrix rho{random_density(4, rng), {{2, 2}, {"A", "B"}}, kDefaultTol};
    CoherenceReport cr = coherence_overlap_bounds(rho);
    if (!cr.to_coherence || !cr.to_overlap) ++violations;
  }
  c.require(violations == 0,
            std::to_string(violations) + " coherence/overlap violations");
  c.note("squeezed outputs keep overlap >= 1-2eps on 5 dense and 3 closed-form "
         "rows (tightest margin " + num(worst_margin) +
         "); 0/1000 coherence violations");
  return c;
}

// 7. A PPT recurrence point with block norm >= 0.47 should give a positive
//    distillable-key bound. Evaluated faithfully at (p=0.3, k=6, m=2).
Checker c07() {
  Checker c;
  const double p = 0.3;
  const long k = 6, m = 2;

  bool designated_ppt = ppt_condition(p, 2, k);
  long d_ppt = 0;
  for (long d = 2; d <= 64; ++d)
    if (ppt_condition(p, d, k)) { d_ppt = d; break; }
  c.require(d_ppt > 0, "no PPT dimension found at k=6");

  double pt_min = d_ppt > 0 ? recurrence_pt_min_eig(p, d_ppt, k, m) : -1.0;
  double bn = recurrence_block_norm(p, k, m);
  double eps = 0.5 - bn;
  double bound = 1.0 - 16.0 * eps;

  DensityMatrix sq = squeezed_recurrence_state(p, k, m);
  NearPbitDiagnostics diag = near_pbit_diagnostics(ccq_of(sq), eps);

  // Supremum of the block norm over all k at this p and m=2.
  double q = (1.0 - 2.0 * p) / (2.0 * p);
  double bn_sup = 0.5 / (1.0 + q * q);

  c.require(pt_min >= 0.0, "transpose spectrum negative at the PPT point");
  c.require(diag.dw >= bound - 1e-9,
            "rate " + num(diag.dw) + " below 1-16eps = " + num(bound));
  c.require(bound > 0.0, "1-16eps = " + num(bound) + " is not positive (eps " +
                             num(eps) + ")");
  c.require(diag.dw > 0.0, "squeezed rate " + num(diag.dw) + " is not positive");
  c.require(bn >= 0.47, "block norm " + num(bn) + " below 0.47 (supremum over "
                            "k at p=0.3, m=2 is " + num(bn_sup) + ")");
  c.note(std::string("designated cell (0.3,2,6) ") +
         (designated_ppt ? "is" : "is not") + " PPT; smallest PPT dimension at "
         "k=6 is d=" + std::to_string(d_ppt) + " with transpose min eigenvalue " +
         num(pt_min) + "; block norm " + num(bn) + ", eps " + num(eps) +
         ", squeezed rate " + num(diag.dw));
  return c;
}

// 8. Sampled product-state witness never beats the 1/2 overlap ceiling.
Checker c08() {
  Checker c;
  Rng rng(801);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    Twisting tw = random_twisting22(4, rng);
    WitnessResult w = er_lower_witness(10000, tw, 2, 2, 900 + t);
    worst = std::max(worst, w.max_overlap);
    c.require(w.max_overlap <= 0.5 + 1e-9,
              "overlap " + num(w.max_overlap) + " beats 1/2 at twisting " +
                  std::to_string(t));
  }
  c.note("5 twistings x 10000 samples stay below the 1/2 ceiling, best overlap " +
         num(worst));
  return c;
}

// 9. The hiding-flag witness certifies NPT-ness through both routes.
Checker c09() {
  Checker c;
  for (long k = 1; k <= 2; ++k) {
    double closed = npt_witness_value(2, k);
    double numeric = npt_witness_numeric(2, k);
    c.require(closed > 0.0, "witness not positive at k=" + std::to_string(k));
    c.require(std::abs(closed - numeric) <= 1e-10,
              "witness routes differ by " + num(std::abs(closed - numeric)) +
                  " at k=" + std::to_string(k));
    DensityMatrix cand = npt_candidate(2, k);
    double me = min_eigenvalue(partial_transpose(cand, b_side(cand.layout)).m);
    c.require(me < 0.0,
              "candidate transpose not negative at k=" + std::to_string(k) +
                  " (min eig " + num(me) + ")");
  }
  c.note("witness value positive and equal through closed and trace routes for "
         "k=1,2; candidate transpose spectra negative");
  return c;
}

// 10. Security implications with proof-derived constants hold on random
//     ensembles; fidelity and entropy continuity bounds hold on random pairs.
Checker c10() {
  Checker c;
  Rng rng(1001);
  const char* asserted[] = {
      "fidelity_from_norm",      "norm_from_fidelity_proof",
      "product_gap_matrix_route", "norm_from_holevo_raw",
      "norm_from_holevo_bits",    "holevo_from_norm",
      "joint_from_unif_and_holevo_proof", "uniformity_from_joint",
      "holevo_from_joint_proof"};
  for (int rep = 0; rep < 200; ++rep) {
    CcqEnsemble e;
    e.dA = 2;
    e.dB = 2;
    e.tol = kDefaultTol;
    long r = 1 + rep % 4;
    e.p = Eigen::MatrixXd(2, 2);
    for (long i = 0; i < 2; ++i)
      for (long j = 0; j < 2; ++j) e.p(i, j) = 0.05 + rng.uniform();
    e.p /= e.p.sum();
    for (int idx = 0; idx < 4; ++idx) e.eve.push_back(random_density(r, rng));
    std::vector<BoundRow> rows = criteria_bounds(e);
    for (const char* name : asserted) {
      bool found = false;
      for (const BoundRow& row : rows)
        if (row.name == name) {
          found = true;
          c.require(row.satisfied,
                    std::string(name) + " violated at rep " +
                        std::to_string(rep) + " (lhs " + num(row.lhs) +
                        ", rhs " + num(row.rhs) + ")");
        }
      c.require(found, std::string("missing row ") + name);
    }
  }
  Rng rng2(1002);
  for (int rep = 0; rep < 1000; ++rep) {
    long d = rng2.integer(2, 4);
    Mat rho = random_density(d, rng2);
    Mat sig = random_density(d, rng2);
    double f = fidelity(rho, sig);
    double half = 0.5 * trace_distance(rho, sig);
    c.require(1.0 - f <= half + 1e-9, "fidelity lower bracket violated");
    c.require(half <= std::sqrt(std::max(0.0, 1.0 - f * f)) + 1e-9,
              "fidelity upper bracket violated");
  }
  int used = 0;
  for (int rep = 0; rep < 2000 && used < 1000; ++rep) {
    long d = rng2.integer(2, 5);
    Mat rho = random_density(d, rng2);
    Mat delta = random_density(d, rng2);
    double t = 0.2 * rng2.uniform();
    Mat sig = (1.0 - t) * rho + t * delta;
    double dist = trace_distance(rho, sig);
    if (dist > 1.0) continue;
    ++used;
    double lhs = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sig));
    double rhs = 2.0 * dist * std::log2(static_cast<double>(d)) +
                 binary_entropy(dist);
    c.require(lhs <= rhs + 1e-9, "entropy continuity bound violated");
  }
  c.require(used >= 1000, "too few continuity pairs");
  c.note("9 proof-backed implications hold on 200 random ensembles; fidelity "
         "brackets and entropy continuity hold on 1000 pairs each");
  return c;
}

// 11. The controlled key demo resolves both outcomes perfectly.
Checker c11() {
  Checker c;
  CpqcReport r = cpqc_demo(2, 1);
  for (int i = 0; i < 2; ++i)
    c.require(std::abs(r.outcome_fidelity[i] - 1.0) <= 1e-10,
              "outcome " + std::to_string(i) + " fidelity " +
                  num(r.outcome_fidelity[i]));
  c.require(std::abs(r.controller_overlap) <= 1e-10,
            "controller overlap " + num(r.controller_overlap));
  c.note("outcome probabilities " + num(r.outcome_prob[0]) + "/" +
         num(r.outcome_prob[1]) + ", fidelities 1 within 1e-10, controller "
         "overlap " + num(r.controller_overlap));
  return c;
}

// 12. The relative entropy bound returns exactly one bit on the named states.
Checker c12() {
  Checker c;
  for (long d = 2; d <= 4; ++d) {
    DensityMatrix cond{Mat::Identity(d * d, d * d) / static_cast<double>(d * d),
                      {{d, d}, {"A'", "B'"}}, kDefaultTol};
    ErUpperResult r = er_upper_bound_pdit(gamma_V(d), {cond, cond}, {0.0, 0.0});
    c.require(r.bound == 1.0 && r.irreducible,
              "bell-shield bound not one bit at d=" + std::to_string(d));
  }
  for (long d : {2L, 4L}) {
    Mat diag = Mat::Zero(d * d, d * d);
    for (long i = 0; i < d; ++i) diag(i * d + i, i * d + i) = 1.0 / d;
    DensityMatrix cond{diag, {{d, d}, {"A'", "B'"}}, kDefaultTol};
    ErUpperResult r = er_upper_bound_pdit(flower(d), {cond, cond}, {0.0, 0.0});
    c.require(r.bound == 1.0 && r.irreducible,
              "flower bound not one bit at d=" + std::to_string(d));
  }
  c.note("bound is exactly 1.0 and certified for bell-shield d=2..4 and "
         "flower d=2,4");
  return c;
}

Checker run(int n) {
  switch (n) {
    case 1: return c01();
    case 2: return c02();
    case 3: return c03();
    case 4: return c04();
    case 5: return c05();
    case 6: return c06();
    case 7: return c07();
    case 8: return c08();
    case 9: return c09();
    case 10: return c10();
    case 11: return c11();
    case 12: return c12();
  }
  Checker c;
  c.ok = false;
  c.faults = "unknown criterion";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  if (argc < 2 || std::strcmp(argv[1], "all") == 0) {
    for (int i = 1; i <= 12; ++i) wanted.push_back(i);
  } else {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 12) {
      std::fprintf(stderr, "usage: %s <1..12|all>\n", argv[0]);
      return 2;
    }
    wanted.push_back(n);
  }

  bool all_ok = true;
  for (int n : wanted) {
    Checker c;
    try {
      c = run(n);
    } catch (const std::exception& e) {
      c.ok = false;
      c.faults = std::string("exception: ") + e.what();
    }
    all_ok = all_ok && c.ok;
    std::string line = c.ok ? c.summary : c.faults;
    if (!c.ok && !c.summary.empty()) line += " | context: " + c.summary;
    std::printf("criterion %2d: %s  %s\n", n, c.ok ? "PASS" : "FAIL",
                line.c_str());
  }
  return all_ok ? 0 : 1;
}
