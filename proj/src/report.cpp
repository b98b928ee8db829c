#include "pqs/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "pqs/family.hpp"
#include "pqs/json_io.hpp"
#include "pqs/rates.hpp"
#include "pqs/security.hpp"
#include "pqs/twisting.hpp"
#include "pqs/verify.hpp"

namespace pqs {

namespace {

using nlohmann::json;

constexpr long kDenseCap = 1024;
constexpr long kSpectralCap = 4096;

double sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Shield split across the key cut: labels from position 2 on, B-side when the
// label starts with 'B'. Returns the permutation taking layout order to
// (A-side, B-side) grouped order, plus the two side dimensions.
struct ShieldSplit {
  long dAp = 1;
  long dBp = 1;
  std::vector<long> to_grouped;  // grouped index per layout index
};

ShieldSplit shield_split(const SystemLayout& layout) {
  ShieldSplit s;
  std::vector<long> dims;
  std::vector<bool> is_b;
  for (size_t i = 2; i < layout.dims.size(); ++i) {
    dims.push_back(layout.dims[i]);
    bool b = !layout.labels[i].empty() && layout.labels[i][0] == 'B';
    is_b.push_back(b);
    (b ? s.dBp : s.dAp) *= layout.dims[i];
  }
  long total = s.dAp * s.dBp;
  s.to_grouped.assign(total, 0);
  std::vector<long> idx(dims.size(), 0);
  for (long old = 0; old < total; ++old) {
    long ap = 0, bp = 0;
    for (size_t i = 0; i < dims.size(); ++i)
      (is_b[i] ? bp : ap) = (is_b[i] ? bp : ap) * dims[i] + idx[i];
    s.to_grouped[old] = ap * s.dBp + bp;
    for (long i = static_cast<long>(dims.size()) - 1; i >= 0; --i) {
      if (++idx[i] < dims[i]) break;
      idx[i] = 0;
    }
  }
  return s;
}

Mat grouped_block(const Mat& u, const ShieldSplit& s) {
  Mat out(u.rows(), u.cols());
  for (long r = 0; r < u.rows(); ++r)
    for (long c = 0; c < u.cols(); ++c)
      out(s.to_grouped[r], s.to_grouped[c]) = u(r, c);
  return out;
}

json ccq_summary(const CcqEnsemble& c) {
  json j;
  json p = json::array();
  for (long i = 0; i < c.dA; ++i)
    for (long jj = 0; jj < c.dB; ++jj)
      p.push_back({i, jj, sig12(c.p(i, jj))});
  j["p"] = std::move(p);
  j["holevo"] = sig12(holevo(c));
  j["security_norm"] = sig12(security_norm(c));
  j["uniformity"] = sig12(uniformity(c));
  return j;
}

void add_note(std::string& notes, const std::string& line) {
  if (!notes.empty()) notes += "; ";
  notes += line;
}

}  // namespace

std::string analyze_report_json(const DensityMatrix& rho, const Options& opt) {
  json j;
  j["dims"] = rho.layout.dims;
  j["labels"] = rho.layout.labels;
  std::string notes;

  long n = rho.dim();
  j["hermiticity_residual"] =
      sig12((rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff());
  j["trace"] = sig12(rho.m.trace().real());

  bool valid = false;
  try {
    rho.validate();
    valid = true;
  } catch (const Error& e) {
    add_note(notes, std::string("not a density matrix: ") + e.what());
  }
  j["valid"] = valid;

  if (n <= kSpectralCap) {
    j["min_eigenvalue"] = sig12(min_eigenvalue(rho.m));
    if (rho.layout.dims.size() >= 2) {
      DensityMatrix pt = partial_transpose(rho, b_side(rho.layout));
      double me = min_eigenvalue(pt.m);
      j["min_eig_pt"] = sig12(me);
      j["ppt"] = me >= -opt.tol;
      j["log_negativity"] = sig12(log_negativity(rho));
    }
  } else {
    add_note(notes, "spectral analysis skipped above dimension " +
                        std::to_string(kSpectralCap));
  }

  bool two_qubit_key = rho.layout.dims.size() >= 2 &&
                       rho.layout.dims[0] == 2 && rho.layout.dims[1] == 2;
  if (two_qubit_key) j["block_norm"] = sig12(block_norm_key_quality(rho));

  if (valid && rho.layout.dims.size() >= 2 && n <= kDenseCap) {
    try {
      CcqEnsemble c = ccq_of(rho);
      j["ccq"] = ccq_summary(c);
      j["dw_rate"] = sig12(dw_rate(c));
    } catch (const Error& e) {
      add_note(notes, std::string("ccq analysis failed: ") + e.what());
    }
    if (two_qubit_key) {
      try {
        DensityMatrix sq = privacy_squeeze(rho);
        j["squeezed"] = json::parse(matrix_to_json(sq));
        j["dw_rate_squeezed"] = sig12(dw_rate(ccq_of(sq)));
      } catch (const Error& e) {
        add_note(notes, std::string("squeeze failed: ") + e.what());
      }
    }
  } else if (valid && n > kDenseCap) {
    add_note(notes, "ccq analysis skipped above dimension " +
                        std::to_string(kDenseCap));
  }

  j["notes"] = notes;
  return j.dump();
}

std::string rate_report_json(const DensityMatrix& rho,
                             const std::string& construction,
                             const Options& opt) {
  rho.validate();
  RateReport r;
  std::string notes;
  long n = rho.dim();

  if (rho.layout.dims.size() >= 2 && n <= kDenseCap) {
    r.dw_rate = dw_rate(ccq_of(rho));
  } else {
    add_note(notes, "dw_rate unavailable (needs key subsystems and dimension <= " +
                        std::to_string(kDenseCap) + ")");
  }

  if (rho.layout.dims.size() >= 2 && n <= kSpectralCap)
    r.log_negativity = log_negativity(rho);
  else
    add_note(notes, "log_negativity unavailable");

  if (!construction.empty()) {
    try {
      long d_key = rho.layout.dims.size() >= 2 ? rho.layout.dims[0] : 0;
      long s = d_key > 0 ? n / (d_key * rho.layout.dims[1]) : 0;
      std::vector<DensityMatrix> conds;
      if (construction == "gamma-v" || construction == "basic-pdit") {
        DensityMatrix cond{Mat::Identity(s, s) / static_cast<double>(s),
                           SystemLayout::single(s, "S"), opt.tol};
        conds.assign(d_key, cond);
      } else if (construction == "flower") {
        long d = static_cast<long>(std::lround(std::sqrt(
            static_cast<double>(s))));
        if (d * d != s)
          fail(ErrorCode::invalid_arg, "flower needs a square shield");
        Mat diag = Mat::Zero(s, s);
        for (long i = 0; i < d; ++i)
          diag(i * d + i, i * d + i) = 1.0 / static_cast<double>(d);
        conds.assign(d_key, DensityMatrix{diag, SystemLayout::single(s, "S"),
                                          opt.tol});
      } else {
        fail(ErrorCode::unknown_name,
             "unknown construction " + construction);
      }
      ErUpperResult er = er_upper_bound_pdit(
          rho, conds, std::vector<double>(d_key, 0.0));
      r.er_upper_known = true;
      r.er_upper = er.bound;
      if (er.irreducible)
        add_note(notes, "upper bound certified with separable conditionals");
    } catch (const Error& e) {
      add_note(notes, std::string("upper bound unavailable: ") + e.what());
    }
  }

  bool pbit_key = rho.layout.dims.size() >= 2 && rho.layout.dims[0] == 2 &&
                  rho.layout.dims[1] == 2;
  if (pbit_key && n <= kDenseCap) {
    constexpr long kSamples = 2000;
    Twisting tw = psq_twisting(rho);
    ShieldSplit split = shield_split(rho.layout);
    for (Mat& b : tw.blocks) b = grouped_block(b, split);
    WitnessResult w =
        er_lower_witness(kSamples, tw, split.dAp, split.dBp, opt.seed);
    if (w.max_overlap > 1e-300) {
      r.er_lower_witness = -std::log2(w.max_overlap);
      add_note(notes,
               "witness from " + std::to_string(kSamples) +
                   " sampled product states (max overlap " +
                   fmt12(w.max_overlap) +
                   "); the analytic ceiling for exact private states is 1/2");
    }
  } else {
    add_note(notes, "overlap witness needs a two-qubit key and dimension <= " +
                        std::to_string(kDenseCap));
  }

  r.notes = notes;
  json j;
  j["dw_rate"] = sig12(r.dw_rate);
  j["log_negativity"] = sig12(r.log_negativity);
  j["er_upper_known"] = r.er_upper_known;
  j["er_upper"] = sig12(r.er_upper);
  j["er_lower_witness"] = sig12(r.er_lower_witness);
  j["notes"] = r.notes;
  return j.dump();
}

std::string verify_report_json(std::uint64_t seed, double tol,
                               bool* all_passed) {
  VerifyReport r = run_verify(seed, tol);
  json j;
  j["seed"] = seed;
  j["tol"] = tol;
  j["all_passed"] = r.all_passed();
  json groups = json::array();
  for (const VerifyGroup& g : r.groups) {
    json jg;
    jg["name"] = g.name;
    jg["passed"] = g.passed();
    jg["total"] = g.total();
    json checks = json::array();
    for (const VerifyCheck& c : g.checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}});
    jg["checks"] = std::move(checks);
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);
  if (all_passed) *all_passed = r.all_passed();
  return j.dump();
}

std::string pqc_demo_text(long d, long k, const Options& opt) {
  CpqcReport r = cpqc_demo(d, k, opt);
  std::string out;
  out += "controlled key demo d=" + std::to_string(r.d) +
         " k=" + std::to_string(r.k) + "\n";
  for (int i = 0; i < 2; ++i)
    out += "outcome " + std::to_string(i) + ": probability " +
           fmt12(r.outcome_prob[i]) + " key fidelity " +
           fmt12(r.outcome_fidelity[i]) + "\n";
  out += "controller state overlap " + fmt12(r.controller_overlap) + "\n";
  out += "flag state overlap " + fmt12(r.flag_overlap) + "\n";
  out += "premeasure key distance " + fmt12(r.premeasure_key_distance) + "\n";
  out += std::string("premeasure key ppt ") +
         (r.premeasure_key_ppt ? "true" : "false") + "\n";
  return out;
}

}  // namespace pqs
