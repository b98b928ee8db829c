#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqs.h"

namespace {

struct Global {
  double tol = 1e-10;
  std::uint64_t seed = 0;
  long max_dim = 16384;

  pqs_options options() const { return pqs_options{tol, seed, max_dim}; }
};

int report_error(pqs_status s) {
  std::cerr << "error: " << pqs_last_error() << "\n";
  return static_cast<int>(s);
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return static_cast<int>(PQS_ERR_IO);
  }
  return 0;
}

struct StateGuard {
  pqs_state* s = nullptr;
  ~StateGuard() { pqs_state_free(s); }
};

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { pqs_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"private-state toolkit"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--tol", g.tol, "numeric tolerance")->envname("PQS_TOL");
  app.add_option("--seed", g.seed, "random seed")->envname("PQS_SEED");
  app.add_option("--max-dim", g.max_dim, "largest allowed state dimension")
      ->envname("PQS_MAX_DIM");

  auto* gen = app.add_subcommand(
      "gen",
      "construct a named state (max-entangled, gamma-v, flower, basic-pdit, "
      "family, recurrence, squeezed-recurrence, npt-candidate, random-keyed)");
  std::string gen_name, gen_out;
  double gp = 0.3;
  long gd = 2, gk = 1, gm = 2, gshield = 2, gdA = 2, gdB = 2, gdAp = 2,
       gdBp = 2;
  gen->add_option("name", gen_name, "state name")->required();
  gen->add_option("--out", gen_out, "output file")->required();
  CLI::Option* op = gen->add_option("--p", gp, "mixing parameter");
  CLI::Option* od = gen->add_option("--d", gd, "local dimension");
  CLI::Option* ok = gen->add_option("--k", gk, "hiding tensor power");
  CLI::Option* om = gen->add_option("--m", gm, "accumulated rounds");
  CLI::Option* os = gen->add_option("--shield-dim", gshield, "shield dimension");
  CLI::Option* odA = gen->add_option("--dA", gdA, "key dimension A");
  CLI::Option* odB = gen->add_option("--dB", gdB, "key dimension B");
  CLI::Option* odAp = gen->add_option("--dAp", gdAp, "shield dimension A'");
  CLI::Option* odBp = gen->add_option("--dBp", gdBp, "shield dimension B'");

  auto* analyze = app.add_subcommand("analyze", "report on a state file");
  std::string analyze_in, analyze_out;
  analyze->add_option("file", analyze_in, "matrix JSON file")->required();
  analyze->add_option("--out", analyze_out, "write the report here");

  auto* ccq = app.add_subcommand(
      "ccq", "measured-outcome ensemble with the environment as adversary");
  std::string ccq_in, ccq_out;
  ccq->add_option("file", ccq_in, "matrix JSON file")->required();
  ccq->add_option("--out", ccq_out, "write the ensemble here");

  auto* sweep = app.add_subcommand("family-sweep", "CSV over a parameter grid");
  std::vector<double> sp{0.3};
  std::vector<long> sd{2}, sk{1}, sm{1};
  std::string sweep_out;
  sweep->add_option("--p", sp, "mixing parameters")->delimiter(',');
  sweep->add_option("--d", sd, "local dimensions")->delimiter(',');
  sweep->add_option("--k", sk, "hiding tensor powers")->delimiter(',');
  sweep->add_option("--m", sm, "accumulated rounds")->delimiter(',');
  sweep->add_option("--out", sweep_out, "write the CSV here");

  auto* rates = app.add_subcommand("rates", "rate report on a state file");
  std::string rates_in, rates_out, rates_construction;
  rates->add_option("file", rates_in, "matrix JSON file")->required();
  rates->add_option("--construction", rates_construction,
                    "gamma-v, flower, or basic-pdit: enables the certified "
                    "upper bound");
  rates->add_option("--out", rates_out, "write the report here");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  bool verify_json = false;
  verify->add_flag("--json", verify_json, "print the full JSON report");

  auto* demo = app.add_subcommand("pqc-demo", "controlled key demo");
  long demo_d = 2, demo_k = 1;
  demo->add_option("--d", demo_d, "local dimension");
  demo->add_option("--k", demo_k, "hiding tensor power");

  CLI11_PARSE(app, argc, argv);

  pqs_options opt = g.options();

  if (gen->parsed()) {
    nlohmann::json params;
    if (op->count()) params["p"] = gp;
    if (od->count()) params["d"] = gd;
    if (ok->count()) params["k"] = gk;
    if (om->count()) params["m"] = gm;
    if (os->count()) params["shield_dim"] = gshield;
    if (odA->count()) params["dA"] = gdA;
    if (odB->count()) params["dB"] = gdB;
    if (odAp->count()) params["dAp"] = gdAp;
    if (odBp->count()) params["dBp"] = gdBp;
    StateGuard state;
    pqs_status s = pqs_state_gen(gen_name.c_str(), params.dump().c_str(), &opt,
                                 &state.s);
    if (s != PQS_OK) return report_error(s);
    s = pqs_state_save(state.s, gen_out.c_str());
    if (s != PQS_OK) return report_error(s);
    std::cerr << "wrote " << gen_out << " (dimension "
              << pqs_state_dim(state.s) << ")\n";
    return 0;
  }

  if (analyze->parsed()) {
    StateGuard state;
    pqs_status s = pqs_state_load(analyze_in.c_str(), &state.s);
    if (s != PQS_OK) return report_error(s);
    StringGuard text;
    s = pqs_analyze(state.s, &opt, &text.s);
    if (s != PQS_OK) return report_error(s);
    return emit(text.s, analyze_out);
  }

  if (ccq->parsed()) {
    StateGuard state;
    pqs_status s = pqs_state_load(ccq_in.c_str(), &state.s);
    if (s != PQS_OK) return report_error(s);
    StringGuard text;
    s = pqs_ccq(state.s, &opt, &text.s);
    if (s != PQS_OK) return report_error(s);
    return emit(text.s, ccq_out);
  }

  if (sweep->parsed()) {
    StringGuard text;
    pqs_status s = pqs_family_sweep_csv(
        sp.data(), static_cast<long>(sp.size()), sd.data(),
        static_cast<long>(sd.size()), sk.data(), static_cast<long>(sk.size()),
        sm.data(), static_cast<long>(sm.size()), &opt, &text.s);
    if (s != PQS_OK) return report_error(s);
    std::string csv = text.s;
    if (!csv.empty() && csv.back() == '\n') csv.pop_back();
    return emit(csv, sweep_out);
  }

  if (rates->parsed()) {
    StateGuard state;
    pqs_status s = pqs_state_load(rates_in.c_str(), &state.s);
    if (s != PQS_OK) return report_error(s);
    StringGuard text;
    s = pqs_rates(state.s, rates_construction.c_str(), &opt, &text.s);
    if (s != PQS_OK) return report_error(s);
    return emit(text.s, rates_out);
  }

  if (verify->parsed()) {
    StringGuard text;
    int all_passed = 0;
    pqs_status s = pqs_verify(g.seed, g.tol, &text.s, &all_passed);
    if (s != PQS_OK) return report_error(s);
    if (verify_json) {
      std::cout << text.s << "\n";
    } else {
      nlohmann::json j = nlohmann::json::parse(text.s);
      for (const auto& group : j["groups"])
        std::cout << "group " << group["name"].get<std::string>() << ": "
                  << group["passed"].get<long>() << "/"
                  << group["total"].get<long>() << " checks passed\n";
      std::cout << (all_passed ? "all groups passed" : "FAILED") << "\n";
    }
    return all_passed ? 0 : 1;
  }

  if (demo->parsed()) {
    StringGuard text;
    pqs_status s = pqs_pqc_demo(demo_d, demo_k, &opt, &text.s);
    if (s != PQS_OK) return report_error(s);
    std::cout << text.s;
    return 0;
  }

  return 0;
}
