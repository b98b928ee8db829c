#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pqs/family.hpp"
#include "pqs/report.hpp"
#include "pqs/states.hpp"
#include "pqs/sweep.hpp"

using namespace pqs;
using nlohmann::json;

TEST_CASE("sweep rows agree across closed and dense routes") {
  std::vector<SweepRow> rows = family_sweep({0.3}, {2}, {1, 2}, {1, 2});
  REQUIRE(rows.size() == 4);
  for (const SweepRow& r : rows) {
    CHECK_FALSE(r.skipped);
    CHECK(std::abs(r.block_norm_formula - r.block_norm_numeric) <= 1e-8);
    CHECK(r.ppt_analytic == (r.min_eig_pt >= -1e-10));
    if (r.m == 1) CHECK(r.success_prob == 1.0);
  }
  CHECK(rows[0].k == 1);
  CHECK(rows[2].k == 2);
  CHECK(rows[1].m == 2);
  CHECK(rows[3].block_norm_formula > rows[1].block_norm_formula);
}

TEST_CASE("sweep csv format is stable") {
  std::vector<SweepRow> rows = family_sweep({0.25}, {2}, {1, 3}, {2});
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].skipped);
  CHECK(rows[1].skipped);

  std::string csv = sweep_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "p,d,k,m,ppt_analytic,min_eig_pt,block_norm_formula,"
        "block_norm_numeric,success_prob,dw_rate");
  std::string line1, line2;
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(line1.substr(0, 11) == "0.25,2,1,2,");
  CHECK(line1.find("skipped") == std::string::npos);
  CHECK(line2.find("skipped") != std::string::npos);
  std::string extra;
  CHECK_FALSE(std::getline(in, extra));
}

TEST_CASE("analysis report on a named key state") {
  json j = json::parse(analyze_report_json(gamma_V(2)));
  CHECK(j["valid"].get<bool>());
  CHECK(j["dims"] == json({2, 2, 2, 2}));
  CHECK(j["hermiticity_residual"].get<double>() < 1e-12);
  CHECK(std::abs(j["trace"].get<double>() - 1.0) < 1e-9);
  CHECK(j["min_eigenvalue"].get<double>() > -1e-10);
  CHECK_FALSE(j["ppt"].get<bool>());
  CHECK(std::abs(j["log_negativity"].get<double>() - 0.5849625007211562) <
        1e-9);
  CHECK(std::abs(j["block_norm"].get<double>() - 0.5) < 1e-9);
  CHECK(std::abs(j["dw_rate"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(j["dw_rate_squeezed"].get<double>() - 1.0) < 1e-9);
  CHECK(j["squeezed"]["dims"] == json({2, 2}));
  CHECK(j["ccq"]["holevo"].get<double>() < 1e-9);

  json fam = json::parse(analyze_report_json(family_state(0.2, 2, 1)));
  CHECK(fam["ppt"].get<bool>());
}

TEST_CASE("analysis report flags invalid input") {
  DensityMatrix bad{Mat::Identity(4, 4) * 2.0, {{2, 2}, {"A", "B"}},
                    kDefaultTol};
  json j = json::parse(analyze_report_json(bad));
  CHECK_FALSE(j["valid"].get<bool>());
  CHECK(std::abs(j["trace"].get<double>() - 8.0) < 1e-9);
  CHECK_FALSE(j.contains("dw_rate"));
  CHECK(j["notes"].get<std::string>().find("not a density matrix") !=
        std::string::npos);
}

TEST_CASE("rate report with certified constructions") {
  json j = json::parse(rate_report_json(gamma_V(2), "gamma-v"));
  CHECK(j["er_upper_known"].get<bool>());
  CHECK(j["er_upper"].get<double>() == 1.0);
  CHECK(std::abs(j["dw_rate"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(j["log_negativity"].get<double>() - 0.5849625007211562) <
        1e-9);
  CHECK(j["log_negativity"].get<double>() < j["er_upper"].get<double>());
  CHECK(j["er_lower_witness"].get<double>() >= 0.99);
  CHECK(j["notes"].get<std::string>().find("sampled") != std::string::npos);

  json fl = json::parse(rate_report_json(flower(2), "flower"));
  CHECK(fl["er_upper_known"].get<bool>());
  CHECK(fl["er_upper"].get<double>() == 1.0);

  DensityMatrix sigma{Mat::Identity(2, 2) / 2.0, SystemLayout::single(2, "A'"),
                      kDefaultTol};
  json pd = json::parse(rate_report_json(basic_pdit(3, sigma), "basic-pdit"));
  CHECK(pd["er_upper_known"].get<bool>());
  CHECK(std::abs(pd["er_upper"].get<double>() - 1.5849625007211562) < 1e-9);

  json mis = json::parse(rate_report_json(family_state(0.3, 2, 1), "gamma-v"));
  CHECK_FALSE(mis["er_upper_known"].get<bool>());
  CHECK(mis["notes"].get<std::string>().find("upper bound unavailable") !=
        std::string::npos);

  json unk = json::parse(rate_report_json(gamma_V(2), "mystery"));
  CHECK_FALSE(unk["er_upper_known"].get<bool>());
}

TEST_CASE("demo text and verification report") {
  std::string text = pqc_demo_text(2, 1);
  CHECK(text.find("probability 0.5 key fidelity 1") != std::string::npos);
  CHECK(text.find("controller state overlap 0") != std::string::npos);
  CHECK(text.find("premeasure key ppt true") != std::string::npos);

  bool ok = false;
  json v = json::parse(verify_report_json(3, 1e-10, &ok));
  CHECK(ok);
  CHECK(v["all_passed"].get<bool>());
  CHECK(v["groups"].size() == 6);
  bool bad = true;
  json vb = json::parse(verify_report_json(3, 1e-30, &bad));
  CHECK_FALSE(bad);
  CHECK_FALSE(vb["all_passed"].get<bool>());
}
