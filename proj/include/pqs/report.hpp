#pragma once

#include <string>

#include "pqs/linalg.hpp"

namespace pqs {

// Scalars rounded to 12 significant digits; embedded matrices full precision.
std::string analyze_report_json(const DensityMatrix& rho,
                                const Options& opt = {});

// construction: "", "gamma-v", "flower", or "basic-pdit"; a nonempty value
// turns on the distillation upper bound, certified against the actual state.
std::string rate_report_json(const DensityMatrix& rho,
                             const std::string& construction,
                             const Options& opt = {});

std::string verify_report_json(std::uint64_t seed, double tol,
                               bool* all_passed = nullptr);

std::string pqc_demo_text(long d, long k, const Options& opt = {});

}  // namespace pqs
