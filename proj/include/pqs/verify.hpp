#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pqs {

struct VerifyCheck {
  std::string name;
  bool passed = false;
};

struct VerifyGroup {
  std::string name;
  std::vector<VerifyCheck> checks;

  long passed() const;
  long total() const { return static_cast<long>(checks.size()); }
  bool ok() const { return passed() == total(); }
};

struct VerifyReport {
  std::vector<VerifyGroup> groups;

  bool all_passed() const;
};

// Runs every module's invariant checks with seeded randomness. Comparisons
// scale with tol, so an unattainable tolerance makes the suite fail.
VerifyReport run_verify(std::uint64_t seed, double tol);

}  // namespace pqs
