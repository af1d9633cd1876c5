// Acceptance suite: one self-contained check per criterion, each printing a
// pass/fail line. Shared by the standalone test binary and the CLI selftest.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dropwave {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every criterion; prints "[ k/15] PASS|FAIL name (detail)" to `progress`
// as results arrive. Returns all results.
std::vector<CriterionResult> run_acceptance(std::ostream& progress);

}  // namespace dropwave
