// Standalone acceptance binary: runs every criterion at its pinned tolerance
// and prints one pass/fail line each. Exit status reflects the worst result.

#include <iostream>

#include "dropwave/acceptance.hpp"

int main() {
  auto results = dropwave::run_acceptance(std::cout);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}
