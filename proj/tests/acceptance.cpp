// One line per acceptance criterion; exit status 0 iff every criterion
// passes. The full measurements go to acceptance_report.json in the working
// directory.
#include "pseudocyl/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

int main() {
  using namespace pseudocyl;
  const auto start = std::chrono::steady_clock::now();
  auto clock = start;
  const auto results = acceptance::run_all({}, [&clock](const acceptance::CriterionResult& r) {
    const auto now = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(now - clock).count();
    clock = now;
    std::printf("%-45s (%.1fs)\n", acceptance::summary_line(r).c_str(), secs);
    if (!r.passed) std::printf("      %s\n", r.measurements.dump().c_str());
    std::fflush(stdout);
  });
  std::ofstream("acceptance_report.json") << io::dump(acceptance::to_json(results));
  const bool ok = acceptance::all_passed(results);
  std::printf("%s (%.1fs total)\n", ok ? "ALL PASS" : "FAILURES",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return ok ? 0 : 1;
}
