// One line per acceptance criterion; exit status is the number of failures.
#include <cstdio>

#include "k3even/verify.hpp"

int main() {
  using namespace k3even::verify;
  int failed = 0;
  for (const auto& r : run_all({})) {
    bool ok = r.passed && r.within_budget();
    failed += !ok;
    std::printf("criterion %d %s  %-58s %.3fs / %.0fs  %s\n", r.id, ok ? "PASS" : "FAIL", r.title.c_str(), r.seconds, r.budget_seconds,
                r.computed.c_str());
    for (const auto& f : r.failures) std::printf("    failure: %s\n", f.c_str());
    if (r.passed && !r.within_budget()) std::printf("    over the time budget\n");
    for (const auto& n : r.notes) std::printf("    note: %s\n", n.c_str());
  }
  return failed;
}
