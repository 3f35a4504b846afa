// One line per acceptance criterion; exits 1 if any fails.
#include <cstdio>

#include "stochalc/checks.hpp"

using namespace stochalc;

int main() {
  checks::CheckConfig cfg;
  std::printf("threads: %d\n", par::threads());
  bool ok = true;
  for (const auto& r : checks::check_all(cfg)) {
    std::string timing = r.limit > 0 ? " [" + std::to_string(r.seconds) + "s, limit " + std::to_string(static_cast<int>(r.limit)) + "s]"
                                     : " [" + std::to_string(r.seconds) + "s]";
    if (!r.within_limit()) timing += " over time limit";
    std::printf("%s criterion %s (%s): %s%s\n", r.pass() ? "PASS" : "FAIL", r.id.c_str(), r.name.c_str(),
                r.summary.c_str(), timing.c_str());
    std::fflush(stdout);
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}
