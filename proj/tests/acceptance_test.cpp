// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
// Run a single criterion with --criterion N, or everything with no arguments.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* title;
  std::vector<const char*> groups;
};

const std::vector<Criterion> kCriteria = {
    {1, "square-octagon resistances", {"square-octagon"}},
    {2, "kagome resistances", {"kagome"}},
    {3, "dice resistances", {"dice"}},
    {4, "decorated-square resistances", {"decorated"}},
    {5, "centered-square resistances", {"centered-square"}},
    {6, "snub-square resistances", {"snub-square"}},
    {7, "bcc resistances", {"bcc"}},
    {8, "classic lattice values", {"classics"}},
    {9, "chain closed form", {"chain"}},
    {10, "mapping identities", {"appendix"}},
    {11, "structural property suite", {"properties", "determinants"}},
    {12, "finite-torus oracle coherence", {"oracles"}},
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }

  int total_failed = 0;
  for (const auto& c : kCriteria) {
    if (selected != 0 && c.number != selected) continue;
    int checks = 0;
    int failed = 0;
    std::string error;
    for (const char* group : c.groups) {
      try {
        gridohm::VerifyOptions opts;
        opts.only = group;
        const auto rep = gridohm::run_verify(opts);
        checks += static_cast<int>(rep.checks.size());
        failed += rep.failed;
      } catch (const std::exception& e) {
        error = e.what();
        ++failed;
      }
    }
    total_failed += failed;
    if (!error.empty()) {
      std::printf("[FAIL] criterion %d: %s (error: %s)\n", c.number, c.title, error.c_str());
    } else {
      std::printf("[%s] criterion %d: %s (%d/%d checks)\n", failed == 0 ? "PASS" : "FAIL",
                  c.number, c.title, checks - failed, checks);
    }
    std::fflush(stdout);
  }
  return total_failed == 0 ? 0 : 1;
}
