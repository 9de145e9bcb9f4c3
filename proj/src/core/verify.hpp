#pragma once

#include <string>
#include <vector>

namespace gridohm {

/// One verification check. `pass` is authoritative; expected/computed/tolerance
/// describe the comparison for the report (bound-style checks put the limit in
/// `tolerance` and 0 in `expected`).
struct CheckResult {
  std::string group;
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::string only;                 // run a single group; empty runs everything
  std::string profile = "default";  // "default" or "quick"
  int threads = 0;
};

struct VerifyReport {
  std::string profile;
  std::vector<CheckResult> checks;
  int failed = 0;
};

/// Check groups in execution order ("--only" accepts any of these).
std::vector<std::string> verify_groups();

VerifyReport run_verify(const VerifyOptions& opts = {});

/// Deterministic renderings; no timing fields, identical runs yield identical
/// bytes.
std::string verify_report_json(const VerifyReport& rep);
std::string verify_report_text(const VerifyReport& rep);

}  // namespace gridohm
