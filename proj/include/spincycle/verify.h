#pragma once

#include <string>
#include <vector>

namespace spincycle {

// One measured invariant: `value` must stay below `threshold`.
struct CheckLine {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string name;
  std::vector<CheckLine> checks;
  bool pass = false;
};

// Invariant suites shared by the CLI `verify` command and the tests.
SuiteReport verify_phases();
SuiteReport verify_gates();
SuiteReport verify_darkstates();
SuiteReport verify_multiloop();
std::vector<SuiteReport> verify_all();

}  // namespace spincycle
