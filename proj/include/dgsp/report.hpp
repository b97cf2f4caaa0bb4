#pragma once

#include <string>
#include <vector>

namespace dgsp {

struct Violation {
  std::string context;
  double magnitude = 0.0;
};

/// Outcome of a verification harness: not an exception, a result.
struct Report {
  std::string name;
  bool pass = true;
  std::size_t checks = 0;
  double max_violation = 0.0;
  std::vector<Violation> violations;
  std::string notes;

  void record(bool ok, double magnitude, const std::string& context) {
    ++checks;
    if (magnitude > max_violation) max_violation = magnitude;
    if (!ok) {
      pass = false;
      violations.push_back({context, magnitude});
    }
  }
};

}  // namespace dgsp
