#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wtf {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> failures;  // one entry per failed check
  std::string summary;                // measured values
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

// Runs one numbered criterion of the acceptance battery on the reference models.
CriterionResult run_criterion(int id);

// Runs the given criteria (all when empty), calling `progress` after each.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& progress = {});

// "PASS 3 nonlinear_pressure: ..." (with the runtime when with_time is set).
std::string format_result(const CriterionResult& r, bool with_time = true);

}  // namespace wtf
