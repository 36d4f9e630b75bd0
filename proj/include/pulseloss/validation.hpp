#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pulseloss {

struct CheckResult {
  std::string id;     ///< "1", "3a", ...
  std::string group;  ///< closed-form | abel | tdelta | fdtd
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  /// Group name or check id; empty runs everything.
  std::optional<std::string> only;
  /// Relative error injected into t_sigma on one side of the cross-path
  /// comparisons (sensitivity hook).
  double t_sigma_perturbation = 0.0;
};

/// Names accepted by ValidationOptions::only.
std::vector<std::string> validation_groups();

/// Runs the acceptance checks; `progress` sees each result as it finishes.
std::vector<CheckResult> run_validation(
    const ValidationOptions& options = {},
    const std::function<void(const CheckResult&)>& progress = {});

nlohmann::json to_json(const CheckResult& r);

/// One line: "PASS 3a  <name>  measured=... threshold=...  (<detail>)".
std::string format_line(const CheckResult& r);

}  // namespace pulseloss
