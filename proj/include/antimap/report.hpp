#pragma once

#include "antimap/linalg.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace antimap {

/// One named residual compared against its threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json fidelities = nlohmann::json::object();
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json payloads = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  double wall_clock_ms = 0.0;

  /// Records residual <= threshold under `name`.
  void check(const std::string& name, double value, double threshold);

  /// Rounds to 15 significant digits before storing.
  void fidelity(const std::string& name, double value);

  bool all_pass() const;

  /// Sorts checks by name.
  void finalize();

  nlohmann::json to_json(bool include_timing = true) const;
  std::string to_csv(bool include_timing = true) const;
};

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// Column vector as a cols = 1 matrix payload.
nlohmann::json vector_to_json(const Vector& v);

}  // namespace antimap
