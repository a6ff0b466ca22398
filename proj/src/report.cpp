#include "antimap/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace antimap {

namespace {

double round_significant(double v, int digits) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string csv_number(double v) {
  // Shortest representation that round-trips, as in the JSON output.
  return nlohmann::json(v).dump();
}

}  // namespace

void Report::check(const std::string& name, double value, double threshold) {
  checks.push_back({name, value, threshold, std::isfinite(value) && value <= threshold});
}

void Report::fidelity(const std::string& name, double value) {
  fidelities[name] = round_significant(value, 15);
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::finalize() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.name < b.name; });
}

nlohmann::json Report::to_json(bool include_timing) const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config;
  j["fidelities"] = fidelities;
  j["values"] = values;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& c : checks) {
    table.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  j["checks"] = std::move(table);
  j["all_pass"] = all_pass();
  j["warnings"] = warnings;
  if (!payloads.empty()) j["payloads"] = payloads;
  if (include_timing) j["wall_clock_ms"] = wall_clock_ms;
  return j;
}

std::string Report::to_csv(bool include_timing) const {
  std::ostringstream os;
  os << "kind,name,value,threshold,pass\n";
  os << "command," << command << ",,,\n";
  for (const auto& [name, v] : fidelities.items()) os << "fidelity," << name << ',' << v.dump() << ",,\n";
  for (const auto& [name, v] : values.items()) {
    std::string text = v.dump();
    if (v.is_string()) text = '"' + v.get<std::string>() + '"';
    os << "value," << name << ',' << text << ",,\n";
  }
  for (const auto& c : checks) {
    os << "check," << c.name << ',' << csv_number(c.value) << ',' << csv_number(c.threshold) << ','
       << (c.pass ? "pass" : "fail") << '\n';
  }
  for (const auto& w : warnings) os << "warning,\"" << w << "\",,,\n";
  for (const auto& [name, payload] : payloads.items()) {
    auto emit = [&](const nlohmann::json& m, const std::string& label) {
      const auto cols = m.at("cols").get<std::size_t>();
      const auto& data = m.at("data");
      for (std::size_t idx = 0; idx < data.size(); ++idx) {
        os << "matrix," << label << '[' << idx / cols << ';' << idx % cols << "]," << data[idx][0].dump()
           << ',' << data[idx][1].dump() << ",\n";
      }
    };
    if (payload.is_array()) {
      for (std::size_t k = 0; k < payload.size(); ++k) emit(payload[k], name + "#" + std::to_string(k));
    } else {
      emit(payload, name);
    }
  }
  if (include_timing) os << "wall_clock_ms,," << csv_number(wall_clock_ms) << ",,\n";
  return os.str();
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument("matrix_from_json: data length does not match rows*cols");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) {
      const auto& entry = data[static_cast<std::size_t>(i * cols + j2)];
      m(i, j2) = complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

nlohmann::json vector_to_json(const Vector& v) { return matrix_to_json(Matrix(v)); }

}  // namespace antimap
