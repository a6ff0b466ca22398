#pragma once

#include "antimap/report.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace antimap::cli {

/// Invalid flag values; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Finite, Dilate, Cv, Verify };
enum class OutputFormat { Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::Finite;
  int dim = 2;
  int cutoff = 20;
  std::string seed_spec = "vacuum";
  double tolerance = 1e-10;
  int samples = 50;
  std::uint64_t rng_seed = 1;
  std::set<std::string> emit;
  OutputFormat output_format = OutputFormat::Json;
  std::optional<std::string> output_path;
  bool strict = false;

  /// Throws UsageError when an invariant on the fields is violated.
  void validate() const;
};

Report run_finite(const RunConfig& cfg);
Report run_dilate(const RunConfig& cfg);
Report run_cv(const RunConfig& cfg);
Report run_verify(const RunConfig& cfg);

/// Dispatches on cfg.command.
Report run(const RunConfig& cfg);

/// Exit code implied by a finished report.
int exit_code(const Report& report, const RunConfig& cfg);

std::string render(const Report& report, OutputFormat format, bool include_timing = true);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace antimap::cli
