#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "logcoef/catalog.hpp"
#include "logcoef/report.hpp"

namespace logcoef::cli {

enum class Command { kGamma, kBounds, kVerify, kSearch, kSweep, kMembership };
enum class Format { kText, kJson, kCsv };

// Exit-status contract: 0 success, 1 a check failed, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::kGamma;
  std::optional<std::string> class_letter;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<std::string> function;
  double theta = 0.0;
  std::optional<int> order;
  std::optional<int> resolution;
  std::vector<double> radii;
  int angular = 256;
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  Format format = Format::kText;
  std::optional<std::string> out_path;
  bool parallel = false;
  bool all = false;
  double step = 0.05;
  double alpha_max = 5.0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (argv[0] is the program name). Throws UsageError whose
/// message includes the help text; `--help` sets `help_requested`.
RunConfig parse_args(const std::vector<std::string>& args, bool* help_requested = nullptr,
                     std::string* help_text = nullptr);

/// Executes a parsed configuration, writing the report to `out` (or the
/// --out file) and diagnostics to `err`. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-status contract applied to every failure.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rows of the class sweep: param, bound_lower, bound_upper, search_min,
/// search_max. U and G run over (0, 1], M over [0, alpha_max] with the
/// lower-bound breakpoint inserted.
CsvTable emit_sweep(const std::string& class_letter, double step, int resolution, double alpha_max = 5.0,
                    bool parallel = false);

}  // namespace logcoef::cli
