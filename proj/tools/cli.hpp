#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modelrisk/errors.hpp"

namespace mrisk::cli {

/// Bad flags, bad JSON config or inconsistent settings. Maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { Curves, MomentClass, Local, MixtureSweep, OracleCheck, Basel };

struct RunConfig {
  Command command = Command::Curves;
  double alpha_min = 0.001;
  double alpha_max = 0.10;
  int alpha_steps = 400;
  /// Single level; replaces the grid when set.
  std::optional<double> alpha;
  /// "normal", "student-t" or "both".
  std::string reference = "both";
  double nu = 3.0;
  /// "var", "es" or "both".
  std::string measure = "both";
  /// Bound kind for `curves` ("chebyshev-var", ..., or "all").
  std::string kind = "all";
  /// "kolmogorov", "levy" or "mixture".
  std::string family = "mixture";
  std::vector<double> radii{0.1, 0.01, 0.001};
  std::size_t p_grid = 100000;
  std::filesystem::path history;
  double lambda = 3.0;
  std::optional<std::filesystem::path> output;
  bool paper_literal = false;

  /// The alpha values to evaluate, ascending.
  std::vector<double> alphas() const;
  void validate() const;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 9 significant digits, '.' separator, independent of the locale.
std::string format_number(double v);
std::string to_csv(const Table& table);

/// Evaluates the command. Rows come out in ascending alpha order.
Table run_command(const RunConfig& config);

/// Parses argv (flags override a JSON file given by --config).
RunConfig parse_args(int argc, const char* const* argv);

/// Writes next to `path` and renames over it, so readers never see a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Thread cap from MODELRISK_THREADS (default: hardware concurrency).
unsigned thread_cap();

/// Full program: 0 success, 2 config error, 3 numeric failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mrisk::cli
