#pragma once

#include <filesystem>
#include <istream>
#include <vector>

namespace mrisk::basel {

inline constexpr std::size_t kHistoryDays = 60;

/// Inputs of the "usual conditions" market-risk capital charge.
struct BaselInput {
  /// Today's VaR.
  double var0 = 0.0;
  /// VaR of the previous 60 days, most recent first (day -1 .. -60).
  std::vector<double> history;
  /// Regulatory multiplier, 3 <= lambda <= 4.
  double lambda = 3.0;

  /// ValidationError naming the failed check ("history length", "positivity", "multiplier").
  void validate() const;
};

/// max{var0, lambda * mean(history)}.
double capital_charge(const BaselInput& input);

/// Reads the `day,var` CSV: a `0,` row for today and rows -1..-60 in any order.
BaselInput ingest_history(std::istream& in, double lambda = 3.0);
BaselInput ingest_history(const std::filesystem::path& path, double lambda = 3.0);

}  // namespace mrisk::basel
