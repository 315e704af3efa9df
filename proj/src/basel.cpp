#include "modelrisk/basel.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "modelrisk/errors.hpp"

namespace mrisk::basel {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(field) + "'", line);
  }
  return value;
}

}  // namespace

void BaselInput::validate() const {
  if (history.size() != kHistoryDays) {
    throw ValidationError("history length must be 60, got " + std::to_string(history.size()));
  }
  if (!(var0 > 0.0) || !std::isfinite(var0)) throw ValidationError("positivity: var0 must be > 0");
  for (double v : history) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("positivity: every history VaR must be > 0");
    }
  }
  if (!(lambda >= 3.0 && lambda <= 4.0)) throw ValidationError("multiplier must lie in [3,4]");
}

double capital_charge(const BaselInput& input) {
  input.validate();
  const double sum = std::accumulate(input.history.begin(), input.history.end(), 0.0);
  return std::max(input.var0, input.lambda / static_cast<double>(kHistoryDays) * sum);
}

BaselInput ingest_history(std::istream& in, double lambda) {
  std::string raw;
  std::size_t line = 0;
  if (!std::getline(in, raw)) throw ParseError("empty file", 1);
  ++line;
  if (trim(raw) != "day,var") throw ParseError("header must be 'day,var'", line);

  std::optional<double> var0;
  std::vector<std::optional<double>> days(kHistoryDays);
  std::size_t extra = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto row = trim(raw);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("expected two fields 'day,var'", line);
    }
    const int day = parse_number<int>(row.substr(0, comma), line, "day");
    const double var = parse_number<double>(row.substr(comma + 1), line, "var");
    if (day == 0) {
      if (var0) throw ParseError("duplicate day 0", line);
      var0 = var;
    } else if (day < 0 && day >= -static_cast<int>(kHistoryDays)) {
      auto& slot = days[static_cast<std::size_t>(-day - 1)];
      if (slot) throw ParseError("duplicate day " + std::to_string(day), line);
      slot = var;
    } else if (day < 0) {
      ++extra;
    } else {
      throw ParseError("day must be an offset in -60..0", line);
    }
  }
  if (!var0) throw ValidationError("missing day 0 row (today's VaR)");

  BaselInput input;
  input.var0 = *var0;
  input.lambda = lambda;
  for (const auto& d : days) {
    if (d) input.history.push_back(*d);
  }
  if (extra > 0 || input.history.size() != kHistoryDays) {
    throw ValidationError("history length must be 60, got " +
                          std::to_string(input.history.size() + extra));
  }
  input.validate();
  return input;
}

BaselInput ingest_history(const std::filesystem::path& path, double lambda) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return ingest_history(in, lambda);
}

}  // namespace mrisk::basel
