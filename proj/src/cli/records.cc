#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hfc/cli.h"

namespace hfc::cli {

namespace {

std::string format_fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

template <class T>
T parse_number(const std::string& field) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("malformed number '" + field + "'");
  }
  return value;
}

double parse_double(const std::string& field) {
  std::size_t used = 0;
  const double value = std::stod(field, &used);
  if (used != field.size()) throw std::invalid_argument("malformed number '" + field + "'");
  return value;
}

}  // namespace

std::string csv_header() {
  return "instance,algorithm,seed,epsilon,cut,block0,block1,imbalance,initial_cut,wall_time,status";
}

std::string csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.instance << ',' << r.algorithm << ',' << r.seed << ',' << r.epsilon << ',';
  if (r.cut) out << *r.cut;
  out << ',' << r.block0 << ',' << r.block1 << ',' << format_fixed(r.imbalance) << ',';
  if (r.initial_cut) out << *r.initial_cut;
  out << ',';
  if (r.wall_time) out << format_fixed(*r.wall_time);
  out << ',' << r.status;
  return out.str();
}

RunRecord parse_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  if (fields.size() != 11) throw std::invalid_argument("expected 11 fields: " + line);

  RunRecord r;
  r.instance = fields[0];
  r.algorithm = fields[1];
  r.seed = parse_number<std::uint64_t>(fields[2]);
  r.epsilon = fields[3];
  if (!fields[4].empty()) r.cut = parse_number<std::uint32_t>(fields[4]);
  r.block0 = parse_number<std::uint32_t>(fields[5]);
  r.block1 = parse_number<std::uint32_t>(fields[6]);
  r.imbalance = parse_double(fields[7]);
  if (!fields[8].empty()) r.initial_cut = parse_number<std::uint32_t>(fields[8]);
  if (!fields[9].empty()) r.wall_time = parse_double(fields[9]);
  r.status = fields[10];
  return r;
}

bool is_valid(const RunRecord& record) {
  return record.cut && (record.status == "ok" || record.status == "zero-cut-preprocessing");
}

std::vector<std::pair<std::string, std::optional<std::uint32_t>>> best_cuts(
    std::span<const RunRecord> records) {
  std::map<std::string, std::optional<std::uint32_t>> best;
  for (const RunRecord& r : records) {
    auto& slot = best[r.instance];
    if (is_valid(r) && (!slot || *r.cut < *slot)) slot = r.cut;
  }
  return {best.begin(), best.end()};
}

std::vector<RatioRow> performance_ratios(std::span<const RunRecord> records) {
  std::map<std::string, std::optional<std::uint32_t>> best;
  for (const auto& [instance, cut] : best_cuts(records)) best[instance] = cut;

  // Minimum valid cut per (algorithm, instance) over all seeds.
  std::map<std::pair<std::string, std::string>, std::optional<std::uint32_t>> per_algorithm;
  for (const RunRecord& r : records) {
    auto& slot = per_algorithm[{r.algorithm, r.instance}];
    if (is_valid(r) && (!slot || *r.cut < *slot)) slot = r.cut;
  }

  std::vector<RatioRow> rows;
  for (const auto& [key, cut] : per_algorithm) {
    RatioRow row{key.first, key.second, kInvalidRatio};
    const auto& reference = best[key.second];
    if (cut && reference) {
      if (*reference == 0) {
        row.ratio = *cut == 0 ? 0.0 : 1.0;
      } else {
        row.ratio = 1.0 - static_cast<double>(*reference) / static_cast<double>(*cut);
      }
    }
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RatioRow& a, const RatioRow& b) {
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    if (a.ratio != b.ratio) return a.ratio < b.ratio;
    return a.instance < b.instance;
  });
  return rows;
}

std::vector<std::pair<std::string, double>> geometric_mean_times(
    std::span<const RunRecord> records) {
  std::map<std::pair<std::string, std::string>, std::pair<double, std::uint32_t>> sums;
  for (const RunRecord& r : records) {
    if (!r.wall_time) continue;
    auto& [total, count] = sums[{r.algorithm, r.instance}];
    total += *r.wall_time;
    ++count;
  }
  std::map<std::string, std::pair<double, std::uint32_t>> logs;
  for (const auto& [key, value] : sums) {
    const double mean = std::max(value.first / value.second, 1e-6);
    auto& [log_sum, count] = logs[key.first];
    log_sum += std::log(mean);
    ++count;
  }
  std::vector<std::pair<std::string, double>> result;
  for (const auto& [algorithm, value] : logs) {
    result.emplace_back(algorithm, std::exp(value.first / value.second));
  }
  return result;
}

}  // namespace hfc::cli
