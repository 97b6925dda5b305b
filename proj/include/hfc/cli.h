#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hfc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kTimeout = 2, kInfeasible = 3 };

struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::string epsilon;
  std::optional<std::uint32_t> cut;
  std::uint32_t block0 = 0;
  std::uint32_t block1 = 0;
  double imbalance = 0;
  std::optional<std::uint32_t> initial_cut;
  std::optional<double> wall_time;
  std::string status;
};

std::string csv_header();
std::string csv_row(const RunRecord& record);
/// Inverse of csv_row; throws std::invalid_argument on a malformed row.
RunRecord parse_csv_row(const std::string& line);

/// Statuses whose cut counts as a valid solution.
bool is_valid(const RunRecord& record);

struct RatioRow {
  std::string algorithm;
  std::string instance;
  double ratio = 0;
};

inline constexpr double kInvalidRatio = 2.0;

/// Per instance and algorithm: 1 - best / algorithm over the minimum cut of
/// each algorithm across seeds; 0 or 1 on zero-cut instances, kInvalidRatio if
/// the algorithm has no valid run. Sorted by algorithm, then ratio, then
/// instance.
std::vector<RatioRow> performance_ratios(std::span<const RunRecord> records);

/// Minimum valid cut per instance, sorted by instance.
std::vector<std::pair<std::string, std::optional<std::uint32_t>>> best_cuts(
    std::span<const RunRecord> records);

/// Geometric mean over instances of the mean wall time per instance, per
/// algorithm. Records without a wall time are skipped.
std::vector<std::pair<std::string, double>> geometric_mean_times(
    std::span<const RunRecord> records);

/// Entry point of the command-line tool; args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hfc::cli
