#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hfc/cutter.h"
#include "hfc/hypergraph.h"
#include "hfc/ratio.h"

namespace hfc {

/// Wall-clock deadline plus an optional cap on cutter iterations. The step cap
/// gives tests a deterministic way to run out of time.
class Budget {
 public:
  Budget() = default;

  static Budget with_time_limit(double seconds);
  static Budget with_max_steps(std::uint64_t steps);

  bool exhausted() const;
  void charge_step() { ++steps_; }
  std::uint64_t steps() const { return steps_; }

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::optional<std::uint64_t> max_steps_;
  std::uint64_t steps_ = 0;
};

struct ExecutorConfig {
  /// Number of terminal pairs when waves are disabled.
  std::uint32_t pair_count = 20;
  bool use_waves = true;
  std::vector<std::uint32_t> wave_sizes{1, 5, 14, 80};
  std::uint32_t ensemble_pairs = 3;
  std::uint32_t ensemble_pool_size = 10;
  /// 0 means no limit.
  double time_limit = 0;
  std::uint64_t seed = 0;
  Ratio epsilon{3, 100};
  bool early_termination = true;
  /// 1 runs the cooperative single-threaded scheduler.
  std::uint32_t threads = 1;
};

struct InterleaveOptions {
  bool early_termination = true;
  /// Cuts above this bound are never worth finishing.
  std::optional<std::uint32_t> initial_bound;
  std::uint32_t threads = 1;
};

struct PairOutcome {
  ParetoFront front;
  std::optional<Bipartition> result;
  std::uint32_t iterations = 0;
  bool finished = false;
  bool terminated_early = false;
};

struct InterleaveResult {
  std::optional<Bipartition> best;
  std::uint32_t best_pair = 0;
  std::vector<PairOutcome> pairs;
  /// False if the budget ran out before every pair finished or was terminated.
  bool completed = true;
};

/// Runs one cutter per terminal pair. The single-threaded scheduler always
/// advances the cutter with the smallest current cut (lowest pair index on
/// ties). A pair whose cut exceeds the best balanced cut published so far is
/// terminated. The best result is the smallest cut, lowest pair index on ties.
InterleaveResult interleave(const Hypergraph& h, std::span<const TerminalPair> pairs,
                            std::span<const std::uint64_t> seeds, const Ratio& epsilon,
                            Budget& budget, const InterleaveOptions& options = {});

/// Two distinct uniformly random vertices from `vertices` per pair.
std::vector<TerminalPair> random_terminal_pairs(std::span<const VertexId> vertices,
                                                std::uint32_t count, std::uint64_t seed);

/// Groups vertices that share a block in every pool partition. Classes are
/// ordered by decreasing size, then by smallest member.
std::vector<std::vector<VertexId>> equivalence_classes(std::span<const Bipartition> pool,
                                                       std::uint32_t num_vertices);

/// Pairs up successive equivalence classes; at most k pairs.
std::vector<TerminalPair> ensemble_terminal_pairs(std::span<const std::vector<VertexId>> classes,
                                                  std::uint32_t k);

std::vector<Bipartition> ensemble_pool(const Hypergraph& h, const Ratio& epsilon,
                                       std::uint32_t size, std::uint64_t seed);

/// The terminal pairs of all waves in execution order, with their seeds.
struct WavePlan {
  std::vector<TerminalPair> pairs;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint32_t> wave_sizes;
  std::uint32_t ensemble_count = 0;
};

WavePlan plan_waves(const Hypergraph& h, const ExecutorConfig& cfg);

struct WaveResult {
  std::optional<Bipartition> best;
  std::uint32_t best_pair = 0;
  std::uint32_t best_wave = 0;
  std::uint32_t waves_completed = 0;
  std::uint32_t total_pairs = 0;
};

/// Executes the wave plan. The incumbent is only taken from completed waves.
WaveResult run_waves(const Hypergraph& h, const ExecutorConfig& cfg, Budget& budget);

}  // namespace hfc
