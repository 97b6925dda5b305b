#include "hfc/executor.h"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "hfc/baseline_partitioner.h"
#include "hfc/random.h"

namespace hfc {

namespace {

constexpr std::uint64_t kPoolStream = 1ULL << 40;
constexpr std::uint64_t kRandomPairStream = (1ULL << 40) + 1;
constexpr std::uint32_t kNoBound = std::numeric_limits<std::uint32_t>::max();

bool better(const Bipartition& candidate, std::uint32_t pair, const std::optional<Bipartition>& best,
            std::uint32_t best_pair) {
  if (!best) return true;
  return candidate.cut != best->cut ? candidate.cut < best->cut : pair < best_pair;
}

void interleave_sequential(std::vector<HyperFlowCutter>& cutters, InterleaveResult& result,
                           Budget& budget, const InterleaveOptions& options) {
  std::uint32_t bound = options.initial_bound.value_or(kNoBound);
  std::vector<bool> active(cutters.size(), true);
  while (true) {
    std::optional<std::size_t> next;
    for (std::size_t i = 0; i < cutters.size(); ++i) {
      if (active[i] && (!next || cutters[i].current_cut() < cutters[*next].current_cut())) next = i;
    }
    if (!next) break;
    if (budget.exhausted()) {
      result.completed = false;
      break;
    }
    const std::size_t i = *next;
    HyperFlowCutter& cutter = cutters[i];
    cutter.advance();
    budget.charge_step();
    if (cutter.finished()) {
      active[i] = false;
      if (const auto& found = cutter.result()) {
        const auto pair = static_cast<std::uint32_t>(i);
        if (better(*found, pair, result.best, result.best_pair)) {
          result.best = *found;
          result.best_pair = pair;
        }
        bound = std::min(bound, found->cut);
      }
    }
    if (!options.early_termination || bound == kNoBound) continue;
    for (std::size_t j = 0; j < cutters.size(); ++j) {
      if (active[j] && cutters[j].started() && cutters[j].current_cut() > bound) {
        active[j] = false;
        result.pairs[j].terminated_early = true;
      }
    }
  }
}

// Each worker runs whole pairs. Only the deadline of the budget applies; the
// shared bound is the smallest balanced cut published so far.
void interleave_parallel(std::vector<HyperFlowCutter>& cutters, InterleaveResult& result,
                         const Budget& budget, const InterleaveOptions& options) {
  std::atomic<std::uint32_t> bound{options.initial_bound.value_or(kNoBound)};
  std::atomic<std::size_t> next{0};
  std::atomic<bool> out_of_time{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < cutters.size(); i = next++) {
      HyperFlowCutter& cutter = cutters[i];
      while (!cutter.finished()) {
        if (budget.exhausted()) {
          out_of_time = true;
          return;
        }
        cutter.advance();
        if (!cutter.finished() && options.early_termination &&
            cutter.current_cut() > bound.load()) {
          result.pairs[i].terminated_early = true;
          break;
        }
      }
      if (cutter.result()) {
        std::uint32_t seen = bound.load();
        while (cutter.result()->cut < seen &&
               !bound.compare_exchange_weak(seen, cutter.result()->cut)) {
        }
      }
    }
  };
  const std::size_t count = std::min<std::size_t>(options.threads, cutters.size());
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (out_of_time) result.completed = false;
  for (std::size_t i = 0; i < cutters.size(); ++i) {
    const auto& found = cutters[i].result();
    const auto pair = static_cast<std::uint32_t>(i);
    if (found && better(*found, pair, result.best, result.best_pair)) {
      result.best = *found;
      result.best_pair = pair;
    }
  }
}

}  // namespace

Budget Budget::with_time_limit(double seconds) {
  Budget budget;
  if (seconds > 0) {
    budget.deadline_ = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(seconds));
  }
  return budget;
}

Budget Budget::with_max_steps(std::uint64_t steps) {
  Budget budget;
  budget.max_steps_ = steps;
  return budget;
}

bool Budget::exhausted() const {
  if (max_steps_ && steps_ >= *max_steps_) return true;
  return deadline_ && std::chrono::steady_clock::now() >= *deadline_;
}

InterleaveResult interleave(const Hypergraph& h, std::span<const TerminalPair> pairs,
                            std::span<const std::uint64_t> seeds, const Ratio& epsilon,
                            Budget& budget, const InterleaveOptions& options) {
  if (pairs.size() != seeds.size()) {
    throw std::invalid_argument("one seed per terminal pair required");
  }
  std::vector<HyperFlowCutter> cutters;
  cutters.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) cutters.emplace_back(h, pairs[i], epsilon, seeds[i]);

  InterleaveResult result;
  result.pairs.resize(pairs.size());
  if (options.threads > 1) {
    interleave_parallel(cutters, result, budget, options);
  } else {
    interleave_sequential(cutters, result, budget, options);
  }
  for (std::size_t i = 0; i < cutters.size(); ++i) {
    PairOutcome& out = result.pairs[i];
    out.front = cutters[i].front();
    out.result = cutters[i].result();
    out.iterations = cutters[i].started() ? cutters[i].iteration() + 1 : 0;
    out.finished = cutters[i].finished();
  }
  return result;
}

std::vector<TerminalPair> random_terminal_pairs(std::span<const VertexId> vertices,
                                                std::uint32_t count, std::uint64_t seed) {
  if (vertices.size() < 2) {
    throw std::invalid_argument("random terminal pairs need at least two vertices");
  }
  Rng rng(seed);
  std::vector<TerminalPair> pairs;
  pairs.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const VertexId s = vertices[rng.uniform(vertices.size())];
    VertexId t = s;
    while (t == s) t = vertices[rng.uniform(vertices.size())];
    pairs.push_back({{s}, {t}});
  }
  return pairs;
}

std::vector<std::vector<VertexId>> equivalence_classes(std::span<const Bipartition> pool,
                                                       std::uint32_t num_vertices) {
  if (pool.size() > 64) throw std::invalid_argument("at most 64 pool partitions supported");
  std::map<std::uint64_t, std::uint32_t> class_of_signature;
  std::vector<std::vector<VertexId>> classes;
  for (VertexId v = 0; v < num_vertices; ++v) {
    std::uint64_t signature = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      signature |= static_cast<std::uint64_t>(pool[i].assignment[v]) << i;
    }
    const auto [it, inserted] =
        class_of_signature.emplace(signature, static_cast<std::uint32_t>(classes.size()));
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(v);
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return classes;
}

std::vector<TerminalPair> ensemble_terminal_pairs(std::span<const std::vector<VertexId>> classes,
                                                  std::uint32_t k) {
  std::vector<TerminalPair> pairs;
  for (std::size_t i = 0; i + 1 < classes.size() && pairs.size() < k; i += 2) {
    pairs.push_back({classes[i], classes[i + 1]});
  }
  return pairs;
}

std::vector<Bipartition> ensemble_pool(const Hypergraph& h, const Ratio& epsilon,
                                       std::uint32_t size, std::uint64_t seed) {
  std::vector<Bipartition> pool;
  pool.reserve(size);
  for (std::uint32_t i = 0; i < size; ++i) {
    pool.push_back(baseline_partition(h, epsilon, derive_seed(seed, i)));
  }
  return pool;
}

WavePlan plan_waves(const Hypergraph& h, const ExecutorConfig& cfg) {
  WavePlan plan;
  plan.wave_sizes = cfg.use_waves ? cfg.wave_sizes : std::vector<std::uint32_t>{cfg.pair_count};
  std::uint32_t total = 0;
  for (const std::uint32_t size : plan.wave_sizes) total += size;

  std::vector<TerminalPair> ensemble;
  const std::uint32_t wanted = cfg.use_waves ? std::min(cfg.ensemble_pairs, total) : 0;
  if (wanted > 0) {
    const auto pool = ensemble_pool(h, cfg.epsilon, cfg.ensemble_pool_size,
                                    derive_seed(cfg.seed, kPoolStream));
    const auto classes = equivalence_classes(pool, h.num_vertices());
    ensemble = ensemble_terminal_pairs(classes, wanted);
  }
  plan.ensemble_count = static_cast<std::uint32_t>(ensemble.size());

  std::vector<VertexId> vertices(h.num_vertices());
  for (VertexId v = 0; v < h.num_vertices(); ++v) vertices[v] = v;
  auto random = random_terminal_pairs(vertices, total - plan.ensemble_count,
                                      derive_seed(cfg.seed, kRandomPairStream));

  // The first ensemble pair opens the first wave, the others close the last.
  if (!ensemble.empty()) plan.pairs.push_back(ensemble.front());
  for (auto& pair : random) plan.pairs.push_back(std::move(pair));
  for (std::size_t i = 1; i < ensemble.size(); ++i) plan.pairs.push_back(ensemble[i]);
  for (std::uint32_t i = 0; i < total; ++i) plan.seeds.push_back(derive_seed(cfg.seed, i));
  return plan;
}

WaveResult run_waves(const Hypergraph& h, const ExecutorConfig& cfg, Budget& budget) {
  const WavePlan plan = plan_waves(h, cfg);
  WaveResult result;
  result.total_pairs = static_cast<std::uint32_t>(plan.pairs.size());
  std::size_t offset = 0;
  for (std::uint32_t w = 0; w < plan.wave_sizes.size(); ++w) {
    const std::size_t size = plan.wave_sizes[w];
    InterleaveOptions options;
    options.early_termination = cfg.early_termination;
    options.threads = cfg.threads;
    if (result.best) options.initial_bound = result.best->cut;
    const auto wave = interleave(h, std::span(plan.pairs).subspan(offset, size),
                                 std::span(plan.seeds).subspan(offset, size), cfg.epsilon, budget,
                                 options);
    if (!wave.completed) break;
    ++result.waves_completed;
    if (wave.best && (!result.best || wave.best->cut < result.best->cut)) {
      result.best = wave.best;
      result.best_pair = static_cast<std::uint32_t>(offset + wave.best_pair);
      result.best_wave = w;
    }
    offset += size;
  }
  return result;
}

}  // namespace hfc
