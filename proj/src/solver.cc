#include "hfc/solver.h"

#include <algorithm>
#include <numeric>

#include "hfc/cutter.h"
#include "hfc/random.h"

namespace hfc {

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Ok:
      return "ok";
    case RunStatus::Timeout:
      return "timeout";
    case RunStatus::Unbalanced:
      return "unbalanced";
    case RunStatus::ZeroCut:
      return "zero-cut-preprocessing";
  }
  return "unknown";
}

namespace {

std::uint32_t total_pairs(const ExecutorConfig& cfg) {
  if (!cfg.use_waves) return cfg.pair_count;
  return std::accumulate(cfg.wave_sizes.begin(), cfg.wave_sizes.end(), 0u);
}

PartitionResult partition_connected(const Hypergraph& h, const ExecutorConfig& cfg,
                                    Budget& budget) {
  PartitionResult result;
  const WaveResult waves = run_waves(h, cfg, budget);
  if (waves.best) {
    result.partition = waves.best;
  } else if (waves.waves_completed < (cfg.use_waves ? cfg.wave_sizes.size() : 1)) {
    result.status = RunStatus::Timeout;
  } else {
    result.status = RunStatus::Unbalanced;
  }
  return result;
}

struct ComponentRun {
  SubHypergraph sub;
  std::vector<TerminalPair> pairs;
  std::vector<std::uint64_t> seeds;
  ParetoFront front;
};

PartitionResult partition_disconnected(const Hypergraph& h, const ComponentDecomposition& dec,
                                       const ExecutorConfig& cfg, std::uint64_t sample_budget,
                                       Budget& budget) {
  PartitionResult result;
  result.components = dec.num_components();
  const auto members = dec.members();
  const std::uint32_t n = h.num_vertices();

  if (const auto subset = zero_cut_subsetsum(dec.component_sizes, n, cfg.epsilon)) {
    std::vector<BlockId> assignment(n, 1);
    for (const std::uint32_t c : *subset) {
      for (const VertexId v : members[c]) assignment[v] = 0;
    }
    result.status = RunStatus::ZeroCut;
    result.partition = Bipartition::evaluate(h, std::move(assignment), cfg.epsilon);
    return result;
  }

  // Component ids are already sorted by size, so the gap filler is a prefix.
  const GapFiller filler = gap_filler(dec.component_sizes);
  std::uint64_t splittable = 0;
  for (std::uint32_t c = filler.count; c < members.size(); ++c) {
    if (members[c].size() >= 2) splittable += members[c].size();
  }

  const std::uint32_t q = std::max(1u, total_pairs(cfg));
  std::vector<ComponentRun> runs(members.size());
  std::vector<ComponentPareto> components(members.size());
  std::vector<std::uint32_t> active;
  for (std::uint32_t c = 0; c < members.size(); ++c) {
    components[c].size = static_cast<std::uint32_t>(members[c].size());
    if (c < filler.count || members[c].size() < 2) continue;
    ComponentRun& run = runs[c];
    run.sub = extract_subhypergraph(h, members[c]);
    const auto share = static_cast<std::uint32_t>(q * members[c].size() / splittable);
    const std::uint32_t count = std::max(1u, share);
    std::vector<VertexId> local(members[c].size());
    std::iota(local.begin(), local.end(), 0);
    const std::uint64_t component_seed = derive_seed(cfg.seed, c);
    run.pairs = random_terminal_pairs(local, count, derive_seed(component_seed, count));
    for (std::uint32_t i = 0; i < count; ++i) run.seeds.push_back(derive_seed(component_seed, i));
    active.push_back(c);
  }

  // Every component's pairs are cut into batches following the wave sizes,
  // so that a time limit still leaves complete runs to combine. Fronts do not
  // depend on the schedule, so without a limit the result is the same.
  const std::vector<std::uint32_t> batches =
      cfg.use_waves ? cfg.wave_sizes : std::vector<std::uint32_t>{1};
  const std::uint64_t batch_total =
      std::max<std::uint64_t>(1, std::accumulate(batches.begin(), batches.end(), std::uint64_t{0}));
  std::uint64_t done = 0;
  for (const std::uint32_t batch : batches) {
    const std::uint64_t before = done;
    done += batch;
    for (const std::uint32_t c : active) {
      if (budget.exhausted()) break;
      ComponentRun& run = runs[c];
      const std::uint64_t count = run.pairs.size();
      const auto lo = static_cast<std::size_t>((count * before + batch_total - 1) / batch_total);
      const auto hi = static_cast<std::size_t>((count * done + batch_total - 1) / batch_total);
      if (lo >= hi) continue;
      InterleaveOptions options;
      options.early_termination = false;
      options.threads = cfg.threads;
      const auto outcome = interleave(run.sub.hypergraph, std::span(run.pairs).subspan(lo, hi - lo),
                                      std::span(run.seeds).subspan(lo, hi - lo), Ratio(), budget,
                                      options);
      for (std::size_t i = 0; i < outcome.pairs.size(); ++i) {
        run.front.merge(outcome.pairs[i].front, static_cast<std::uint32_t>(lo + i));
      }
    }
  }
  for (const std::uint32_t c : active) {
    const auto entries = runs[c].front.entries();
    for (std::uint32_t k = 0; k < entries.size(); ++k) {
      components[c].options.push_back({entries[k].smaller_block, entries[k].cut, k});
    }
  }

  const auto combination = combine(components, cfg.epsilon, sample_budget);
  if (!combination) {
    result.status = budget.exhausted() ? RunStatus::Timeout : RunStatus::Unbalanced;
    return result;
  }
  std::vector<BlockId> assignment(n, 1);
  for (std::uint32_t c = 0; c < members.size(); ++c) {
    const ComponentChoice& choice = combination->choices[c];
    if (choice.option < 0) {
      const BlockId block = choice.in_block0 == 0 ? 1 : 0;
      for (const VertexId v : members[c]) assignment[v] = block;
      continue;
    }
    const ComponentRun& run = runs[c];
    const FrontEntry& entry = run.front.entries()[components[c].options[choice.option].tag];
    const Bipartition local =
        replay_entry(run.sub.hypergraph, run.pairs[entry.pair], run.seeds[entry.pair], entry);
    const BlockId flip = local.block_sizes[0] != choice.in_block0 ? 1 : 0;
    for (std::size_t i = 0; i < members[c].size(); ++i) {
      assignment[run.sub.to_global[i]] = static_cast<BlockId>(local.assignment[i] ^ flip);
    }
  }
  result.partition = Bipartition::evaluate(h, std::move(assignment), cfg.epsilon);
  return result;
}

}  // namespace

PartitionResult partition_hypergraph(const Hypergraph& h, const ExecutorConfig& cfg,
                                     std::uint64_t sample_budget) {
  Budget budget = Budget::with_time_limit(cfg.time_limit);
  if (h.num_vertices() < 2) {
    PartitionResult result;
    result.partition =
        Bipartition::evaluate(h, std::vector<BlockId>(h.num_vertices(), 0), cfg.epsilon);
    return result;
  }
  const auto decomposition = connected_components(h);
  if (decomposition.num_components() > 1) {
    return partition_disconnected(h, decomposition, cfg, sample_budget, budget);
  }
  return partition_connected(h, cfg, budget);
}

}  // namespace hfc
