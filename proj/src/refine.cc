#include "hfc/refine.h"

#include <algorithm>
#include <stdexcept>

#include "hfc/disconnected.h"
#include "hfc/random.h"

namespace hfc {

Ratio default_alpha(const Ratio& epsilon) {
  return epsilon == Ratio() ? Ratio(46, 100) : Ratio(2, 5);
}

RefineConfig default_refine_config(const Ratio& epsilon) {
  RefineConfig cfg;
  cfg.epsilon = epsilon;
  cfg.alpha = default_alpha(epsilon);
  return cfg;
}

TerminalPair extract_terminals(const Hypergraph& h, const Bipartition& pi, const Ratio& alpha) {
  const std::uint32_t n = h.num_vertices();
  if (pi.assignment.size() != n) {
    throw std::invalid_argument("partition does not match the hypergraph");
  }
  if (pi.block_sizes[0] == 0 || pi.block_sizes[1] == 0) {
    throw std::invalid_argument("both blocks must be non-empty");
  }
  const auto keep = static_cast<std::uint32_t>(alpha.floor_times(n));

  std::vector<bool> boundary(n, false);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto pins = h.pins(e);
    const bool cut = std::any_of(pins.begin(), pins.end(), [&](VertexId v) {
      return pi.assignment[v] != pi.assignment[pins.front()];
    });
    if (!cut) continue;
    for (const VertexId v : pins) boundary[v] = true;
  }

  TerminalPair result;
  std::vector<bool> visited(n, false);
  for (BlockId block = 0; block < 2; ++block) {
    const std::uint32_t size = pi.block_sizes[block];
    const std::uint32_t quota = size > keep ? size - keep : 0;
    std::uint32_t count = 0;
    VertexId last = kInvalidVertex;
    std::vector<VertexId> layer;
    for (VertexId v = 0; v < n; ++v) {
      if (boundary[v] && pi.assignment[v] == block) layer.push_back(v);
    }
    // Layers are visited in ascending id order; the next layer is collected
    // from the vertices that were actually visited.
    while (!layer.empty() && count < quota) {
      std::vector<VertexId> next;
      for (const VertexId v : layer) {
        if (count == quota) break;
        if (visited[v]) continue;
        visited[v] = true;
        last = v;
        ++count;
        for (const EdgeId e : h.incident_edges(v)) {
          for (const VertexId u : h.pins(e)) {
            if (!visited[u] && pi.assignment[u] == block) next.push_back(u);
          }
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      layer = std::move(next);
    }

    auto& terminals = block == 0 ? result.source : result.target;
    for (VertexId v = 0; v < n; ++v) {
      if (pi.assignment[v] == block && !visited[v]) terminals.push_back(v);
    }
    if (terminals.empty()) terminals.push_back(last);
  }
  return result;
}

namespace {

RefineResult choose(const Bipartition& pi, std::optional<Bipartition> found, const Ratio& epsilon,
                    bool completed) {
  const bool balanced = pi.is_balanced(epsilon);
  if (found && (!balanced || found->cut < pi.cut)) {
    found->epsilon = epsilon;
    return {std::move(*found), true, completed};
  }
  if (!balanced) {
    throw std::runtime_error("no balanced bipartition found from the given partition");
  }
  Bipartition same = pi;
  same.epsilon = epsilon;
  return {std::move(same), false, completed};
}

RefineResult refine_connected(const Hypergraph& h, const Bipartition& pi, const RefineConfig& cfg,
                              Budget& budget) {
  const TerminalPair terminals = extract_terminals(h, pi, cfg.alpha);
  const std::vector<TerminalPair> pairs(cfg.pair_count, terminals);
  std::vector<std::uint64_t> seeds;
  for (std::uint32_t i = 0; i < cfg.pair_count; ++i) seeds.push_back(derive_seed(cfg.seed, i));
  InterleaveOptions options;
  options.early_termination = cfg.early_termination;
  if (pi.is_balanced(cfg.epsilon)) options.initial_bound = pi.cut;
  auto run = interleave(h, pairs, seeds, cfg.epsilon, budget, options);
  return choose(pi, std::move(run.best), cfg.epsilon, run.completed);
}

// A split of one component that the combiner may pick: the input split, or
// an entry of the front of one of the refinement runs.
struct SplitSource {
  std::uint32_t pair = 0;
  FrontEntry entry;
  bool original = false;
};

RefineResult refine_disconnected(const Hypergraph& h, const Bipartition& pi,
                                 const ComponentDecomposition& decomposition,
                                 const RefineConfig& cfg, Budget& budget) {
  const auto members = decomposition.members();
  std::vector<ComponentPareto> components(members.size());
  std::vector<SubHypergraph> subs(members.size());
  std::vector<Bipartition> sub_partitions(members.size());
  std::vector<TerminalPair> sub_terminals(members.size());
  std::vector<std::vector<std::uint64_t>> sub_seeds(members.size());
  std::vector<std::vector<SplitSource>> sources(members.size());
  bool completed = true;

  for (std::size_t c = 0; c < members.size(); ++c) {
    components[c].size = static_cast<std::uint32_t>(members[c].size());
    std::vector<BlockId> local;
    for (const VertexId v : members[c]) local.push_back(pi.assignment[v]);
    const bool touched = std::any_of(local.begin(), local.end(),
                                     [&](BlockId b) { return b != local.front(); });
    if (!touched) continue;

    subs[c] = extract_subhypergraph(h, members[c]);
    sub_partitions[c] = Bipartition::evaluate(subs[c].hypergraph, std::move(local), Ratio());
    const Bipartition& part = sub_partitions[c];
    components[c].options.push_back({part.smaller_block(), part.cut, 0});
    sources[c].push_back({0, {}, true});

    sub_terminals[c] = extract_terminals(subs[c].hypergraph, part, cfg.alpha);
    const std::vector<TerminalPair> pairs(cfg.pair_count, sub_terminals[c]);
    for (std::uint32_t i = 0; i < cfg.pair_count; ++i) {
      sub_seeds[c].push_back(derive_seed(derive_seed(cfg.seed, c), i));
    }
    InterleaveOptions options;
    options.early_termination = false;
    const auto run = interleave(subs[c].hypergraph, pairs, sub_seeds[c], Ratio(), budget, options);
    completed = completed && run.completed;
    for (std::uint32_t i = 0; i < run.pairs.size(); ++i) {
      for (const FrontEntry& entry : run.pairs[i].front.entries()) {
        components[c].options.push_back({entry.smaller_block, entry.cut,
                                         static_cast<std::uint32_t>(sources[c].size())});
        sources[c].push_back({i, entry, false});
      }
    }
  }

  std::optional<Bipartition> found;
  if (const auto combination = combine(components, cfg.epsilon)) {
    std::vector<BlockId> assignment(h.num_vertices(), 1);
    for (std::size_t c = 0; c < members.size(); ++c) {
      const ComponentChoice& choice = combination->choices[c];
      if (choice.option < 0) {
        const BlockId block = choice.in_block0 == 0 ? 1 : 0;
        for (const VertexId v : members[c]) assignment[v] = block;
        continue;
      }
      const SplitSource& source = sources[c][components[c].options[choice.option].tag];
      Bipartition local = source.original
                              ? sub_partitions[c]
                              : replay_entry(subs[c].hypergraph, sub_terminals[c],
                                             sub_seeds[c][source.pair], source.entry);
      const bool flip = local.block_sizes[0] != choice.in_block0;
      for (std::size_t i = 0; i < members[c].size(); ++i) {
        assignment[subs[c].to_global[i]] = static_cast<BlockId>(local.assignment[i] ^ (flip ? 1 : 0));
      }
    }
    found = Bipartition::evaluate(h, std::move(assignment), cfg.epsilon);
  }
  return choose(pi, std::move(found), cfg.epsilon, completed);
}

}  // namespace

RefineResult rebahfc(const Hypergraph& h, const Bipartition& pi, const RefineConfig& cfg,
                     Budget& budget) {
  if (pi.assignment.size() != h.num_vertices()) {
    throw std::invalid_argument("partition does not match the hypergraph");
  }
  if (cfg.pair_count == 0) throw std::invalid_argument("at least one refinement run required");
  if (h.num_vertices() < 2) return choose(pi, std::nullopt, cfg.epsilon, true);
  const auto decomposition = connected_components(h);
  if (decomposition.num_components() > 1) {
    return refine_disconnected(h, pi, decomposition, cfg, budget);
  }
  return refine_connected(h, pi, cfg, budget);
}

RefineResult rebahfc(const Hypergraph& h, const Bipartition& pi, const RefineConfig& cfg) {
  Budget unlimited;
  return rebahfc(h, pi, cfg, unlimited);
}

}  // namespace hfc
