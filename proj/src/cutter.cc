#include "hfc/cutter.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hfc {

bool ParetoFront::insert(const FrontEntry& entry) {
  auto pos = std::lower_bound(
      entries_.begin(), entries_.end(), entry.smaller_block,
      [](const FrontEntry& e, std::uint32_t size) { return e.smaller_block < size; });
  if (pos != entries_.end()) {
    if (pos->smaller_block == entry.smaller_block) {
      if (pos->cut <= entry.cut) return false;
    } else if (pos->cut < entry.cut) {
      return false;
    }
    // Any larger entry that is strictly cheaper dominates as well.
    for (auto it = pos; it != entries_.end(); ++it) {
      if (it->cut < entry.cut) return false;
    }
  }
  // Smaller sizes with a larger cut are dominated by the new entry.
  auto first = pos;
  while (first != entries_.begin() && std::prev(first)->cut > entry.cut) --first;
  auto last = pos;
  if (last != entries_.end() && last->smaller_block == entry.smaller_block) ++last;
  pos = entries_.erase(first, last);
  entries_.insert(pos, entry);
  return true;
}

void ParetoFront::merge(const ParetoFront& other, std::uint32_t pair) {
  for (FrontEntry entry : other.entries_) {
    entry.pair = pair;
    insert(entry);
  }
}

const FrontEntry* ParetoFront::find(std::uint32_t smaller_block) const {
  auto pos = std::lower_bound(
      entries_.begin(), entries_.end(), smaller_block,
      [](const FrontEntry& e, std::uint32_t size) { return e.smaller_block < size; });
  if (pos == entries_.end() || pos->smaller_block != smaller_block) return nullptr;
  return &*pos;
}

std::optional<std::uint32_t> isolated_moves_for_balance(std::uint32_t n, std::uint32_t block_size,
                                                        std::uint32_t isolated_available,
                                                        const Ratio& epsilon) {
  const std::uint32_t max_size = max_block_size(n, epsilon);
  if (block_size > max_size) return std::nullopt;
  const std::uint32_t rest = n - block_size;
  const std::uint32_t needed = rest > max_size ? rest - max_size : 0;
  if (needed > isolated_available || needed > max_size - block_size) return std::nullopt;
  return needed;
}

HyperFlowCutter::HyperFlowCutter(const Hypergraph& h, const TerminalPair& terminals, Ratio epsilon,
                                 std::uint64_t seed)
    : h_(&h), flow_(h), epsilon_(epsilon), rng_(seed) {
  if (terminals.source.empty() || terminals.target.empty()) {
    throw std::invalid_argument("terminal sets must be non-empty");
  }
  for (auto& counts : terminal_pins_) counts.assign(h.num_edges(), 0);
  mixed_degree_.assign(h.num_vertices(), 0);
  isolated_.assign(h.num_vertices(), 0);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (h.degree(v) == 0) {
      isolated_[v] = 1;
      isolated_list_.push_back(v);
      ++isolated_count_;
    }
  }
  for (const Side side : {Side::Source, Side::Target}) {
    const auto& set = side == Side::Source ? terminals.source : terminals.target;
    for (const VertexId v : set) {
      if (v >= h.num_vertices()) {
        throw std::invalid_argument("terminal vertex " + std::to_string(v) + " out of range");
      }
      if (flow_.is_terminal(v)) {
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " appears twice in the terminal sets");
      }
      add_terminal(v, side);
    }
  }
}

void HyperFlowCutter::add_terminal(VertexId v, Side side) {
  flow_.add_terminal(v, side);
  if (isolated_[v]) {
    isolated_[v] = 0;
    --isolated_count_;
  }
  const std::size_t s = index_of(side);
  for (const EdgeId e : h_->incident_edges(v)) {
    if (++terminal_pins_[s][e] != 1 || terminal_pins_[1 - s][e] == 0) continue;
    for (const VertexId u : h_->pins(e)) {
      if (++mixed_degree_[u] == h_->degree(u) && !flow_.is_terminal(u)) {
        isolated_[u] = 1;
        isolated_list_.push_back(u);
        ++isolated_count_;
      }
    }
  }
}

bool HyperFlowCutter::has_capacity_for(Side side, std::size_t count) const {
  const std::size_t limit = (h_->num_vertices() + 1) / 2;
  return flow_.terminals(side).size() + count <= limit;
}

std::optional<HyperFlowCutter::Piercing> HyperFlowCutter::find_piercing(Side side) {
  const Side other = opposite(side);
  std::vector<EdgeId> edge_candidates;
  std::vector<EdgeId> edge_avoiding;
  std::vector<VertexId> vertex_candidates;
  std::vector<VertexId> vertex_avoiding;

  for (const EdgeId e : flow_.cut_hyperedges(side)) {
    std::size_t outside = 0;
    bool avoids = true;
    for (const VertexId v : h_->pins(e)) {
      if (flow_.is_terminal(v) || flow_.is_reachable(v, side)) continue;
      ++outside;
      if (flow_.is_reachable(v, other)) avoids = false;
      if (!isolated_[v]) vertex_candidates.push_back(v);
    }
    if (is_mixed(e) || outside == 0 || !has_capacity_for(side, outside)) continue;
    (avoids ? edge_avoiding : edge_candidates).push_back(e);
  }

  std::sort(vertex_candidates.begin(), vertex_candidates.end());
  vertex_candidates.erase(std::unique(vertex_candidates.begin(), vertex_candidates.end()),
                          vertex_candidates.end());
  std::erase_if(vertex_candidates, [&](VertexId v) {
    if (flow_.is_reachable(v, other)) return false;
    vertex_avoiding.push_back(v);
    return true;
  });

  auto pierce_edge = [&](const std::vector<EdgeId>& pool, bool avoids) {
    const EdgeId e = pool[rng_.uniform(pool.size())];
    Piercing p;
    p.avoids_augmenting_paths = avoids;
    p.whole_hyperedge = true;
    for (const VertexId v : h_->pins(e)) {
      if (!flow_.is_terminal(v) && !flow_.is_reachable(v, side)) p.vertices.push_back(v);
    }
    return p;
  };
  auto pierce_vertex = [&](const std::vector<VertexId>& pool, bool avoids) {
    Piercing p;
    p.avoids_augmenting_paths = avoids;
    p.vertices.push_back(pool[rng_.uniform(pool.size())]);
    return p;
  };

  if (!edge_avoiding.empty()) return pierce_edge(edge_avoiding, true);
  if (!vertex_avoiding.empty()) return pierce_vertex(vertex_avoiding, true);
  if (!edge_candidates.empty()) return pierce_edge(edge_candidates, false);
  if (!vertex_candidates.empty()) return pierce_vertex(vertex_candidates, false);
  return std::nullopt;
}

Bipartition HyperFlowCutter::materialize(Side side, std::uint32_t moved_isolated) const {
  const BlockId inside = side == Side::Source ? 0 : 1;
  std::vector<BlockId> assignment(h_->num_vertices(), static_cast<BlockId>(1 - inside));
  for (const VertexId v : flow_.reachable_vertices(side)) assignment[v] = inside;
  for (const VertexId v : isolated_list_) {
    if (moved_isolated == 0) break;
    if (!isolated_[v] || flow_.is_reachable(v, side)) continue;
    assignment[v] = inside;
    --moved_isolated;
  }
  assert(moved_isolated == 0);
  return Bipartition::evaluate(*h_, std::move(assignment), epsilon_);
}

std::optional<Bipartition> HyperFlowCutter::balance_check(Side side, const Ratio& eps) const {
  const auto moves = isolated_moves_for_balance(h_->num_vertices(), flow_.reachable_count(side),
                                                isolated_count_, eps);
  if (!moves) return std::nullopt;
  Bipartition result = materialize(side, *moves);
  result.epsilon = eps;
  return result;
}

void HyperFlowCutter::record() {
  const std::uint32_t n = h_->num_vertices();
  for (const Side side : {Side::Source, Side::Target}) {
    const std::uint32_t reached = flow_.reachable_count(side);
    // At a maximum flow no isolated vertex is reachable from either side.
    const std::uint32_t moved = reached < n / 2 ? std::min(n / 2 - reached, isolated_count_) : 0;
    const std::uint32_t size = reached + moved;
    front_.insert({std::min(size, n - size), flow_.flow_value(), iteration_, side, moved, 0});
  }

  std::optional<Bipartition> best;
  for (const Side side : {Side::Source, Side::Target}) {
    auto candidate = balance_check(side, epsilon_);
    if (candidate && (!best || candidate->smaller_block() > best->smaller_block())) {
      best = std::move(candidate);
    }
  }
  if (best) {
    result_ = std::move(best);
    finished_ = true;
  }
}

bool HyperFlowCutter::advance() {
  if (finished_) return false;
  if (!started_) {
    started_ = true;
    flow_.augment_max_flow();
    flow_.compute_reachable(Side::Target);
    record();
    return !finished_;
  }

  ++iteration_;
  const Side side = flow_.reachable_count(Side::Source) <= flow_.reachable_count(Side::Target)
                        ? Side::Source
                        : Side::Target;
  for (const VertexId v : flow_.reachable_vertices(side)) {
    if (!flow_.is_terminal(v)) add_terminal(v, side);
  }

  const auto piercing = find_piercing(side);
  if (!piercing) {
    finished_ = true;
    exhausted_ = true;
    return false;
  }
  for (const VertexId v : piercing->vertices) add_terminal(v, side);

  if (piercing->avoids_augmenting_paths) {
    flow_.grow_reachable(side, piercing->vertices);
#ifdef HFC_HEAVY_ASSERTIONS
    if (flow_.has_augmenting_path()) {
      throw std::logic_error("piercing without augmentation left an augmenting path");
    }
#endif
  } else {
    flow_.augment_max_flow();
    flow_.compute_reachable(Side::Target);
  }
  record();
  return !finished_;
}

ParetoFront run_core(const Hypergraph& h, const TerminalPair& terminals, const Ratio& epsilon,
                     std::uint64_t seed) {
  HyperFlowCutter cutter(h, terminals, epsilon, seed);
  cutter.run();
  return cutter.front();
}

Bipartition replay_entry(const Hypergraph& h, const TerminalPair& terminals, std::uint64_t seed,
                         const FrontEntry& entry) {
  HyperFlowCutter cutter(h, terminals, Ratio(), seed);
  cutter.advance();
  while (cutter.iteration() < entry.iteration) {
    if (!cutter.advance() && cutter.iteration() < entry.iteration) {
      throw std::logic_error("front entry does not belong to this run");
    }
  }
  return cutter.materialize(entry.side, entry.moved_isolated);
}

}  // namespace hfc
