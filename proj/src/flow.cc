#include "hfc/flow.h"

#include <cassert>
#include <stdexcept>

namespace hfc {

FlowState::FlowState(const Hypergraph& h)
    : h_(&h), terminal_(h.num_vertices(), kNone) {
  for (std::size_t s = 0; s < 2; ++s) {
    flow_end_[s].assign(h.num_edges(), kInvalidVertex);
    reach_stamp_[s].assign(h.num_vertices(), 0);
    edge_scanned_[s].assign(h.num_edges(), 0);
    edge_touched_[s].assign(h.num_edges(), 0);
  }
  level_.assign(h.num_vertices(), 0);
  arc_edge_.assign(h.num_vertices(), 0);
  arc_pin_.assign(h.num_vertices(), 0);
}

void FlowState::add_terminal(VertexId v, Side side) {
  assert(!is_terminal(v));
  terminal_[v] = tag(side);
  terminals_[index_of(side)].push_back(v);
}

void FlowState::start_search(Side side) {
  const std::size_t s = index_of(side);
  ++reach_epoch_[s];
  reach_list_[s].clear();
  touched_list_[s].clear();
}

bool FlowState::mark_reached(Side side, VertexId v) {
  const std::size_t s = index_of(side);
  if (reach_stamp_[s][v] == reach_epoch_[s]) return false;
  reach_stamp_[s][v] = reach_epoch_[s];
  reach_list_[s].push_back(v);
  return true;
}

// Breadth-first search over residual steps, consuming the reach list from
// position head. Each hyperedge is fully expanded at most once per epoch.
void FlowState::run_search(Side side, std::size_t head) {
  const std::size_t s = index_of(side);
  const std::uint32_t epoch = reach_epoch_[s];
  auto& queue = reach_list_[s];
  for (; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (const EdgeId e : h_->incident_edges(u)) {
      if (edge_scanned_[s][e] == epoch) continue;
      if (!has_flow(e) || u == far_end(e, side)) {
        edge_scanned_[s][e] = epoch;
        for (const VertexId v : h_->pins(e)) mark_reached(side, v);
        continue;
      }
      if (edge_touched_[s][e] != epoch) {
        edge_touched_[s][e] = epoch;
        touched_list_[s].push_back(e);
      }
      if (u != near_end(e, side)) mark_reached(side, near_end(e, side));
    }
  }
}

void FlowState::compute_reachable(Side side) {
  start_search(side);
  for (const VertexId t : terminals(side)) mark_reached(side, t);
  run_search(side, 0);
}

void FlowState::grow_reachable(Side side, std::span<const VertexId> new_terminals) {
  const std::size_t head = reach_list_[index_of(side)].size();
  for (const VertexId v : new_terminals) mark_reached(side, v);
  run_search(side, head);
}

std::span<const EdgeId> FlowState::cut_hyperedges(Side side) {
  const std::size_t s = index_of(side);
  const std::uint32_t epoch = reach_epoch_[s];
  auto& list = touched_list_[s];
  std::erase_if(list, [&](EdgeId e) { return edge_scanned_[s][e] == epoch; });
  return list;
}

CutInfo FlowState::extract_cut(Side side) const {
  CutInfo info;
  info.side = side;
  for (EdgeId e = 0; e < h_->num_edges(); ++e) {
    bool inside = false;
    bool outside = false;
    for (const VertexId v : h_->pins(e)) {
      (is_reachable(v, side) ? inside : outside) = true;
    }
    if (inside && outside) info.cut_hyperedges.push_back(e);
  }
  info.cut_size = static_cast<std::uint32_t>(info.cut_hyperedges.size());
  return info;
}

bool FlowState::has_augmenting_path() const {
  std::vector<bool> seen(h_->num_vertices(), false);
  std::vector<VertexId> queue(terminals(Side::Source).begin(), terminals(Side::Source).end());
  for (const VertexId s : queue) seen[s] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    bool found = false;
    for_each_residual_step(queue[head], [&](EdgeId, VertexId v) {
      if (seen[v]) return;
      seen[v] = true;
      if (is_terminal(v, Side::Target)) found = true;
      queue.push_back(v);
    });
    if (found) return true;
  }
  return false;
}

std::uint32_t FlowState::augment_max_flow() {
  if (terminals(Side::Source).empty() || terminals(Side::Target).empty()) {
    throw std::logic_error("max-flow needs non-empty source and target sets");
  }
  std::uint32_t added = 0;
  while (dinic_layers()) {
    added += dinic_blocking_flow();
  }
  flow_value_ += added;
  return added;
}

// Layered breadth-first search from the sources. If no target is reached the
// search ran to completion and its visited set is the source-reachable set.
bool FlowState::dinic_layers() {
  constexpr Side side = Side::Source;
  const std::size_t s = index_of(side);
  start_search(side);
  const std::uint32_t epoch = reach_epoch_[s];
  auto& queue = reach_list_[s];
  for (const VertexId v : terminals(side)) {
    mark_reached(side, v);
    level_[v] = 0;
    arc_edge_[v] = 0;
    arc_pin_[v] = 0;
  }
  target_level_ = kDead;
  bool found = false;

  auto visit = [&](VertexId v, std::uint32_t level) {
    if (!mark_reached(side, v)) return;
    level_[v] = level;
    arc_edge_[v] = 0;
    arc_pin_[v] = 0;
    if (is_terminal(v, Side::Target)) {
      found = true;
      target_level_ = level;
    }
  };

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    if (found && level_[u] + 1 > target_level_) break;
    if (is_terminal(u, Side::Target)) continue;
    const std::uint32_t next_level = level_[u] + 1;
    for (const EdgeId e : h_->incident_edges(u)) {
      if (edge_scanned_[s][e] == epoch) continue;
      if (!has_flow(e) || u == flow_to(e)) {
        edge_scanned_[s][e] = epoch;
        for (const VertexId v : h_->pins(e)) visit(v, next_level);
        continue;
      }
      if (edge_touched_[s][e] != epoch) {
        edge_touched_[s][e] = epoch;
        touched_list_[s].push_back(e);
      }
      if (u != flow_from(e)) visit(flow_from(e), next_level);
    }
  }
  return found;
}

bool FlowState::next_admissible(VertexId u, EdgeId& edge, VertexId& next) {
  const auto incident = h_->incident_edges(u);
  const std::uint32_t wanted = level_[u] + 1;
  auto admissible = [&](VertexId v) {
    if (!is_reachable(v, Side::Source) || level_[v] != wanted) return false;
    return wanted < target_level_ || is_terminal(v, Side::Target);
  };
  while (arc_edge_[u] < incident.size()) {
    const EdgeId e = incident[arc_edge_[u]];
    if (!has_flow(e) || u == flow_to(e)) {
      const auto pins = h_->pins(e);
      for (; arc_pin_[u] < pins.size(); ++arc_pin_[u]) {
        const VertexId v = pins[arc_pin_[u]];
        if (v != u && admissible(v)) {
          edge = e;
          next = v;
          return true;
        }
      }
    } else if (u != flow_from(e) && admissible(flow_from(e))) {
      edge = e;
      next = flow_from(e);
      return true;
    }
    ++arc_edge_[u];
    arc_pin_[u] = 0;
  }
  return false;
}

std::uint32_t FlowState::dinic_blocking_flow() {
  std::uint32_t pushed = 0;
  std::vector<VertexId> path;
  std::vector<EdgeId> path_edges;
  for (const VertexId s : terminals(Side::Source)) {
    path.assign(1, s);
    path_edges.clear();
    while (!path.empty()) {
      const VertexId u = path.back();
      if (is_terminal(u, Side::Target)) {
        augment_path(path, path_edges);
        ++pushed;
        path.resize(1);
        path_edges.clear();
        continue;
      }
      EdgeId e = 0;
      VertexId v = 0;
      if (next_admissible(u, e, v)) {
        path.push_back(v);
        path_edges.push_back(e);
      } else {
        level_[u] = kDead;
        path.pop_back();
        if (!path_edges.empty()) path_edges.pop_back();
      }
    }
  }
  return pushed;
}

void FlowState::augment_path(std::span<const VertexId> path, std::span<const EdgeId> edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const VertexId u = path[i];
    const VertexId v = path[i + 1];
    const EdgeId e = edges[i];
    VertexId& from = flow_end_[0][e];
    VertexId& to = flow_end_[1][e];
    if (from == kInvalidVertex) {
      from = u;
      to = v;
    } else if (u == to) {
      // Flow enters e from u's side again: the unit is either redirected to v
      // or cancelled if v is the pin that sent it.
      if (v == from) {
        from = kInvalidVertex;
        to = kInvalidVertex;
      } else {
        to = v;
      }
    } else {
      // u takes over as the sender; the previous sender passes its unit on.
      assert(v == from && u != from);
      from = u;
    }
  }
}

}  // namespace hfc
