#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hfc/hypergraph.h"

namespace hfc {

enum class Side : std::uint8_t { Source = 0, Target = 1 };

constexpr Side opposite(Side side) { return side == Side::Source ? Side::Target : Side::Source; }
constexpr std::size_t index_of(Side side) { return static_cast<std::size_t>(side); }

struct CutInfo {
  std::vector<EdgeId> cut_hyperedges;
  Side side = Side::Source;
  std::uint32_t cut_size = 0;
};

/// Unit-capacity S-T flow stored directly on the hypergraph. Every hyperedge
/// carries at most one unit, recorded as the pin sending flow into it and the
/// pin receiving flow from it. This emulates the residual Lawler network
/// (in-node, out-node and a unit bridge per hyperedge, uncapacitated pin
/// edges) without materializing it.
///
/// Reachability is kept per side as a visited list plus epoch stamps so that
/// a side can be extended incrementally after new terminals are added.
class FlowState {
 public:
  explicit FlowState(const Hypergraph& h);

  const Hypergraph& hypergraph() const { return *h_; }

  /// Adds a non-terminal vertex to the source or target set. Flow and
  /// reachability are left untouched.
  void add_terminal(VertexId v, Side side);
  bool is_terminal(VertexId v) const { return terminal_[v] != kNone; }
  bool is_terminal(VertexId v, Side side) const { return terminal_[v] == tag(side); }
  std::span<const VertexId> terminals(Side side) const { return terminals_[index_of(side)]; }

  bool has_flow(EdgeId e) const { return flow_end_[0][e] != kInvalidVertex; }
  VertexId flow_from(EdgeId e) const { return flow_end_[0][e]; }
  VertexId flow_to(EdgeId e) const { return flow_end_[1][e]; }
  std::uint32_t flow_value() const { return flow_value_; }

  /// Dinic on the emulated residual network. Returns the amount of flow added.
  /// The final breadth-first search, which finds no augmenting path, leaves
  /// the source-reachable set current; the target side must be recomputed.
  /// Throws std::logic_error if either terminal set is empty.
  std::uint32_t augment_max_flow();

  /// Full recomputation of the side's reachable set.
  void compute_reachable(Side side);

  /// Extends the side's reachable set from freshly added terminals. Only
  /// valid if the flow has not changed since the last full computation.
  void grow_reachable(Side side, std::span<const VertexId> new_terminals);

  bool is_reachable(VertexId v, Side side) const {
    return reach_stamp_[index_of(side)][v] == reach_epoch_[index_of(side)];
  }
  std::uint32_t reachable_count(Side side) const {
    return static_cast<std::uint32_t>(reach_list_[index_of(side)].size());
  }
  std::span<const VertexId> reachable_vertices(Side side) const {
    return reach_list_[index_of(side)];
  }

  /// Hyperedges with pins both inside and outside the side's reachable set,
  /// collected during the reachability searches. Order is deterministic.
  std::span<const EdgeId> cut_hyperedges(Side side);

  /// Same cut as cut_hyperedges, recomputed by a scan over all hyperedges.
  CutInfo extract_cut(Side side) const;

  /// Independent residual search from the source set; does not touch state.
  bool has_augmenting_path() const;

  /// Enumerates the hypergraph steps (e, v) that correspond to residual
  /// Lawler paths u -> e -> v.
  template <class Visit>
  void for_each_residual_step(VertexId u, Visit&& visit) const {
    for_each_step(Side::Source, u, visit);
  }

  /// Enumerates the steps (e, u) such that u -> e -> v is residual.
  template <class Visit>
  void for_each_reverse_residual_step(VertexId v, Visit&& visit) const {
    for_each_step(Side::Target, v, visit);
  }

 private:
  static constexpr std::uint8_t kNone = 0;
  static constexpr std::uint32_t kDead = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint8_t tag(Side side) { return side == Side::Source ? 1 : 2; }

  // Searching from the target side walks the residual network backwards,
  // which is the forward rule with flow_from and flow_to exchanged.
  VertexId near_end(EdgeId e, Side side) const { return flow_end_[index_of(side)][e]; }
  VertexId far_end(EdgeId e, Side side) const { return flow_end_[1 - index_of(side)][e]; }

  template <class Visit>
  void for_each_step(Side side, VertexId u, Visit& visit) const {
    for (const EdgeId e : h_->incident_edges(u)) {
      if (!has_flow(e) || u == far_end(e, side)) {
        for (const VertexId v : h_->pins(e)) {
          if (v != u) visit(e, v);
        }
      } else if (u != near_end(e, side)) {
        visit(e, near_end(e, side));
      }
    }
  }

  void start_search(Side side);
  bool mark_reached(Side side, VertexId v);
  void run_search(Side side, std::size_t head);
  bool dinic_layers();
  std::uint32_t dinic_blocking_flow();
  bool next_admissible(VertexId u, EdgeId& edge, VertexId& next);
  void augment_path(std::span<const VertexId> path, std::span<const EdgeId> edges);

  const Hypergraph* h_;
  std::vector<std::uint8_t> terminal_;
  std::array<std::vector<VertexId>, 2> terminals_;
  std::array<std::vector<VertexId>, 2> flow_end_;
  std::uint32_t flow_value_ = 0;

  std::array<std::vector<std::uint32_t>, 2> reach_stamp_;
  std::array<std::uint32_t, 2> reach_epoch_{1, 1};
  std::array<std::vector<VertexId>, 2> reach_list_;
  // Hyperedges whose pins were all enqueued from this side in this epoch.
  std::array<std::vector<std::uint32_t>, 2> edge_scanned_;
  // Hyperedges seen from this side without expanding their pins.
  std::array<std::vector<std::uint32_t>, 2> edge_touched_;
  std::array<std::vector<EdgeId>, 2> touched_list_;

  std::vector<std::uint32_t> level_;
  std::uint32_t target_level_ = 0;
  std::vector<std::uint32_t> arc_edge_;
  std::vector<std::uint32_t> arc_pin_;
};

}  // namespace hfc
