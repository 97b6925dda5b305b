#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hfc/ratio.h"

namespace hfc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using BlockId = std::uint8_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

/// Unweighted hypergraph in two flat incidence arrays (hyperedge -> pins and
/// vertex -> incident hyperedges). Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws std::invalid_argument on a pin outside [0, num_vertices) or a
  /// duplicate pin within one hyperedge.
  Hypergraph(std::uint32_t num_vertices, const std::vector<std::vector<VertexId>>& hyperedges);

  std::uint32_t num_vertices() const { return num_vertices_; }
  std::uint32_t num_edges() const { return static_cast<std::uint32_t>(edge_offsets_.size() - 1); }
  std::uint64_t num_pins() const { return pins_.size(); }

  std::span<const VertexId> pins(EdgeId e) const {
    return {pins_.data() + edge_offsets_[e], pins_.data() + edge_offsets_[e + 1]};
  }
  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {incidence_.data() + vertex_offsets_[v], incidence_.data() + vertex_offsets_[v + 1]};
  }
  std::uint32_t edge_size(EdgeId e) const { return edge_offsets_[e + 1] - edge_offsets_[e]; }
  std::uint32_t degree(VertexId v) const { return vertex_offsets_[v + 1] - vertex_offsets_[v]; }
  std::uint32_t max_degree() const { return max_degree_; }

  std::vector<std::vector<VertexId>> edge_lists() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b);

 private:
  std::uint32_t num_vertices_ = 0;
  std::uint32_t max_degree_ = 0;
  std::vector<std::uint32_t> edge_offsets_{0};
  std::vector<VertexId> pins_;
  std::vector<std::uint32_t> vertex_offsets_{0};
  std::vector<EdgeId> incidence_;
};

/// Number of hyperedges with at least one pin in each block.
std::uint32_t cut_size(const Hypergraph& h, std::span<const BlockId> assignment);

/// A two-block assignment together with its evaluated metrics.
struct Bipartition {
  std::vector<BlockId> assignment;
  std::uint32_t cut = 0;
  std::array<std::uint32_t, 2> block_sizes{0, 0};
  Ratio epsilon;

  /// Evaluates cut and block sizes. Throws std::invalid_argument if the
  /// assignment has the wrong length or a block id outside {0, 1}.
  static Bipartition evaluate(const Hypergraph& h, std::vector<BlockId> assignment, Ratio epsilon);

  std::uint32_t num_vertices() const { return block_sizes[0] + block_sizes[1]; }
  std::uint32_t smaller_block() const { return std::min(block_sizes[0], block_sizes[1]); }
  bool is_balanced() const { return is_balanced(epsilon); }
  bool is_balanced(const Ratio& eps) const;
  /// max block / (n / 2) - 1
  double imbalance() const;
};

/// Connected components of the star expansion. Component ids are ordered by
/// non-decreasing size; equal sizes keep discovery order.
struct ComponentDecomposition {
  std::vector<std::uint32_t> component_of;
  std::vector<std::uint32_t> component_sizes;

  std::uint32_t num_components() const { return static_cast<std::uint32_t>(component_sizes.size()); }
  std::vector<std::vector<VertexId>> members() const;
};

ComponentDecomposition connected_components(const Hypergraph& h);

/// Sub-hypergraph induced by a vertex set that is a union of components, so
/// every hyperedge lies entirely inside or outside it. to_global maps local
/// vertex ids back; local ids follow the order of the given vertex list.
struct SubHypergraph {
  Hypergraph hypergraph;
  std::vector<VertexId> to_global;
};

SubHypergraph extract_subhypergraph(const Hypergraph& h, std::span<const VertexId> vertices);

}  // namespace hfc
