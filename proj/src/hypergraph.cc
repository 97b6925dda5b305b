#include "hfc/hypergraph.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hfc {

Hypergraph::Hypergraph(std::uint32_t num_vertices,
                       const std::vector<std::vector<VertexId>>& hyperedges)
    : num_vertices_(num_vertices) {
  edge_offsets_.reserve(hyperedges.size() + 1);
  std::vector<std::uint32_t> degrees(num_vertices, 0);
  std::vector<EdgeId> last_seen(num_vertices, std::numeric_limits<EdgeId>::max());
  for (EdgeId e = 0; e < hyperedges.size(); ++e) {
    for (const VertexId v : hyperedges[e]) {
      if (v >= num_vertices) {
        throw std::invalid_argument("pin " + std::to_string(v) + " out of range in hyperedge " +
                                    std::to_string(e));
      }
      if (last_seen[v] == e) {
        throw std::invalid_argument("duplicate pin " + std::to_string(v) + " in hyperedge " +
                                    std::to_string(e));
      }
      last_seen[v] = e;
      pins_.push_back(v);
      ++degrees[v];
    }
    edge_offsets_.push_back(static_cast<std::uint32_t>(pins_.size()));
  }

  vertex_offsets_.assign(num_vertices + 1, 0);
  for (VertexId v = 0; v < num_vertices; ++v) {
    vertex_offsets_[v + 1] = vertex_offsets_[v] + degrees[v];
    max_degree_ = std::max(max_degree_, degrees[v]);
  }
  incidence_.resize(pins_.size());
  std::vector<std::uint32_t> fill(vertex_offsets_.begin(), vertex_offsets_.end() - 1);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    for (const VertexId v : pins(e)) {
      incidence_[fill[v]++] = e;
    }
  }
}

std::vector<std::vector<VertexId>> Hypergraph::edge_lists() const {
  std::vector<std::vector<VertexId>> lists;
  lists.reserve(num_edges());
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const auto p = pins(e);
    lists.emplace_back(p.begin(), p.end());
  }
  return lists;
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
  return a.num_vertices_ == b.num_vertices_ && a.edge_offsets_ == b.edge_offsets_ &&
         a.pins_ == b.pins_ && a.vertex_offsets_ == b.vertex_offsets_ &&
         a.incidence_ == b.incidence_;
}

std::uint32_t cut_size(const Hypergraph& h, std::span<const BlockId> assignment) {
  std::uint32_t cut = 0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto pins = h.pins(e);
    if (pins.empty()) continue;
    const BlockId first = assignment[pins.front()];
    if (std::any_of(pins.begin() + 1, pins.end(),
                    [&](VertexId v) { return assignment[v] != first; })) {
      ++cut;
    }
  }
  return cut;
}

Bipartition Bipartition::evaluate(const Hypergraph& h, std::vector<BlockId> assignment,
                                  Ratio epsilon) {
  if (assignment.size() != h.num_vertices()) {
    throw std::invalid_argument("partition has " + std::to_string(assignment.size()) +
                                " entries, hypergraph has " + std::to_string(h.num_vertices()) +
                                " vertices");
  }
  Bipartition result;
  for (const BlockId b : assignment) {
    if (b > 1) {
      throw std::invalid_argument("block id " + std::to_string(b) + " is not 0 or 1");
    }
    ++result.block_sizes[b];
  }
  result.cut = cut_size(h, assignment);
  result.assignment = std::move(assignment);
  result.epsilon = epsilon;
  return result;
}

bool Bipartition::is_balanced(const Ratio& eps) const {
  return std::max(block_sizes[0], block_sizes[1]) <= max_block_size(num_vertices(), eps);
}

double Bipartition::imbalance() const {
  const std::uint32_t n = num_vertices();
  if (n == 0) return 0.0;
  const double larger = std::max(block_sizes[0], block_sizes[1]);
  return 2.0 * larger / n - 1.0;
}

std::vector<std::vector<VertexId>> ComponentDecomposition::members() const {
  std::vector<std::vector<VertexId>> result(num_components());
  for (std::uint32_t c = 0; c < num_components(); ++c) {
    result[c].reserve(component_sizes[c]);
  }
  for (VertexId v = 0; v < component_of.size(); ++v) {
    result[component_of[v]].push_back(v);
  }
  return result;
}

ComponentDecomposition connected_components(const Hypergraph& h) {
  const std::uint32_t n = h.num_vertices();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> discovered(n, kUnset);
  std::vector<bool> edge_seen(h.num_edges(), false);
  std::vector<std::uint32_t> discovered_sizes;
  std::vector<VertexId> queue;
  queue.reserve(n);

  for (VertexId root = 0; root < n; ++root) {
    if (discovered[root] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(discovered_sizes.size());
    queue.clear();
    queue.push_back(root);
    discovered[root] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const EdgeId e : h.incident_edges(queue[head])) {
        if (edge_seen[e]) continue;
        edge_seen[e] = true;
        for (const VertexId v : h.pins(e)) {
          if (discovered[v] == kUnset) {
            discovered[v] = id;
            queue.push_back(v);
          }
        }
      }
    }
    discovered_sizes.push_back(static_cast<std::uint32_t>(queue.size()));
  }

  // Stable counting sort of the components by size.
  const std::uint32_t z = static_cast<std::uint32_t>(discovered_sizes.size());
  std::vector<std::uint32_t> bucket_start(n + 2, 0);
  for (const std::uint32_t s : discovered_sizes) ++bucket_start[s + 1];
  for (std::uint32_t s = 1; s < bucket_start.size(); ++s) bucket_start[s] += bucket_start[s - 1];
  std::vector<std::uint32_t> relabel(z);
  ComponentDecomposition result;
  result.component_sizes.resize(z);
  for (std::uint32_t c = 0; c < z; ++c) {
    const std::uint32_t pos = bucket_start[discovered_sizes[c]]++;
    relabel[c] = pos;
    result.component_sizes[pos] = discovered_sizes[c];
  }
  result.component_of.resize(n);
  for (VertexId v = 0; v < n; ++v) result.component_of[v] = relabel[discovered[v]];
  return result;
}

SubHypergraph extract_subhypergraph(const Hypergraph& h, std::span<const VertexId> vertices) {
  constexpr VertexId kOutside = kInvalidVertex;
  std::vector<VertexId> to_local(h.num_vertices(), kOutside);
  for (std::uint32_t i = 0; i < vertices.size(); ++i) to_local[vertices[i]] = i;

  std::vector<bool> edge_taken(h.num_edges(), false);
  std::vector<EdgeId> edges;
  for (const VertexId v : vertices) {
    for (const EdgeId e : h.incident_edges(v)) {
      if (!edge_taken[e]) {
        edge_taken[e] = true;
        edges.push_back(e);
      }
    }
  }
  std::sort(edges.begin(), edges.end());

  std::vector<std::vector<VertexId>> local_edges;
  local_edges.reserve(edges.size());
  for (const EdgeId e : edges) {
    auto& pins = local_edges.emplace_back();
    for (const VertexId v : h.pins(e)) {
      if (to_local[v] == kOutside) {
        throw std::invalid_argument("vertex set is not closed under hyperedges");
      }
      pins.push_back(to_local[v]);
    }
  }
  return {Hypergraph(static_cast<std::uint32_t>(vertices.size()), local_edges),
          std::vector<VertexId>(vertices.begin(), vertices.end())};
}

}  // namespace hfc
