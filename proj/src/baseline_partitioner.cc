#include "hfc/baseline_partitioner.h"

#include <array>
#include <limits>
#include <vector>

#include "hfc/random.h"

namespace hfc {

namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

// Bucket priority queue over integer gains in [-max_gain, max_gain] with
// intrusive doubly linked lists, one instance per block.
class GainBuckets {
 public:
  GainBuckets(std::uint32_t num_vertices, std::uint32_t max_gain)
      : offset_(max_gain),
        heads_(2 * static_cast<std::size_t>(max_gain) + 1, kNil),
        next_(num_vertices, kNil),
        prev_(num_vertices, kNil),
        bucket_(num_vertices, kNil) {}

  bool contains(VertexId v) const { return bucket_[v] != kNil; }
  bool empty() const { return size_ == 0; }

  void insert(VertexId v, std::int32_t gain) {
    const auto b = static_cast<std::uint32_t>(gain + offset_);
    bucket_[v] = b;
    prev_[v] = kNil;
    next_[v] = heads_[b];
    if (heads_[b] != kNil) prev_[heads_[b]] = v;
    heads_[b] = v;
    if (size_ == 0 || b > top_) top_ = b;
    ++size_;
  }

  void remove(VertexId v) {
    const std::uint32_t b = bucket_[v];
    if (prev_[v] != kNil) {
      next_[prev_[v]] = next_[v];
    } else {
      heads_[b] = next_[v];
    }
    if (next_[v] != kNil) prev_[next_[v]] = prev_[v];
    bucket_[v] = kNil;
    --size_;
  }

  VertexId top() {
    while (heads_[top_] == kNil) --top_;
    return heads_[top_];
  }

  std::int32_t top_gain() {
    top();
    return static_cast<std::int32_t>(top_) - offset_;
  }

 private:
  std::int32_t offset_;
  std::vector<std::uint32_t> heads_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> prev_;
  std::vector<std::uint32_t> bucket_;
  std::uint32_t top_ = 0;
  std::size_t size_ = 0;
};

}  // namespace

std::vector<BlockId> grow_region(const Hypergraph& h, std::uint64_t seed) {
  const std::uint32_t n = h.num_vertices();
  std::vector<BlockId> assignment(n, 1);
  const std::uint32_t target = n / 2;
  if (target == 0) return assignment;

  Rng rng(seed);
  std::vector<bool> edge_seen(h.num_edges(), false);
  std::vector<VertexId> queue;
  queue.reserve(target);
  std::uint32_t grown = 0;
  std::size_t head = 0;

  auto take = [&](VertexId v) {
    if (assignment[v] == 0 || grown == target) return;
    assignment[v] = 0;
    queue.push_back(v);
    ++grown;
  };

  while (grown < target) {
    if (head == queue.size()) {
      // Start (or restart in another component) from a random free vertex.
      VertexId v = static_cast<VertexId>(rng.uniform(n));
      while (assignment[v] == 0) v = (v + 1) % n;
      take(v);
    }
    const VertexId u = queue[head++];
    for (const EdgeId e : h.incident_edges(u)) {
      if (edge_seen[e]) continue;
      edge_seen[e] = true;
      for (const VertexId v : h.pins(e)) take(v);
    }
  }
  return assignment;
}

void fm_pass(const Hypergraph& h, std::vector<BlockId>& assignment, const Ratio& epsilon) {
  const std::uint32_t n = h.num_vertices();
  const auto max_size = static_cast<std::uint32_t>(max_block_size(n, epsilon));
  std::array<std::vector<std::uint32_t>, 2> pin_count;
  for (auto& counts : pin_count) counts.assign(h.num_edges(), 0);
  std::array<std::uint32_t, 2> sizes{0, 0};
  for (VertexId v = 0; v < n; ++v) ++sizes[assignment[v]];
  std::uint32_t cut = 0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    for (const VertexId v : h.pins(e)) ++pin_count[assignment[v]][e];
    if (pin_count[0][e] > 0 && pin_count[1][e] > 0) ++cut;
  }

  std::vector<std::int32_t> gain(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    const BlockId from = assignment[v];
    for (const EdgeId e : h.incident_edges(v)) {
      if (pin_count[from][e] == 1) ++gain[v];
      if (pin_count[1 - from][e] == 0) --gain[v];
    }
  }

  std::array<GainBuckets, 2> buckets{GainBuckets(n, h.max_degree()),
                                     GainBuckets(n, h.max_degree())};
  std::vector<bool> locked(n, false);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (pin_count[0][e] == 0 || pin_count[1][e] == 0) continue;
    for (const VertexId v : h.pins(e)) {
      if (!buckets[assignment[v]].contains(v)) buckets[assignment[v]].insert(v, gain[v]);
    }
  }

  auto is_balanced = [&] { return sizes[0] <= max_size && sizes[1] <= max_size; };
  auto adjust = [&](VertexId u, std::int32_t delta) {
    if (locked[u]) return;
    auto& bucket = buckets[assignment[u]];
    if (bucket.contains(u)) bucket.remove(u);
    gain[u] += delta;
    bucket.insert(u, gain[u]);
  };
  auto single_pin = [&](EdgeId e, BlockId block, VertexId moved) {
    for (const VertexId u : h.pins(e)) {
      if (u != moved && assignment[u] == block) return u;
    }
    return kInvalidVertex;
  };

  std::vector<VertexId> moves;
  std::uint32_t best_cut = cut;
  std::size_t best_prefix = 0;
  bool have_best = is_balanced();

  while (true) {
    int chosen = -1;
    std::int32_t chosen_gain = 0;
    for (int b = 0; b < 2; ++b) {
      if (buckets[b].empty() || sizes[1 - b] + 1 > max_size + 1) continue;
      const std::int32_t g = buckets[b].top_gain();
      if (chosen < 0 || g > chosen_gain || (g == chosen_gain && sizes[b] > sizes[chosen])) {
        chosen = b;
        chosen_gain = g;
      }
    }
    if (chosen < 0) break;

    const auto from = static_cast<BlockId>(chosen);
    const auto to = static_cast<BlockId>(1 - chosen);
    const VertexId v = buckets[from].top();
    buckets[from].remove(v);
    locked[v] = true;
    assignment[v] = to;
    for (const EdgeId e : h.incident_edges(v)) {
      if (pin_count[to][e] == 0) {
        for (const VertexId u : h.pins(e)) adjust(u, 1);
      } else if (pin_count[to][e] == 1) {
        adjust(single_pin(e, to, v), -1);
      }
      --pin_count[from][e];
      ++pin_count[to][e];
      if (pin_count[from][e] == 0) {
        for (const VertexId u : h.pins(e)) adjust(u, -1);
      } else if (pin_count[from][e] == 1) {
        adjust(single_pin(e, from, v), 1);
      }
    }
    --sizes[from];
    ++sizes[to];
    cut = static_cast<std::uint32_t>(static_cast<std::int32_t>(cut) - chosen_gain);
    moves.push_back(v);
    if (is_balanced() && (!have_best || cut < best_cut)) {
      have_best = true;
      best_cut = cut;
      best_prefix = moves.size();
    }
  }

  for (std::size_t i = moves.size(); i-- > best_prefix;) {
    assignment[moves[i]] = static_cast<BlockId>(1 - assignment[moves[i]]);
  }
}

Bipartition baseline_partition(const Hypergraph& h, const Ratio& epsilon, std::uint64_t seed) {
  std::vector<BlockId> assignment = grow_region(h, seed);
  fm_pass(h, assignment, epsilon);
  return Bipartition::evaluate(h, std::move(assignment), epsilon);
}

}  // namespace hfc
