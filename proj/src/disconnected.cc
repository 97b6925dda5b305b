#include "hfc/disconnected.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hfc {

std::optional<std::vector<std::uint32_t>> zero_cut_subsetsum(std::span<const std::uint32_t> sizes,
                                                             std::uint32_t n, const Ratio& epsilon) {
  const std::uint32_t max_size = static_cast<std::uint32_t>(max_block_size(n, epsilon));
  const std::uint32_t low = n - std::min(n, max_size);
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  // first[t]: the item that first made sum t reachable. Items are processed
  // in order, so first[t - size] of a reached sum is always an earlier item.
  std::vector<std::uint32_t> first(max_size + 1, kNone);
  first[0] = static_cast<std::uint32_t>(sizes.size());
  for (std::uint32_t i = 0; i < sizes.size(); ++i) {
    const std::uint32_t size = sizes[i];
    if (size == 0 || size > max_size) continue;
    for (std::uint32_t t = max_size; t >= size; --t) {
      if (first[t] == kNone && first[t - size] != kNone) first[t] = i;
    }
  }

  for (std::uint32_t x = std::min(n / 2, max_size) + 1; x-- > low;) {
    if (first[x] == kNone) continue;
    std::vector<std::uint32_t> subset;
    for (std::uint32_t t = x; t > 0; t -= sizes[first[t]]) subset.push_back(first[t]);
    std::reverse(subset.begin(), subset.end());
    return subset;
  }
  return std::nullopt;
}

GapFiller gap_filler(std::span<const std::uint32_t> sorted_sizes) {
  GapFiller result;
  for (const std::uint32_t size : sorted_sizes) {
    if (size > result.value + 1) break;
    result.value += size;
    ++result.count;
  }
  return result;
}

std::optional<std::vector<std::uint32_t>> fill_exactly(std::span<const std::uint32_t> sizes,
                                                       std::uint64_t target) {
  std::vector<std::uint32_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return sizes[a] > sizes[b]; });
  std::vector<std::uint32_t> chosen;
  for (const std::uint32_t i : order) {
    if (sizes[i] <= target) {
      target -= sizes[i];
      chosen.push_back(i);
    }
  }
  if (target != 0) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct Cell {
  std::uint32_t cost = kUnreached;
  std::uint32_t splits = 0;

  bool better_than(const Cell& other) const {
    return cost != other.cost ? cost < other.cost : splits < other.splits;
  }
};

// Option indices kept for one component after thinning to at most `cap`.
std::vector<std::uint32_t> thin_options(const std::vector<SplitOption>& options, std::size_t cap) {
  std::vector<std::uint32_t> order(options.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return options[a].smaller < options[b].smaller;
  });
  if (order.size() <= cap) return order;

  std::uint32_t balanced = order.back();
  std::uint32_t cheapest = order.front();
  for (const std::uint32_t i : order) {
    const auto& o = options[i];
    if (o.smaller > options[balanced].smaller ||
        (o.smaller == options[balanced].smaller && o.cut < options[balanced].cut)) {
      balanced = i;
    }
    if (o.cut < options[cheapest].cut ||
        (o.cut == options[cheapest].cut && o.smaller > options[cheapest].smaller)) {
      cheapest = i;
    }
  }
  std::vector<std::uint32_t> kept{balanced};
  if (cheapest != balanced) kept.push_back(cheapest);
  const std::size_t spread = cap > kept.size() ? cap - kept.size() : 0;
  for (std::size_t k = 0; k < spread; ++k) {
    kept.push_back(order[k * order.size() / spread]);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

}  // namespace

std::optional<Combination> combine(std::span<const ComponentPareto> components,
                                   const Ratio& epsilon, std::uint64_t sample_budget) {
  std::uint64_t total = 0;
  std::vector<std::uint32_t> sizes;
  sizes.reserve(components.size());
  for (const auto& c : components) {
    for (const auto& o : c.options) {
      if (o.smaller == 0 || o.smaller > c.size / 2) {
        throw std::invalid_argument("split option outside [1, component size / 2]");
      }
    }
    sizes.push_back(c.size);
    total += c.size;
  }
  if (total > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("too many vertices");
  }
  const auto n = static_cast<std::uint32_t>(total);
  const auto max_size = static_cast<std::uint32_t>(std::min<std::uint64_t>(max_block_size(n, epsilon), n));
  const std::uint32_t low = n - max_size;

  Combination result;
  result.choices.assign(components.size(), {});

  if (const auto subset = zero_cut_subsetsum(sizes, n, epsilon)) {
    result.zero_cut = true;
    for (const std::uint32_t i : *subset) {
      result.choices[i].in_block0 = sizes[i];
      result.block0 += sizes[i];
    }
    result.block1 = n - result.block0;
    return result;
  }

  std::vector<std::uint32_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return sizes[a] < sizes[b]; });
  std::vector<std::uint32_t> sorted_sizes;
  for (const std::uint32_t i : order) sorted_sizes.push_back(sizes[i]);
  const GapFiller filler = gap_filler(sorted_sizes);
  const std::vector<std::uint32_t> fillers(order.begin(), order.begin() + filler.count);
  const std::vector<std::uint32_t> items(order.begin() + filler.count, order.end());

  auto updates_for = [&](std::size_t cap) {
    std::uint64_t updates = 0;
    for (const std::uint32_t i : items) {
      updates += (2 + 2 * std::min(cap, components[i].options.size())) *
                 static_cast<std::uint64_t>(max_size + 1);
    }
    return updates;
  };
  std::size_t cap = std::numeric_limits<std::size_t>::max();
  if (updates_for(cap) > sample_budget) {
    std::size_t lo = 2;
    std::size_t hi = 2;
    for (const std::uint32_t i : items) hi = std::max(hi, components[i].options.size());
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (updates_for(mid) <= sample_budget) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    cap = lo;
  }

  // choice[k][t]: how item k was used to first reach its best value at sum t.
  // 0 keeps it whole in block 1, 1 whole in block 0, 2 + 2j puts the smaller
  // side of kept option j into block 0, 3 + 2j the larger side.
  std::vector<std::vector<std::uint32_t>> kept(items.size());
  std::vector<std::vector<std::int32_t>> choice(items.size());
  std::vector<Cell> row(max_size + 1);
  std::vector<Cell> next(max_size + 1);
  row[0] = {0, 0};
  for (std::size_t k = 0; k < items.size(); ++k) {
    const ComponentPareto& comp = components[items[k]];
    kept[k] = thin_options(comp.options, cap);
    choice[k].assign(max_size + 1, -1);
    std::fill(next.begin(), next.end(), Cell{});
    auto relax = [&](std::uint32_t t, std::uint32_t add, std::uint32_t cost, bool split,
                     std::int32_t code) {
      if (t + add > max_size) return;
      const Cell candidate{row[t].cost + cost, row[t].splits + (split ? 1u : 0u)};
      if (candidate.better_than(next[t + add])) {
        next[t + add] = candidate;
        choice[k][t + add] = code;
      }
    };
    for (std::uint32_t t = 0; t <= max_size; ++t) {
      if (row[t].cost == kUnreached) continue;
      relax(t, 0, 0, false, 0);
      relax(t, comp.size, 0, false, 1);
      for (std::size_t j = 0; j < kept[k].size(); ++j) {
        const SplitOption& o = comp.options[kept[k][j]];
        const auto code = static_cast<std::int32_t>(2 + 2 * j);
        relax(t, o.smaller, o.cut, true, code);
        if (comp.size - o.smaller != o.smaller) {
          relax(t, comp.size - o.smaller, o.cut, true, code + 1);
        }
      }
    }
    std::swap(row, next);
  }

  const std::uint64_t g = filler.value;
  std::optional<std::uint32_t> best_x;
  std::uint32_t best_y = 0;
  std::uint64_t best_imbalance = 0;
  for (std::uint32_t x = 0; x <= max_size; ++x) {
    if (row[x].cost == kUnreached) continue;
    const std::uint64_t y_lo = low > x ? low - x : 0;
    const std::uint64_t y_hi = std::min<std::uint64_t>(g, max_size - x);
    if (y_lo > y_hi) continue;
    const std::uint64_t ideal = n / 2 > x ? n / 2 - x : 0;
    const auto y = static_cast<std::uint32_t>(std::clamp(ideal, y_lo, y_hi));
    const std::int64_t diff = 2 * static_cast<std::int64_t>(x + y) - n;
    const auto imbalance = static_cast<std::uint64_t>(diff < 0 ? -diff : diff);
    if (!best_x || row[x].better_than(row[*best_x]) ||
        (!row[*best_x].better_than(row[x]) && imbalance < best_imbalance)) {
      best_x = x;
      best_y = y;
      best_imbalance = imbalance;
    }
  }
  if (!best_x) return std::nullopt;

  result.cut = row[*best_x].cost;
  result.split_components = row[*best_x].splits;
  std::uint32_t t = *best_x;
  for (std::size_t k = items.size(); k-- > 0;) {
    const std::int32_t code = choice[k][t];
    const std::uint32_t i = items[k];
    ComponentChoice& c = result.choices[i];
    if (code == 1) {
      c.in_block0 = sizes[i];
    } else if (code >= 2) {
      c.option = static_cast<std::int32_t>(kept[k][(code - 2) / 2]);
      const std::uint32_t smaller = components[i].options[c.option].smaller;
      c.in_block0 = code % 2 == 0 ? smaller : sizes[i] - smaller;
    }
    t -= c.in_block0;
  }

  std::vector<std::uint32_t> filler_sizes;
  for (const std::uint32_t i : fillers) filler_sizes.push_back(sizes[i]);
  const auto filled = fill_exactly(filler_sizes, best_y);
  if (!filled) throw std::logic_error("gap filler cannot form the requested size");
  for (const std::uint32_t f : *filled) result.choices[fillers[f]].in_block0 = sizes[fillers[f]];

  for (const auto& c : result.choices) result.block0 += c.in_block0;
  result.block1 = n - result.block0;
  return result;
}

}  // namespace hfc
