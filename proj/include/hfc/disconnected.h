#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hfc/ratio.h"

namespace hfc {

/// A split of one component: `smaller` vertices on one side, `cut` hyperedges
/// cut. `tag` is opaque to the combiner and identifies the split for the
/// caller that has to rebuild it.
struct SplitOption {
  std::uint32_t smaller = 0;
  std::uint32_t cut = 0;
  std::uint32_t tag = 0;
};

/// Split options of one component. Leaving the component whole is always
/// possible and is not listed.
struct ComponentPareto {
  std::uint32_t size = 0;
  std::vector<SplitOption> options;
};

/// Indices of components whose sizes sum into [n - max_block_size, max_block_size],
/// or nullopt if no subset does.
std::optional<std::vector<std::uint32_t>> zero_cut_subsetsum(std::span<const std::uint32_t> sizes,
                                                             std::uint32_t n, const Ratio& epsilon);

struct GapFiller {
  /// Every value in [0, value] is a sum of some of the first `count` sizes.
  std::uint64_t value = 0;
  std::uint32_t count = 0;
};

/// `sorted_sizes` must be non-decreasing.
GapFiller gap_filler(std::span<const std::uint32_t> sorted_sizes);

/// Picks a subset of `sizes` (indices) summing to exactly `target`, greedily
/// by decreasing size. Always succeeds for target <= gap_filler(sizes).value.
std::optional<std::vector<std::uint32_t>> fill_exactly(std::span<const std::uint32_t> sizes,
                                                       std::uint64_t target);

struct ComponentChoice {
  /// Index into the component's options, or -1 if it stays whole.
  std::int32_t option = -1;
  /// Vertices of the component that go to block 0.
  std::uint32_t in_block0 = 0;
};

struct Combination {
  std::vector<ComponentChoice> choices;
  std::uint32_t cut = 0;
  std::uint32_t block0 = 0;
  std::uint32_t block1 = 0;
  std::uint32_t split_components = 0;
  bool zero_cut = false;
};

inline constexpr std::uint64_t kDefaultSampleBudget = 100'000'000;

/// Chooses one option or the whole component per component so that the
/// result is epsilon-balanced with minimum total cut. Ties prefer fewer split
/// components, then better balance. Components forming the gap filler are
/// never split and are placed last to balance the blocks. If the estimated
/// number of table updates exceeds sample_budget, large option lists are
/// thinned, always keeping their most balanced and their cheapest option.
/// Returns nullopt if no combination is balanced. Throws
/// std::invalid_argument on options outside [1, size / 2].
std::optional<Combination> combine(std::span<const ComponentPareto> components,
                                   const Ratio& epsilon,
                                   std::uint64_t sample_budget = kDefaultSampleBudget);

}  // namespace hfc
