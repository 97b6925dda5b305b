#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hfc/disconnected.h"
#include "hfc/hypergraph.h"
#include "oracles.h"

namespace hfc {
namespace {

std::uint64_t sum_of(std::span<const std::uint32_t> sizes, const std::vector<std::uint32_t>& picks) {
  std::uint64_t sum = 0;
  for (const auto i : picks) sum += sizes[i];
  return sum;
}

// Subset sums reachable from the given sizes, as a bitmap over [0, total].
std::vector<bool> subset_sums(std::span<const std::uint32_t> sizes) {
  const auto total = std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0});
  std::vector<bool> reach(total + 1, false);
  reach[0] = true;
  for (const auto s : sizes) {
    for (std::uint64_t x = total; x >= s && s > 0; --x) {
      if (reach[x - s]) reach[x] = true;
    }
  }
  return reach;
}

void expect_consistent(std::span<const ComponentPareto> components, const Combination& c,
                       const Ratio& eps) {
  ASSERT_EQ(c.choices.size(), components.size());
  std::uint32_t n = 0;
  std::uint32_t block0 = 0;
  std::uint32_t cut = 0;
  std::uint32_t split = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& comp = components[i];
    const auto& choice = c.choices[i];
    n += comp.size;
    block0 += choice.in_block0;
    if (choice.option < 0) {
      EXPECT_TRUE(choice.in_block0 == 0 || choice.in_block0 == comp.size);
    } else {
      const auto& o = comp.options[static_cast<std::size_t>(choice.option)];
      EXPECT_TRUE(choice.in_block0 == o.smaller || choice.in_block0 == comp.size - o.smaller);
      cut += o.cut;
      ++split;
    }
  }
  EXPECT_EQ(c.block0, block0);
  EXPECT_EQ(c.block0 + c.block1, n);
  EXPECT_EQ(c.cut, cut);
  EXPECT_EQ(c.split_components, split);
  EXPECT_LE(std::max(c.block0, c.block1), max_block_size(n, eps));
}

TEST(ZeroCutTest, Examples) {
  const std::vector<std::uint32_t> a{3, 3, 4};
  EXPECT_FALSE(zero_cut_subsetsum(a, 10, Ratio()).has_value());

  const std::vector<std::uint32_t> b{5, 5};
  const auto pick_b = zero_cut_subsetsum(b, 10, Ratio());
  ASSERT_TRUE(pick_b.has_value());
  EXPECT_EQ(sum_of(b, *pick_b), 5u);

  const std::vector<std::uint32_t> c{2, 3, 5};
  const auto pick_c = zero_cut_subsetsum(c, 10, Ratio());
  ASSERT_TRUE(pick_c.has_value());
  EXPECT_EQ(sum_of(c, *pick_c), 5u);
}

TEST(ZeroCutTest, MatchesSubsetSumOracle) {
  std::mt19937_64 rng(6);
  for (int round = 0; round < 500; ++round) {
    std::vector<std::uint32_t> sizes(1 + rng() % 6);
    for (auto& s : sizes) s = static_cast<std::uint32_t>(1 + rng() % 12);
    const auto n = static_cast<std::uint32_t>(std::accumulate(sizes.begin(), sizes.end(), 0u));
    const Ratio eps = round % 3 == 0 ? Ratio() : Ratio(1, 10);
    const auto max_size = static_cast<std::uint32_t>(max_block_size(n, eps));
    const auto reach = subset_sums(sizes);
    bool expected = false;
    for (std::uint32_t x = n - std::min(n, max_size); x <= std::min(n, max_size); ++x) {
      expected = expected || reach[x];
    }
    const auto pick = zero_cut_subsetsum(sizes, n, eps);
    ASSERT_EQ(pick.has_value(), expected) << "round " << round;
    if (pick) {
      const auto sum = sum_of(sizes, *pick);
      EXPECT_LE(sum, max_size);
      EXPECT_LE(n - sum, max_size);
    }
  }
}

TEST(GapFillerTest, Examples) {
  const std::vector<std::uint32_t> a{1, 1, 4};
  EXPECT_EQ(gap_filler(a).value, 2u);
  EXPECT_EQ(gap_filler(a).count, 2u);
  const std::vector<std::uint32_t> b{1, 1, 2, 5};
  EXPECT_EQ(gap_filler(b).value, 9u);
  EXPECT_EQ(gap_filler(b).count, 4u);
  const std::vector<std::uint32_t> c{4};
  EXPECT_EQ(gap_filler(c).value, 0u);
  EXPECT_EQ(gap_filler(c).count, 0u);
}

TEST(GapFillerTest, EveryValueUpToGapIsFormable) {
  std::mt19937_64 rng(60);
  for (int round = 0; round < 1000; ++round) {
    std::vector<std::uint32_t> sizes(1 + rng() % 10);
    for (auto& s : sizes) s = static_cast<std::uint32_t>(1 + rng() % (round % 2 == 0 ? 4 : 15));
    std::sort(sizes.begin(), sizes.end());
    const auto g = gap_filler(sizes);
    const std::span<const std::uint32_t> prefix(sizes.data(), g.count);
    const auto reach = subset_sums(prefix);
    for (std::uint64_t x = 0; x <= g.value; ++x) {
      ASSERT_TRUE(reach[x]) << "round " << round << " x " << x;
      const auto picks = fill_exactly(prefix, x);
      ASSERT_TRUE(picks.has_value());
      EXPECT_EQ(sum_of(prefix, *picks), x);
    }
    EXPECT_TRUE(g.value + 1 >= reach.size() || !reach[g.value + 1]);
    if (g.count < sizes.size()) {
      EXPECT_GT(sizes[g.count], g.value + 1);
    }
  }
}

TEST(CombineTest, Examples) {
  const std::vector<ComponentPareto> a{{5, {{1, 1, 0}}}, {3, {}}};
  const auto ca = combine(a, Ratio());
  ASSERT_TRUE(ca.has_value());
  EXPECT_EQ(ca->cut, 1u);
  expect_consistent(a, *ca, Ratio());

  const std::vector<ComponentPareto> b{{5, {{2, 4, 0}}}, {5, {{1, 1, 0}}}};
  const auto cb = combine(b, Ratio());
  ASSERT_TRUE(cb.has_value());
  EXPECT_EQ(cb->cut, 0u);
  EXPECT_TRUE(cb->zero_cut);
  expect_consistent(b, *cb, Ratio());

  const std::vector<ComponentPareto> c{{6, {{2, 3, 0}, {3, 5, 1}}}, {2, {}}};
  const auto cc = combine(c, Ratio());
  ASSERT_TRUE(cc.has_value());
  EXPECT_EQ(cc->cut, 3u);
  expect_consistent(c, *cc, Ratio());

  const std::vector<ComponentPareto> impossible{{7, {}}, {1, {}}};
  EXPECT_FALSE(combine(impossible, Ratio()).has_value());
}

TEST(CombineTest, RejectsInvalidOptions) {
  const std::vector<ComponentPareto> zero{{4, {{0, 1, 0}}}, {4, {}}};
  EXPECT_THROW(combine(zero, Ratio()), std::invalid_argument);
  const std::vector<ComponentPareto> large{{4, {{3, 1, 0}}}, {4, {}}};
  EXPECT_THROW(combine(large, Ratio()), std::invalid_argument);
}

std::vector<ComponentPareto> random_components(std::mt19937_64& rng) {
  std::vector<ComponentPareto> components(1 + rng() % 4);
  for (auto& c : components) {
    c.size = static_cast<std::uint32_t>(1 + rng() % 14);
    const auto count = c.size >= 2 ? rng() % 6 : 0;
    for (std::uint32_t j = 0; j < count; ++j) {
      c.options.push_back({static_cast<std::uint32_t>(1 + rng() % (c.size / 2)),
                           static_cast<std::uint32_t>(1 + rng() % 9), j});
    }
  }
  return components;
}

TEST(CombineTest, MatchesBruteForce) {
  std::mt19937_64 rng(123);
  const Ratio epsilons[] = {Ratio(), Ratio(3, 100), Ratio(1, 10)};
  for (int round = 0; round < 600; ++round) {
    const auto components = random_components(rng);
    const Ratio eps = epsilons[round % 3];
    const auto expected = testing::brute_force_combine(components, eps);
    const auto got = combine(components, eps);
    ASSERT_EQ(got.has_value(), expected.has_value()) << "round " << round;
    if (!got) continue;
    EXPECT_EQ(got->cut, *expected) << "round " << round;
    expect_consistent(components, *got, eps);
  }
}

TEST(CombineTest, NeverSplitsGapFillers) {
  std::mt19937_64 rng(321);
  for (int round = 0; round < 300; ++round) {
    auto components = random_components(rng);
    components.push_back({2, {{1, 1, 0}}});
    components.push_back({1, {}});
    const auto got = combine(components, Ratio());
    if (!got) continue;
    std::vector<std::uint32_t> order(components.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      return components[x].size < components[y].size;
    });
    std::vector<std::uint32_t> sorted;
    for (const auto i : order) sorted.push_back(components[i].size);
    const auto g = gap_filler(sorted);
    EXPECT_GE(g.count, 2u);
    for (std::uint32_t k = 0; k < g.count; ++k) {
      EXPECT_EQ(got->choices[order[k]].option, -1) << "round " << round;
    }
  }
}

TEST(CombineTest, ThinningKeepsCheapestOption) {
  ComponentPareto a{100, {}};
  a.options.push_back({1, 1, 0});
  for (std::uint32_t k = 2; k <= 50; ++k) a.options.push_back({k, 100, k});
  const std::vector<ComponentPareto> components{a, {100, {}}, {3, {}}};
  const auto full = combine(components, Ratio());
  const auto thin = combine(components, Ratio(), 10);
  ASSERT_TRUE(full.has_value());
  ASSERT_TRUE(thin.has_value());
  EXPECT_EQ(full->cut, 1u);
  EXPECT_EQ(thin->cut, 1u);
}

TEST(CombineTest, ThinningKeepsMostBalancedOption) {
  ComponentPareto a{100, {}};
  for (std::uint32_t k = 1; k <= 50; ++k) a.options.push_back({k, k, k});
  const std::vector<ComponentPareto> components{a};
  const auto thin = combine(components, Ratio(), 10);
  ASSERT_TRUE(thin.has_value());
  EXPECT_EQ(thin->cut, 50u);
  EXPECT_EQ(thin->block0, 50u);
}

TEST(CombineTest, ThinnedResultsStayValid) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 200; ++round) {
    const auto components = random_components(rng);
    const auto full = combine(components, Ratio(3, 100));
    const auto thin = combine(components, Ratio(3, 100), 20);
    if (!thin) continue;
    ASSERT_TRUE(full.has_value());
    expect_consistent(components, *thin, Ratio(3, 100));
    EXPECT_GE(thin->cut, full->cut);
  }
}

}  // namespace
}  // namespace hfc
