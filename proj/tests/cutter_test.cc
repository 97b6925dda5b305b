#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hfc/cutter.h"
#include "oracles.h"

namespace hfc {
namespace {

FrontEntry entry(std::uint32_t size, std::uint32_t cut) {
  FrontEntry e;
  e.smaller_block = size;
  e.cut = cut;
  return e;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> points(const ParetoFront& front) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& e : front.entries()) out.emplace_back(e.smaller_block, e.cut);
  return out;
}

using Points = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

TEST(ParetoFrontTest, InsertKeepsTradeOff) {
  ParetoFront front;
  EXPECT_TRUE(front.insert(entry(3, 5)));
  EXPECT_TRUE(front.insert(entry(2, 5)));
  EXPECT_EQ(points(front), (Points{{2, 5}, {3, 5}}));
  EXPECT_FALSE(front.insert(entry(1, 7)));
  EXPECT_FALSE(front.insert(entry(3, 5)));
  EXPECT_TRUE(front.insert(entry(1, 2)));
  EXPECT_TRUE(front.insert(entry(3, 4)));
  EXPECT_EQ(points(front), (Points{{1, 2}, {3, 4}}));
  EXPECT_NE(front.find(3), nullptr);
  EXPECT_EQ(front.find(2), nullptr);
}

TEST(ParetoFrontTest, RandomInsertionsStayMonotone) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 200; ++round) {
    ParetoFront front;
    std::vector<FrontEntry> all;
    for (int i = 0; i < 20; ++i) {
      const auto e = entry(static_cast<std::uint32_t>(rng() % 10), static_cast<std::uint32_t>(rng() % 10));
      all.push_back(e);
      front.insert(e);
    }
    const auto entries = front.entries();
    for (std::size_t i = 1; i < entries.size(); ++i) {
      EXPECT_LT(entries[i - 1].smaller_block, entries[i].smaller_block);
      EXPECT_LE(entries[i - 1].cut, entries[i].cut);
    }
    // Every inserted point is weakly dominated by a kept one.
    for (const auto& e : all) {
      EXPECT_TRUE(std::any_of(entries.begin(), entries.end(), [&](const FrontEntry& k) {
        return k.smaller_block >= e.smaller_block && k.cut <= e.cut;
      }));
    }
  }
}

TEST(IsolatedMovesTest, Examples) {
  EXPECT_EQ(isolated_moves_for_balance(8, 3, 2, Ratio()), 1u);
  EXPECT_EQ(isolated_moves_for_balance(6, 3, 0, Ratio()), 0u);
  EXPECT_EQ(isolated_moves_for_balance(8, 1, 0, Ratio()), std::nullopt);
  EXPECT_EQ(isolated_moves_for_balance(8, 5, 10, Ratio()), std::nullopt);
}

TEST(RunCoreTest, Examples) {
  const auto path6 = run_core(testing::path_hypergraph(6), {{0}, {5}}, Ratio(), 1);
  ASSERT_NE(path6.find(3), nullptr);
  EXPECT_EQ(path6.find(3)->cut, 1u);

  const auto two = run_core(Hypergraph(2, {{0, 1}}), {{0}, {1}}, Ratio(), 1);
  ASSERT_NE(two.find(1), nullptr);
  EXPECT_EQ(two.find(1)->cut, 1u);

  const auto path4 = run_core(testing::path_hypergraph(4), {{0}, {3}}, Ratio(), 1);
  ASSERT_NE(path4.find(2), nullptr);
  EXPECT_EQ(path4.find(2)->cut, 1u);
}

TEST(HyperFlowCutterTest, RejectsInvalidTerminals) {
  const auto h = testing::path_hypergraph(4);
  EXPECT_THROW(HyperFlowCutter(h, {{}, {3}}, Ratio(), 1), std::invalid_argument);
  EXPECT_THROW(HyperFlowCutter(h, {{0}, {}}, Ratio(), 1), std::invalid_argument);
  EXPECT_THROW(HyperFlowCutter(h, {{0}, {0}}, Ratio(), 1), std::invalid_argument);
  EXPECT_THROW(HyperFlowCutter(h, {{0}, {7}}, Ratio(), 1), std::invalid_argument);
}

TEST(HyperFlowCutterTest, PiercesAvoidingVertex) {
  const Hypergraph h(5, {{0, 1}, {1, 4}, {1, 4}, {0, 2, 4}, {2, 3}});
  HyperFlowCutter cutter(h, {{0}, {4}}, Ratio(), 3);
  cutter.advance();
  EXPECT_EQ(cutter.current_cut(), 2u);
  const auto piercing = cutter.find_piercing(Side::Source);
  ASSERT_TRUE(piercing.has_value());
  EXPECT_EQ(piercing->vertices, (std::vector<VertexId>{2}));
  EXPECT_TRUE(piercing->avoids_augmenting_paths);
  // {0, 2, 4} holds both terminals, so only the vertex itself qualifies.
  EXPECT_FALSE(piercing->whole_hyperedge);
}

TEST(HyperFlowCutterTest, PiercesWholeHyperedgeOnPath) {
  const Hypergraph h(6, {{0, 1, 2}, {2, 3}, {3, 4}, {4, 5}});
  HyperFlowCutter cutter(h, {{0}, {5}}, Ratio(), 3);
  EXPECT_TRUE(cutter.advance());
  auto piercing = cutter.find_piercing(Side::Source);
  ASSERT_TRUE(piercing.has_value());
  std::sort(piercing->vertices.begin(), piercing->vertices.end());
  EXPECT_EQ(piercing->vertices, (std::vector<VertexId>{1, 2}));
  EXPECT_TRUE(piercing->avoids_augmenting_paths);
}

TEST(HyperFlowCutterTest, IsolatedVerticesBalanceTheCut) {
  const Hypergraph h(4, {{0, 1, 2, 3}});
  HyperFlowCutter cutter(h, {{0}, {3}}, Ratio(), 1);
  EXPECT_TRUE(cutter.is_isolated(1));
  EXPECT_TRUE(cutter.is_isolated(2));
  EXPECT_FALSE(cutter.is_isolated(0));
  EXPECT_EQ(cutter.isolated_count(), 2u);
  EXPECT_TRUE(cutter.is_mixed(0));
  EXPECT_FALSE(cutter.advance());
  EXPECT_EQ(cutter.iteration(), 0u);
  ASSERT_TRUE(cutter.result().has_value());
  EXPECT_EQ(cutter.result()->cut, 1u);
  EXPECT_TRUE(cutter.result()->is_balanced());
}

TEST(HyperFlowCutterTest, DegreeZeroVerticesAreIsolated) {
  const Hypergraph h(4, {{0, 1}, {1, 2}});
  HyperFlowCutter cutter(h, {{0}, {2}}, Ratio(), 1);
  EXPECT_TRUE(cutter.is_isolated(3));
  EXPECT_FALSE(cutter.is_isolated(1));
}

TEST(HyperFlowCutterTest, FrontIsMonotoneAndReplayable) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 120; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng() % 19);
    const auto h = testing::random_connected_hypergraph(rng, n, n, 4);
    const auto [s, t] = testing::random_terminals(rng, n);
    const TerminalPair pair{s, t};
    const Ratio eps = round % 2 == 0 ? Ratio() : Ratio(3, 100);
    const std::uint64_t seed = rng();
    HyperFlowCutter cutter(h, pair, eps, seed);
    cutter.run();
    const auto entries = cutter.front().entries();
    ASSERT_FALSE(entries.empty());
    for (std::size_t i = 1; i < entries.size(); ++i) {
      EXPECT_LT(entries[i - 1].smaller_block, entries[i].smaller_block);
      EXPECT_LE(entries[i - 1].cut, entries[i].cut);
    }
    for (const auto& e : entries) {
      const auto p = replay_entry(h, pair, seed, e);
      EXPECT_EQ(p.cut, e.cut) << "round " << round;
      EXPECT_EQ(p.smaller_block(), e.smaller_block) << "round " << round;
    }
    if (cutter.result()) {
      EXPECT_TRUE(cutter.result()->is_balanced());
      EXPECT_EQ(cutter.result()->cut, cutter.current_cut());
      EXPECT_EQ(cut_size(h, cutter.result()->assignment), cutter.result()->cut);
    } else {
      EXPECT_TRUE(cutter.exhausted());
    }
  }
}

TEST(HyperFlowCutterTest, NeverBeatsTheOptimum) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 100; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng() % 9);
    const auto h = testing::random_connected_hypergraph(rng, n, n, 4);
    const auto [s, t] = testing::random_terminals(rng, n);
    HyperFlowCutter cutter(h, {s, t}, Ratio(), rng());
    cutter.run();
    if (!cutter.result()) continue;
    const auto best = testing::brute_force_min_cut(h, Ratio());
    ASSERT_TRUE(best.has_value());
    EXPECT_GE(cutter.result()->cut, *best);
  }
}

TEST(HyperFlowCutterTest, CutsGrowMonotonically) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 100; ++round) {
    const auto n = static_cast<std::uint32_t>(4 + rng() % 15);
    const auto h = testing::random_connected_hypergraph(rng, n, n, 4);
    const auto [s, t] = testing::random_terminals(rng, n);
    HyperFlowCutter cutter(h, {s, t}, Ratio(), rng());
    std::uint32_t previous = 0;
    while (cutter.advance()) {
      EXPECT_GE(cutter.current_cut(), previous);
      previous = cutter.current_cut();
      EXPECT_FALSE(cutter.flow().has_augmenting_path());
    }
  }
}

TEST(HyperFlowCutterTest, DeterministicForSeed) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 50; ++round) {
    const auto n = static_cast<std::uint32_t>(4 + rng() % 15);
    const auto h = testing::random_connected_hypergraph(rng, n, n, 4);
    const auto [s, t] = testing::random_terminals(rng, n);
    const std::uint64_t seed = rng();
    EXPECT_EQ(run_core(h, {s, t}, Ratio(), seed), run_core(h, {s, t}, Ratio(), seed));
  }
}

}  // namespace
}  // namespace hfc
