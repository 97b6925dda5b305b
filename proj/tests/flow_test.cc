#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hfc/flow.h"
#include "oracles.h"

namespace hfc {
namespace {

FlowState make_flow(const Hypergraph& h, const std::vector<VertexId>& s,
                    const std::vector<VertexId>& t) {
  FlowState flow(h);
  for (const VertexId v : s) flow.add_terminal(v, Side::Source);
  for (const VertexId v : t) flow.add_terminal(v, Side::Target);
  return flow;
}

std::vector<VertexId> sorted_reachable(const FlowState& flow, Side side) {
  const auto span = flow.reachable_vertices(side);
  std::vector<VertexId> out(span.begin(), span.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::pair<EdgeId, VertexId>> steps(const FlowState& flow, VertexId u) {
  std::set<std::pair<EdgeId, VertexId>> out;
  flow.for_each_residual_step(u, [&](EdgeId e, VertexId v) { out.insert({e, v}); });
  return out;
}

TEST(ResidualStepTest, FollowsFlowDirection) {
  const Hypergraph h(4, {{0, 1, 2, 3}});
  auto flow = make_flow(h, {0}, {3});
  EXPECT_EQ(steps(flow, 1), (std::set<std::pair<EdgeId, VertexId>>{{0, 0}, {0, 2}, {0, 3}}));
  ASSERT_EQ(flow.augment_max_flow(), 1u);
  EXPECT_EQ(flow.flow_from(0), 0u);
  EXPECT_EQ(flow.flow_to(0), 3u);
  // The receiving pin may go anywhere, an uninvolved pin only back to the sender.
  EXPECT_EQ(steps(flow, 3), (std::set<std::pair<EdgeId, VertexId>>{{0, 0}, {0, 1}, {0, 2}}));
  EXPECT_EQ(steps(flow, 1), (std::set<std::pair<EdgeId, VertexId>>{{0, 0}}));
  EXPECT_TRUE(steps(flow, 0).empty());
}

TEST(FlowTest, Examples) {
  {
    const Hypergraph h(2, {{0, 1}});
    auto flow = make_flow(h, {0}, {1});
    EXPECT_EQ(flow.augment_max_flow(), 1u);
  }
  {
    const Hypergraph h(4, {{0, 1, 2}, {1, 2, 3}});
    auto flow = make_flow(h, {0}, {3});
    EXPECT_EQ(flow.augment_max_flow(), 1u);
  }
  {
    const Hypergraph h(5, {{0, 1}, {1, 4}, {0, 2}, {2, 4}});
    auto flow = make_flow(h, {0}, {4});
    EXPECT_EQ(flow.augment_max_flow(), 2u);
    flow.compute_reachable(Side::Target);
    EXPECT_EQ(sorted_reachable(flow, Side::Source), (std::vector<VertexId>{0}));
    EXPECT_EQ(sorted_reachable(flow, Side::Target), (std::vector<VertexId>{4}));
  }
  {
    const Hypergraph h(2, {{0, 1}, {0, 1}, {0, 1}});
    auto flow = make_flow(h, {0}, {1});
    EXPECT_EQ(flow.augment_max_flow(), 3u);
  }
}

TEST(FlowTest, ZeroFlowReachesComponent) {
  const Hypergraph h(4, {{0, 1}, {2, 3}});
  auto flow = make_flow(h, {0}, {3});
  EXPECT_EQ(flow.augment_max_flow(), 0u);
  EXPECT_EQ(sorted_reachable(flow, Side::Source), (std::vector<VertexId>{0, 1}));
}

TEST(FlowTest, ThrowsOnEmptyTerminals) {
  const Hypergraph h(2, {{0, 1}});
  FlowState only_source(h);
  only_source.add_terminal(0, Side::Source);
  EXPECT_THROW(only_source.augment_max_flow(), std::logic_error);
  FlowState none(h);
  EXPECT_THROW(none.augment_max_flow(), std::logic_error);
}

TEST(FlowTest, MatchesLawlerNetwork) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 300; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng() % 11);
    const auto m = static_cast<std::uint32_t>(rng() % 16);
    const auto h = testing::random_hypergraph(rng, n, m, 5);
    const auto [s, t] = testing::random_terminals(rng, n);
    auto flow = make_flow(h, s, t);
    const auto value = flow.augment_max_flow();
    const auto oracle = testing::lawler_max_flow(h, s, t);
    ASSERT_EQ(value, oracle.flow) << "round " << round;
    EXPECT_FALSE(flow.has_augmenting_path());
    for (VertexId v = 0; v < n; ++v) {
      EXPECT_EQ(flow.is_reachable(v, Side::Source), oracle.source_side[v]) << "round " << round;
    }
  }
}

TEST(FlowTest, CutsCertifyTheFlow) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 300; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng() % 11);
    const auto m = static_cast<std::uint32_t>(rng() % 16);
    const auto h = testing::random_hypergraph(rng, n, m, 5);
    const auto [s, t] = testing::random_terminals(rng, n);
    auto flow = make_flow(h, s, t);
    const auto value = flow.augment_max_flow();
    flow.compute_reachable(Side::Target);
    for (const Side side : {Side::Source, Side::Target}) {
      const auto cut = flow.extract_cut(side);
      EXPECT_EQ(cut.cut_size, value);
      EXPECT_EQ(cut.cut_hyperedges.size(), value);
      EXPECT_TRUE(testing::separates(h, cut.cut_hyperedges, s, t));
      const auto incremental = flow.cut_hyperedges(side);
      std::vector<EdgeId> a(incremental.begin(), incremental.end());
      std::vector<EdgeId> b = cut.cut_hyperedges;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
    }
    for (VertexId v = 0; v < n; ++v) {
      EXPECT_FALSE(flow.is_reachable(v, Side::Source) && flow.is_reachable(v, Side::Target));
    }
  }
}

TEST(FlowTest, ConservesFlowPerVertex) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const auto n = static_cast<std::uint32_t>(2 + rng() % 11);
    const auto h = testing::random_hypergraph(rng, n, 15, 5);
    const auto [s, t] = testing::random_terminals(rng, n);
    auto flow = make_flow(h, s, t);
    flow.augment_max_flow();
    std::vector<std::int64_t> balance(n, 0);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      if (!flow.has_flow(e)) continue;
      const auto pins = h.pins(e);
      ASSERT_NE(std::find(pins.begin(), pins.end(), flow.flow_from(e)), pins.end());
      ASSERT_NE(std::find(pins.begin(), pins.end(), flow.flow_to(e)), pins.end());
      ASSERT_NE(flow.flow_from(e), flow.flow_to(e));
      --balance[flow.flow_from(e)];
      ++balance[flow.flow_to(e)];
    }
    std::int64_t out_of_source = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (flow.is_terminal(v, Side::Source)) {
        out_of_source -= balance[v];
      } else if (!flow.is_terminal(v)) {
        EXPECT_EQ(balance[v], 0);
      }
    }
    EXPECT_EQ(out_of_source, static_cast<std::int64_t>(flow.flow_value()));
  }
}

TEST(FlowTest, IncrementalMatchesFromScratch) {
  std::mt19937_64 rng(5150);
  for (int round = 0; round < 150; ++round) {
    const auto n = static_cast<std::uint32_t>(4 + rng() % 9);
    const auto h = testing::random_hypergraph(rng, n, 14, 4);
    auto [s, t] = testing::random_terminals(rng, n);
    auto flow = make_flow(h, s, t);
    std::uint32_t previous = flow.augment_max_flow();
    for (VertexId v = 0; v < n; ++v) {
      if (flow.is_terminal(v) || rng() % 3 != 0) continue;
      const Side side = rng() % 2 == 0 ? Side::Source : Side::Target;
      flow.add_terminal(v, side);
      (side == Side::Source ? s : t).push_back(v);
      flow.augment_max_flow();
      EXPECT_GE(flow.flow_value(), previous);
      previous = flow.flow_value();
      EXPECT_EQ(flow.flow_value(), testing::lawler_max_flow(h, s, t).flow);
    }
  }
}

TEST(FlowTest, GrowReachableMatchesRecompute) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 150; ++round) {
    const auto n = static_cast<std::uint32_t>(4 + rng() % 9);
    const auto h = testing::random_hypergraph(rng, n, 12, 4);
    const auto [s, t] = testing::random_terminals(rng, n);
    auto flow = make_flow(h, s, t);
    flow.augment_max_flow();
    flow.compute_reachable(Side::Target);
    std::vector<VertexId> fresh;
    for (VertexId v = 0; v < n; ++v) {
      if (!flow.is_terminal(v) && !flow.is_reachable(v, Side::Source) &&
          !flow.is_reachable(v, Side::Target)) {
        fresh.push_back(v);
        break;
      }
    }
    if (fresh.empty()) continue;
    flow.add_terminal(fresh[0], Side::Source);
    flow.grow_reachable(Side::Source, fresh);
    const auto grown = sorted_reachable(flow, Side::Source);
    flow.compute_reachable(Side::Source);
    EXPECT_EQ(grown, sorted_reachable(flow, Side::Source));
  }
}

}  // namespace
}  // namespace hfc
