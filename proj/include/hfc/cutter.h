#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hfc/flow.h"
#include "hfc/hypergraph.h"
#include "hfc/random.h"
#include "hfc/ratio.h"

namespace hfc {

struct TerminalPair {
  std::vector<VertexId> source;
  std::vector<VertexId> target;

  friend bool operator==(const TerminalPair&, const TerminalPair&) = default;
};

/// One recorded bipartition: the reachable set of `side` at `iteration`,
/// extended by `moved_isolated` isolated vertices. Together with the terminal
/// pair and seed that produced it, this is enough to rebuild the assignment.
struct FrontEntry {
  std::uint32_t smaller_block = 0;
  std::uint32_t cut = 0;
  std::uint32_t iteration = 0;
  Side side = Side::Source;
  std::uint32_t moved_isolated = 0;
  std::uint32_t pair = 0;

  friend bool operator==(const FrontEntry&, const FrontEntry&) = default;
};

/// Cut/balance trade-off: at most one entry per smaller-block size, with cut
/// sizes non-decreasing in the smaller-block size.
class ParetoFront {
 public:
  /// Inserts unless an entry at least as balanced is strictly cheaper, or an
  /// entry of the same size is no more expensive. Entries made inconsistent by
  /// the insertion are removed. Returns whether the entry was kept.
  bool insert(const FrontEntry& entry);

  /// Inserts every entry of other, tagging them with the given pair index.
  void merge(const ParetoFront& other, std::uint32_t pair);

  std::span<const FrontEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const FrontEntry* find(std::uint32_t smaller_block) const;

  friend bool operator==(const ParetoFront&, const ParetoFront&) = default;

 private:
  std::vector<FrontEntry> entries_;
};

/// Smallest number of isolated vertices that must join a block of
/// `block_size` vertices so that both blocks fit max_block_size(n, eps), or
/// nullopt if `isolated_available` is not enough.
std::optional<std::uint32_t> isolated_moves_for_balance(std::uint32_t n, std::uint32_t block_size,
                                                        std::uint32_t isolated_available,
                                                        const Ratio& epsilon);

/// Incremental S-T min-cut enumeration on a connected hypergraph.
///
/// Every call to advance() performs one iteration: the smaller reachable side
/// is absorbed into its terminal set, a piercing choice is added, and the flow
/// is augmented (skipped if the piercing avoids augmenting paths). After each
/// maximum flow, both induced bipartitions are recorded in the front. The run
/// finishes once a bipartition is balanced for the target epsilon, or when the
/// growing side has nothing left to pierce.
class HyperFlowCutter {
 public:
  struct Piercing {
    std::vector<VertexId> vertices;
    bool avoids_augmenting_paths = false;
    bool whole_hyperedge = false;
  };

  /// Throws std::invalid_argument if a terminal set is empty, the sets
  /// overlap, or a vertex is out of range.
  HyperFlowCutter(const Hypergraph& h, const TerminalPair& terminals, Ratio epsilon,
                  std::uint64_t seed);

  /// Returns false once the run has finished.
  bool advance();
  void run() {
    while (advance()) {
    }
  }

  bool started() const { return started_; }
  bool finished() const { return finished_; }
  /// Finished because the growing side ran out of piercing candidates.
  bool exhausted() const { return exhausted_; }
  std::uint32_t current_cut() const { return flow_.flow_value(); }
  std::uint32_t iteration() const { return iteration_; }
  const ParetoFront& front() const { return front_; }
  /// The balanced bipartition that ended the run, if any.
  const std::optional<Bipartition>& result() const { return result_; }
  const FlowState& flow() const { return flow_; }
  const Ratio& epsilon() const { return epsilon_; }

  bool is_isolated(VertexId v) const { return isolated_[v] != 0; }
  std::uint32_t isolated_count() const { return isolated_count_; }
  bool is_mixed(EdgeId e) const { return terminal_pins_[0][e] > 0 && terminal_pins_[1][e] > 0; }

  /// The bipartition induced by `side`'s reachable set, if some number of
  /// isolated vertices can make it balanced for eps.
  std::optional<Bipartition> balance_check(Side side, const Ratio& eps) const;

  /// Assignment with `side`'s reachable set plus the first `moved_isolated`
  /// isolated vertices on that side's block (block 0 for the source).
  Bipartition materialize(Side side, std::uint32_t moved_isolated) const;

  /// Chooses piercing vertices for `side`, which must currently hold a
  /// maximum flow. Returns nullopt when no candidate exists.
  std::optional<Piercing> find_piercing(Side side);

 private:
  void add_terminal(VertexId v, Side side);
  void record();
  bool has_capacity_for(Side side, std::size_t count) const;

  const Hypergraph* h_;
  FlowState flow_;
  Ratio epsilon_;
  Rng rng_;
  std::array<std::vector<std::uint32_t>, 2> terminal_pins_;
  std::vector<std::uint32_t> mixed_degree_;
  std::vector<std::uint8_t> isolated_;
  std::vector<VertexId> isolated_list_;
  std::uint32_t isolated_count_ = 0;
  ParetoFront front_;
  std::optional<Bipartition> result_;
  std::uint32_t iteration_ = 0;
  bool started_ = false;
  bool finished_ = false;
  bool exhausted_ = false;
};

/// Runs one terminal pair to completion and returns its front.
ParetoFront run_core(const Hypergraph& h, const TerminalPair& terminals, const Ratio& epsilon,
                     std::uint64_t seed);

/// Rebuilds the bipartition behind a front entry by deterministic replay of
/// the run that recorded it.
Bipartition replay_entry(const Hypergraph& h, const TerminalPair& terminals, std::uint64_t seed,
                         const FrontEntry& entry);

}  // namespace hfc
