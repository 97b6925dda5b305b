#pragma once

#include <cstdint>

#include "hfc/cutter.h"
#include "hfc/executor.h"
#include "hfc/hypergraph.h"
#include "hfc/ratio.h"

namespace hfc {

struct RefineConfig {
  /// Each block keeps floor(alpha * n) vertices away from the cut as terminals.
  Ratio alpha{2, 5};
  Ratio epsilon{3, 100};
  std::uint32_t pair_count = 5;
  std::uint64_t seed = 0;
  bool early_termination = true;
};

/// 0.46 for epsilon = 0, 0.4 otherwise.
Ratio default_alpha(const Ratio& epsilon);
RefineConfig default_refine_config(const Ratio& epsilon);

/// Per block, breadth-first search from the block's boundary vertices through
/// hyperedges inside the block visits |V_i| - floor(alpha * n) vertices
/// (equidistant vertices in ascending id order). The unvisited rest of block 0
/// becomes the source set, that of block 1 the target set. If nothing is left
/// unvisited, the last visited vertex is kept. Throws std::invalid_argument if
/// a block is empty or the assignment does not match h.
TerminalPair extract_terminals(const Hypergraph& h, const Bipartition& pi, const Ratio& alpha);

struct RefineResult {
  Bipartition partition;
  /// False if the input was returned unchanged.
  bool improved = false;
  /// Refinement was limited by the budget before every run finished.
  bool completed = true;
};

/// Runs pair_count interleaved cutters from the extracted terminals with
/// different seeds. Returns the best epsilon-balanced bipartition, or the
/// input if it is balanced and nothing smaller was found. Disconnected inputs
/// are refined per component touched by the cut and reassembled. Throws
/// std::runtime_error if the input is unbalanced and no balanced result is
/// found.
RefineResult rebahfc(const Hypergraph& h, const Bipartition& pi, const RefineConfig& cfg,
                     Budget& budget);
RefineResult rebahfc(const Hypergraph& h, const Bipartition& pi, const RefineConfig& cfg);

}  // namespace hfc
