#pragma once

#include <cstdint>

#include "hfc/hypergraph.h"
#include "hfc/ratio.h"

namespace hfc {

/// Breadth-first region growing from a random vertex until block 0 holds
/// floor(n / 2) vertices, followed by one Fiduccia-Mattheyses pass that starts
/// from the boundary. The result is always epsilon-balanced.
Bipartition baseline_partition(const Hypergraph& h, const Ratio& epsilon, std::uint64_t seed);

/// Region-growing step alone.
std::vector<BlockId> grow_region(const Hypergraph& h, std::uint64_t seed);

/// One FM pass on a balanced assignment. Moves may exceed the block size limit
/// by one vertex in between; the pass is rolled back to the best balanced
/// prefix, so the cut never increases.
void fm_pass(const Hypergraph& h, std::vector<BlockId>& assignment, const Ratio& epsilon);

}  // namespace hfc
