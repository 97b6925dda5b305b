#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "hfc/disconnected.h"
#include "hfc/executor.h"
#include "hfc/hypergraph.h"

namespace hfc {

enum class RunStatus { Ok, Timeout, Unbalanced, ZeroCut };

std::string_view to_string(RunStatus status);

struct PartitionResult {
  RunStatus status = RunStatus::Ok;
  std::optional<Bipartition> partition;
  std::uint32_t components = 1;
};

/// Partitions any hypergraph. Connected inputs run the configured terminal
/// pairs (waves or a fixed number of random pairs). Disconnected inputs first
/// try a zero cut by subset sum; otherwise every component that may have to
/// be split gets its own random pairs, proportional to its size and at least
/// one, and the combiner assembles the result.
PartitionResult partition_hypergraph(const Hypergraph& h, const ExecutorConfig& cfg,
                                     std::uint64_t sample_budget = kDefaultSampleBudget);

}  // namespace hfc
