#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfc/hypergraph.h"

namespace hfc {

/// Malformed or inconsistent input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedHypergraph {
  Hypergraph hypergraph;
  /// Hyperedges with fewer than two pins, dropped while reading.
  std::uint32_t dropped_hyperedges = 0;
};

/// Reads the unweighted hMETIS format: a header "m n" followed by m lines of
/// 1-indexed pins. Lines starting with '%' are comments. A trailing format
/// flag is only accepted if it is 0.
LoadedHypergraph read_hmetis(std::istream& in);
LoadedHypergraph load_hmetis(const std::filesystem::path& path);

void write_hmetis(std::ostream& out, const Hypergraph& h);
void save_hmetis(const std::filesystem::path& path, const Hypergraph& h);

/// One block id per line, "0" or "1".
std::vector<BlockId> read_partition(std::istream& in, std::uint32_t num_vertices);
std::vector<BlockId> load_partition(const std::filesystem::path& path, std::uint32_t num_vertices);

void write_partition(std::ostream& out, std::span<const BlockId> assignment);
void save_partition(const std::filesystem::path& path, std::span<const BlockId> assignment);

}  // namespace hfc
