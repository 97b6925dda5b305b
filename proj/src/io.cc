#include "hfc/io.h"

#include <charconv>
#include <fstream>
#include <string_view>

namespace hfc {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits a line into unsigned integers. Returns false on any non-numeric token.
bool parse_numbers(std::string_view line, std::vector<std::uint64_t>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    if (i == line.size()) break;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() || (ptr != line.data() + line.size() && !is_blank(*ptr))) {
      return false;
    }
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return true;
}

bool is_comment(std::string_view line) { return !line.empty() && line.front() == '%'; }

bool is_empty_line(std::string_view line) {
  for (const char c : line) {
    if (!is_blank(c)) return false;
  }
  return true;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open " + path.string());
  }
  return in;
}

}  // namespace

LoadedHypergraph read_hmetis(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::uint64_t> numbers;

  auto fail = [&](const std::string& what) -> InputError {
    return InputError("line " + std::to_string(line_no) + ": " + what);
  };

  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line) || is_empty_line(line)) continue;
    have_header = true;
    break;
  }
  if (!have_header) {
    throw InputError("missing header");
  }
  if (!parse_numbers(line, numbers) || numbers.size() < 2 || numbers.size() > 3) {
    throw fail("malformed header, expected 'm n'");
  }
  if (numbers.size() == 3 && numbers[2] != 0) {
    throw fail("weighted hMETIS format (fmt " + std::to_string(numbers[2]) + ") is not supported");
  }
  const std::uint64_t m = numbers[0];
  const std::uint64_t n = numbers[1];
  if (n > std::numeric_limits<VertexId>::max() - 1 || m > std::numeric_limits<EdgeId>::max() - 1) {
    throw fail("hypergraph too large");
  }

  LoadedHypergraph result;
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(m);
  std::vector<std::uint64_t> last_seen(n, std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t e = 0; e < m;) {
    if (!std::getline(in, line)) {
      throw InputError("unexpected end of file: expected " + std::to_string(m) +
                       " hyperedges, found " + std::to_string(e));
    }
    ++line_no;
    if (is_comment(line)) continue;
    if (!parse_numbers(line, numbers)) {
      throw fail("malformed hyperedge");
    }
    std::vector<VertexId> pins;
    pins.reserve(numbers.size());
    for (const std::uint64_t pin : numbers) {
      if (pin < 1 || pin > n) {
        throw fail("pin " + std::to_string(pin) + " out of range [1, " + std::to_string(n) + "]");
      }
      if (last_seen[pin - 1] == e) {
        throw fail("duplicate pin " + std::to_string(pin));
      }
      last_seen[pin - 1] = e;
      pins.push_back(static_cast<VertexId>(pin - 1));
    }
    if (pins.size() < 2) {
      ++result.dropped_hyperedges;
    } else {
      edges.push_back(std::move(pins));
    }
    ++e;
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_comment(line) && !is_empty_line(line)) {
      throw fail("unexpected content after the last hyperedge");
    }
  }
  result.hypergraph = Hypergraph(static_cast<std::uint32_t>(n), edges);
  return result;
}

LoadedHypergraph load_hmetis(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_hmetis(in);
}

void write_hmetis(std::ostream& out, const Hypergraph& h) {
  out << h.num_edges() << ' ' << h.num_vertices() << '\n';
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool first = true;
    for (const VertexId v : h.pins(e)) {
      if (!first) out << ' ';
      out << v + 1;
      first = false;
    }
    out << '\n';
  }
}

void save_hmetis(const std::filesystem::path& path, const Hypergraph& h) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_hmetis(out, h);
}

std::vector<BlockId> read_partition(std::istream& in, std::uint32_t num_vertices) {
  std::vector<BlockId> assignment;
  assignment.reserve(num_vertices);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && is_blank(view.back())) view.remove_suffix(1);
    while (!view.empty() && is_blank(view.front())) view.remove_prefix(1);
    if (view.empty()) continue;
    if (view == "0" || view == "1") {
      assignment.push_back(static_cast<BlockId>(view[0] - '0'));
    } else {
      throw InputError("line " + std::to_string(line_no) + ": block id '" + std::string(view) +
                       "' is not 0 or 1");
    }
  }
  if (assignment.size() != num_vertices) {
    throw InputError("partition has " + std::to_string(assignment.size()) +
                     " entries, hypergraph has " + std::to_string(num_vertices) + " vertices");
  }
  return assignment;
}

std::vector<BlockId> load_partition(const std::filesystem::path& path,
                                    std::uint32_t num_vertices) {
  auto in = open_input(path);
  return read_partition(in, num_vertices);
}

void write_partition(std::ostream& out, std::span<const BlockId> assignment) {
  for (const BlockId b : assignment) {
    out << static_cast<char>('0' + b) << '\n';
  }
}

void save_partition(const std::filesystem::path& path, std::span<const BlockId> assignment) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_partition(out, assignment);
}

}  // namespace hfc
