#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hfc {

/// Exact non-negative rational number. Used for the imbalance parameter and
/// the corridor threshold so that block-size limits never depend on binary
/// floating point rounding.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::uint64_t numerator, std::uint64_t denominator);

  /// Parses a decimal literal such as "0", "0.03" or ".46". At most 9
  /// fractional digits are accepted. Throws std::invalid_argument.
  static Ratio parse_decimal(std::string_view text);

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// floor(ratio * n)
  std::uint64_t floor_times(std::uint64_t n) const;

  /// Shortest decimal rendering if the denominator is a power of ten,
  /// "num/den" otherwise.
  std::string to_string() const;

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Ratio& a, const Ratio& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// ceil((1 + epsilon) * n / 2), the largest admissible block size.
std::uint64_t max_block_size(std::uint64_t n, const Ratio& epsilon);

}  // namespace hfc
