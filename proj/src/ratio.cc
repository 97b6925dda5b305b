#include "hfc/ratio.h"

#include <numeric>
#include <stdexcept>

namespace hfc {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

Ratio::Ratio(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("ratio with zero denominator");
  }
  const std::uint64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

Ratio Ratio::parse_decimal(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty decimal");
  }
  std::uint64_t integral = 0;
  std::uint64_t fraction = 0;
  std::uint64_t scale = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  int fraction_digits = 0;
  int integral_digits = 0;
  for (const char c : text) {
    if (c == '.') {
      if (seen_dot) {
        throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
      }
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    seen_digit = true;
    const auto digit = static_cast<std::uint64_t>(c - '0');
    if (seen_dot) {
      if (++fraction_digits > 9) {
        throw std::invalid_argument("too many fractional digits in '" + std::string(text) + "'");
      }
      fraction = fraction * 10 + digit;
      scale *= 10;
    } else {
      if (++integral_digits > 9) {
        throw std::invalid_argument("decimal out of range '" + std::string(text) + "'");
      }
      integral = integral * 10 + digit;
    }
  }
  if (!seen_digit) {
    throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  }
  return Ratio(integral * scale + fraction, scale);
}

std::uint64_t Ratio::floor_times(std::uint64_t n) const {
  return static_cast<std::uint64_t>(static_cast<u128>(num_) * n / den_);
}

std::string Ratio::to_string() const {
  // Smallest power of ten divisible by the denominator, if any fits.
  std::uint64_t scale = 1;
  int digits = 0;
  while (scale % den_ != 0) {
    if (digits == 18) {
      return std::to_string(num_) + "/" + std::to_string(den_);
    }
    scale *= 10;
    ++digits;
  }
  const u128 scaled = static_cast<u128>(num_) * (scale / den_);
  std::string out = std::to_string(static_cast<std::uint64_t>(scaled / scale));
  if (digits > 0) {
    std::string frac = std::to_string(static_cast<std::uint64_t>(scaled % scale));
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  return out;
}

bool operator<(const Ratio& a, const Ratio& b) {
  return static_cast<u128>(a.num_) * b.den_ < static_cast<u128>(b.num_) * a.den_;
}

std::uint64_t max_block_size(std::uint64_t n, const Ratio& epsilon) {
  const u128 numerator = (static_cast<u128>(epsilon.denominator()) + epsilon.numerator()) * n;
  const u128 denominator = static_cast<u128>(2) * epsilon.denominator();
  return static_cast<std::uint64_t>((numerator + denominator - 1) / denominator);
}

}  // namespace hfc
