#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using BitVec = std::vector<std::uint8_t>;   // entries 0/1
using SymbolVec = std::vector<int>;         // dense output-symbol indices

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Compensated accumulation for long probability sums.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Bit vector <-> integer, first element most significant.
inline std::uint64_t bits_to_uint(const BitVec& v) {
  std::uint64_t x = 0;
  for (auto b : v) x = (x << 1) | (b & 1u);
  return x;
}

inline BitVec uint_to_bits(std::uint64_t x, int width) {
  BitVec v(static_cast<std::size_t>(width));
  for (int j = width - 1; j >= 0; --j) {
    v[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(x & 1u);
    x >>= 1;
  }
  return v;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
  require(is_power_of_two(n), "length must be a power of two");
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace polar
