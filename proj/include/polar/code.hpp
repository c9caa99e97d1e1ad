#pragma once

#include <vector>

#include "polar/common.hpp"

namespace polar {

// Block code parameters: N = 2^n, information positions (1-based, ascending)
// and the values of the frozen positions in ascending complement order.
struct PolarCodeSpec {
  int n = 0;
  int N = 1;
  std::vector<int> info_set;  // 1-based, strictly increasing
  BitVec frozen_bits;         // length N - |info_set|

  PolarCodeSpec() = default;
  PolarCodeSpec(int n_, std::vector<int> info, BitVec frozen);

  int K() const { return static_cast<int>(info_set.size()); }
  double rate() const { return static_cast<double>(K()) / static_cast<double>(N); }
  std::vector<int> frozen_set() const;  // 1-based complement, ascending

  // Scatter info bits onto the information positions, frozen values elsewhere.
  BitVec assemble(const BitVec& info_bits) const;
  // Gather the information positions of a full length-N vector.
  BitVec info_projection(const BitVec& m) const;

  // is_info[i-1] for 1-based index i
  const std::vector<std::uint8_t>& info_mask() const { return info_mask_; }

 private:
  std::vector<std::uint8_t> info_mask_;
};

// Position i (1-based) maps to perm[i-1] = 1 + bit-reversal of i-1.
std::vector<int> bit_reversal_perm(int n);

// m -> m * G_N over GF(2), where G_N is the bit-reversed Kronecker power of
// the 2x2 lower-triangular kernel. O(N log N), bit-exact equal to the dense
// matrix product.
BitVec polar_transform(const BitVec& m);

BitVec encode(const PolarCodeSpec& spec, const BitVec& info_bits);

}  // namespace polar
