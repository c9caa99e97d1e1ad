#include "polar/code.hpp"

#include <algorithm>

namespace polar {

PolarCodeSpec::PolarCodeSpec(int n_, std::vector<int> info, BitVec frozen)
    : n(n_), N(1 << n_), info_set(std::move(info)), frozen_bits(std::move(frozen)) {
  require(n_ >= 0 && n_ < 31, "code spec: n out of range");
  int prev = 0;
  for (int i : info_set) {
    require(i >= 1 && i <= N, "code spec: information index out of 1..N");
    require(i > prev, "code spec: information set must be strictly increasing");
    prev = i;
  }
  require(static_cast<int>(frozen_bits.size()) == N - K(),
          "code spec: frozen bit count must be N - |info set|");
  for (auto b : frozen_bits) require(b == 0 || b == 1, "code spec: frozen bits must be 0/1");
  info_mask_.assign(static_cast<std::size_t>(N), 0);
  for (int i : info_set) info_mask_[static_cast<std::size_t>(i - 1)] = 1;
}

std::vector<int> PolarCodeSpec::frozen_set() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(N - K()));
  for (int i = 1; i <= N; ++i)
    if (!info_mask_[static_cast<std::size_t>(i - 1)]) out.push_back(i);
  return out;
}

BitVec PolarCodeSpec::assemble(const BitVec& info_bits) const {
  require(static_cast<int>(info_bits.size()) == K(), "assemble: info length must be |info set|");
  BitVec m(static_cast<std::size_t>(N));
  std::size_t a = 0, f = 0;
  for (int i = 0; i < N; ++i) {
    m[static_cast<std::size_t>(i)] =
        info_mask_[static_cast<std::size_t>(i)] ? info_bits[a++] : frozen_bits[f++];
  }
  return m;
}

BitVec PolarCodeSpec::info_projection(const BitVec& m) const {
  require(static_cast<int>(m.size()) == N, "info_projection: length mismatch");
  BitVec out;
  out.reserve(static_cast<std::size_t>(K()));
  for (int i : info_set) out.push_back(m[static_cast<std::size_t>(i - 1)]);
  return out;
}

static std::uint32_t reverse_bits(std::uint32_t x, int n) {
  std::uint32_t r = 0;
  for (int j = 0; j < n; ++j) {
    r = (r << 1) | (x & 1u);
    x >>= 1;
  }
  return r;
}

std::vector<int> bit_reversal_perm(int n) {
  require(n >= 0 && n < 31, "bit_reversal_perm: n out of range");
  const int N = 1 << n;
  std::vector<int> perm(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    perm[static_cast<std::size_t>(i)] = 1 + static_cast<int>(reverse_bits(static_cast<std::uint32_t>(i), n));
  return perm;
}

BitVec polar_transform(const BitVec& m) {
  const std::size_t N = m.size();
  const int n = log2_exact(N);
  BitVec x(N);
  for (std::size_t i = 0; i < N; ++i)
    x[i] = m[reverse_bits(static_cast<std::uint32_t>(i), n)];
  for (std::size_t h = N >> 1; h >= 1; h >>= 1) {
    for (std::size_t base = 0; base < N; base += 2 * h)
      for (std::size_t j = base; j < base + h; ++j) x[j] ^= x[j + h];
    if (h == 1) break;
  }
  return x;
}

BitVec encode(const PolarCodeSpec& spec, const BitVec& info_bits) {
  return polar_transform(spec.assemble(info_bits));
}

}  // namespace polar
