#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "polar/code.hpp"
#include "polar/common.hpp"
#include "polar/oracle.hpp"
#include "polar/rng.hpp"

using namespace polar;

TEST_CASE("bit reversal permutation") {
  CHECK(bit_reversal_perm(0) == std::vector<int>{1});
  CHECK(bit_reversal_perm(1) == std::vector<int>{1, 2});
  CHECK(bit_reversal_perm(2) == std::vector<int>{1, 3, 2, 4});
  for (int n = 1; n <= 6; ++n) {
    auto perm = bit_reversal_perm(n);
    for (std::size_t i = 0; i < perm.size(); ++i)
      CHECK(perm[static_cast<std::size_t>(perm[i] - 1)] == static_cast<int>(i) + 1);
  }
}

TEST_CASE("length-2 transform") {
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2) {
      BitVec m = {static_cast<std::uint8_t>(m1), static_cast<std::uint8_t>(m2)};
      CHECK(polar_transform(m) ==
            BitVec{static_cast<std::uint8_t>(m1 ^ m2), static_cast<std::uint8_t>(m2)});
    }
  CHECK(polar_transform(BitVec{1}) == BitVec{1});
}

TEST_CASE("pinned length-4 encoding") {
  PolarCodeSpec spec(2, {3, 4}, BitVec{0, 0});
  CHECK(spec.assemble(BitVec{1, 0}) == BitVec{0, 0, 1, 0});
  CHECK(encode(spec, BitVec{1, 0}) == BitVec{1, 1, 0, 0});
  CHECK(oracle::polar_transform_dense(BitVec{0, 0, 1, 0}) == BitVec{1, 1, 0, 0});
}

TEST_CASE("transform equals the dense product at N=8") {
  for (std::uint64_t v = 0; v < 256; ++v) {
    BitVec m = uint_to_bits(v, 8);
    CHECK(polar_transform(m) == oracle::polar_transform_dense(m));
  }
}

TEST_CASE("transform is an involution") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    BitVec m(64);
    for (auto& b : m) b = static_cast<std::uint8_t>(rng.next() >> 63);
    CHECK(polar_transform(polar_transform(m)) == m);
  }
  CHECK_THROWS_AS(polar_transform(BitVec(3, 0)), std::invalid_argument);
}

TEST_CASE("code spec validation") {
  CHECK_THROWS_AS(PolarCodeSpec(2, {4, 3}, BitVec{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PolarCodeSpec(2, {3, 3}, BitVec{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PolarCodeSpec(2, {0, 1}, BitVec{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PolarCodeSpec(2, {5}, BitVec{0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PolarCodeSpec(2, {3, 4}, BitVec{0}), std::invalid_argument);
  CHECK_NOTHROW(PolarCodeSpec(2, {}, BitVec{1, 0, 1, 1}));
}

TEST_CASE("assembly, projection, and the frozen complement") {
  PolarCodeSpec spec(2, {1, 4}, BitVec{1, 0});
  CHECK(spec.K() == 2);
  CHECK(spec.rate() == 0.5);
  CHECK(spec.frozen_set() == std::vector<int>{2, 3});
  BitVec m = spec.assemble(BitVec{1, 1});
  CHECK(m == BitVec{1, 1, 0, 1});
  CHECK(spec.info_projection(m) == BitVec{1, 1});
  CHECK(spec.info_mask() == std::vector<std::uint8_t>{1, 0, 0, 1});
  CHECK_THROWS_AS(spec.assemble(BitVec{1}), std::invalid_argument);
}
