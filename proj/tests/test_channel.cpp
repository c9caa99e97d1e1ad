#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polar/channel.hpp"
#include "polar/rng.hpp"

using namespace polar;

TEST_CASE("bsc table, capacity, and bhattacharyya") {
  DmcChannel ch = DmcChannel::bsc(0.1);
  CHECK(ch.alphabet_size() == 2);
  CHECK(ch.transition(0, 0) == 0.9);
  CHECK(ch.transition(0, 1) == 0.1);
  CHECK(ch.transition(1, 0) == 0.1);
  CHECK(ch.transition(1, 1) == 0.9);
  CHECK(std::abs(symmetric_capacity(ch) - 0.5310044064107188) < 1e-12);
  CHECK(std::abs(bhattacharyya(ch) - 0.6) < 1e-12);
}

TEST_CASE("bec table, capacity, and bhattacharyya") {
  DmcChannel ch = DmcChannel::bec(0.3);
  CHECK(ch.alphabet_size() == 3);
  CHECK(ch.transition(0, 0) == 0.7);
  CHECK(ch.transition(0, 1) == 0.0);
  CHECK(ch.transition(0, kBecErasureSymbol) == 0.3);
  CHECK(ch.transition(1, kBecErasureSymbol) == 0.3);
  CHECK(std::abs(symmetric_capacity(ch) - 0.7) < 1e-12);
  CHECK(std::abs(bhattacharyya(ch) - 0.3) < 1e-15);
  CHECK(bhattacharyya(DmcChannel::bec(0.25)) == 0.25);
  CHECK(std::abs(bhattacharyya(DmcChannel::bec(0.9)) - 0.9) < 1e-15);
}

TEST_CASE("factory parameter validation") {
  CHECK_THROWS_AS(DmcChannel::bsc(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(DmcChannel::bsc(1.5), std::invalid_argument);
  CHECK_THROWS_AS(DmcChannel::bec(2.0), std::invalid_argument);
  CHECK_NOTHROW(make_channel(ChannelKind::BSC, 0.5));
  CHECK_THROWS_AS(make_channel(ChannelKind::Explicit, 0.1), std::invalid_argument);
}

TEST_CASE("explicit tables are validated") {
  Eigen::Matrix<double, 2, Eigen::Dynamic> t(2, 2);

  t << 0.5, 0.4, 0.5, 0.5;  // first row sums to 0.9
  CHECK_THROWS_AS(DmcChannel::explicit_table(t), std::invalid_argument);

  t << 1.1, -0.1, 0.5, 0.5;
  CHECK_THROWS_AS(DmcChannel::explicit_table(t), std::invalid_argument);

  t << 0.9, 0.1, 0.1, 0.9;
  CHECK_NOTHROW(DmcChannel::explicit_table(t, std::vector<int>{1, 0}));
  // pairing must map the W(.|1) row onto the W(.|0) row
  CHECK_THROWS_AS(DmcChannel::explicit_table(t, std::vector<int>{0, 1}), std::invalid_argument);
  // and must be an involution
  Eigen::Matrix<double, 2, Eigen::Dynamic> u(2, 3);
  u << 0.5, 0.25, 0.25, 0.25, 0.5, 0.25;
  CHECK_THROWS_AS(DmcChannel::explicit_table(u, std::vector<int>{1, 1, 2}), std::invalid_argument);
  CHECK_NOTHROW(DmcChannel::explicit_table(u, std::vector<int>{1, 0, 2}));
}

TEST_CASE("symmetry pairing and its application") {
  DmcChannel bsc = DmcChannel::bsc(0.2);
  CHECK(bsc.has_pairing());
  CHECK(bsc.pairing(0) == 1);
  CHECK(bsc.pairing(1) == 0);
  CHECK(apply_symmetry(bsc, 0, 1) == 1);
  CHECK(apply_symmetry(bsc, 1, 1) == 0);

  DmcChannel bec = DmcChannel::bec(0.5);
  CHECK(bec.pairing(kBecErasureSymbol) == kBecErasureSymbol);
  CHECK(apply_symmetry(bec, 1, kBecErasureSymbol) == kBecErasureSymbol);
  CHECK(apply_symmetry(bec, 1, 0) == 1);

  SymbolVec y = {0, 1, kBecErasureSymbol, 0};
  BitVec x = {1, 0, 1, 1};
  CHECK(apply_symmetry(bec, x, y) == SymbolVec{1, 1, kBecErasureSymbol, 1});
  CHECK_THROWS_AS(apply_symmetry(bec, BitVec{1}, y), std::invalid_argument);

  Eigen::Matrix<double, 2, Eigen::Dynamic> t(2, 2);
  t << 0.9, 0.1, 0.1, 0.9;
  DmcChannel plain = DmcChannel::explicit_table(t);
  CHECK_FALSE(plain.has_pairing());
  CHECK_THROWS_AS(apply_symmetry(plain, 1, 0), std::invalid_argument);
}

TEST_CASE("sampling matches the transition law") {
  const int trials = 1000000;

  SplitMix64 rng = substream(99, 0, 0);
  DmcChannel bsc = DmcChannel::bsc(0.1);
  int flips = 0;
  for (int t = 0; t < trials; ++t) flips += sample_output(bsc, 0, rng) == 1;
  CHECK(std::abs(flips / double(trials) - 0.1) < 1e-3);

  DmcChannel bec = DmcChannel::bec(0.5);
  int erased = 0;
  for (int t = 0; t < trials; ++t) {
    int y = sample_output(bec, 1, rng);
    if (y == kBecErasureSymbol)
      ++erased;
    else
      CHECK(y == 1);  // a non-erased symbol reproduces the input
  }
  CHECK(std::abs(erased / double(trials) - 0.5) < 2e-3);

  CHECK_THROWS_AS(sample_output(bsc, 2, rng), std::invalid_argument);
}
