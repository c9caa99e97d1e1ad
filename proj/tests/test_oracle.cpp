#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polar/construction.hpp"
#include "polar/oracle.hpp"

using namespace polar;

namespace {

// Frozen outputs of the first oracle run for the (N=4, info {3,4}, zero
// frozen, BSC(0.1), L=2) instance; regression-pinned, not derived by hand.
constexpr double kPinnedListMissL2 = 0.028000000000000008;
constexpr double kPinnedAvgErrorL2 = 0.19000000000000006;

bool next_output(SymbolVec& y, int q) {
  for (int j = static_cast<int>(y.size()) - 1; j >= 0; --j) {
    if (++y[static_cast<std::size_t>(j)] < q) return true;
    y[static_cast<std::size_t>(j)] = 0;
  }
  return false;
}

const int kErase = kBecErasureSymbol;

DmcChannel asymmetric_ternary() {
  Eigen::Matrix<double, 2, Eigen::Dynamic> t(2, 3);
  t << 0.5, 0.25, 0.25, 0.25, 0.5, 0.25;
  return DmcChannel::explicit_table(t, std::vector<int>{1, 0, 2});
}

}  // namespace

TEST_CASE("dense generator structure") {
  Eigen::MatrixXi g = oracle::dense_generator(2);
  Eigen::MatrixXi expect(4, 4);
  expect << 1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 1, 1, 1;
  CHECK(g == expect);
  CHECK(oracle::dense_generator(0) == Eigen::MatrixXi::Identity(1, 1));
  CHECK_THROWS_AS(oracle::dense_generator(17), std::invalid_argument);
}

TEST_CASE("block likelihood is the transition product") {
  DmcChannel ch = DmcChannel::bsc(0.1);
  CHECK(oracle::wn_exact(ch, SymbolVec{0, 1}, BitVec{1, 0}) == 0.1 * 0.1);
  CHECK(oracle::wn_exact(ch, SymbolVec{0, 0}, BitVec{0, 0}) == 0.9 * 0.9);
  // m = (1,0) maps to x = (1,0)
  CHECK(oracle::wn_exact(ch, SymbolVec{1, 0}, BitVec{1, 0}) == 0.9 * 0.9);
}

TEST_CASE("coordinate channel pinned value") {
  DmcChannel ch = DmcChannel::bec(0.5);
  CHECK(oracle::wn_split_exact(ch, 2, SymbolVec{kErase, 1}, BitVec{}, 0) == 0.125);
  CHECK(oracle::wn_split_exact(ch, 2, SymbolVec{kErase, 1}, BitVec{}, 1) == 0.125);
  CHECK(oracle::wn_split_exact(ch, 2, SymbolVec{0, 1}, BitVec{}, 0) == 0.0);
}

TEST_CASE("coordinate channels marginalize consistently") {
  for (const DmcChannel& ch : {DmcChannel::bsc(0.1), DmcChannel::bec(0.5)}) {
    const int N = 4, q = ch.alphabet_size();
    SymbolVec y(static_cast<std::size_t>(N), 0);
    do {
      for (int i = 2; i <= N; ++i) {
        for (std::uint64_t pv = 0; pv < (std::uint64_t{1} << (i - 1)); ++pv) {
          BitVec prefix = uint_to_bits(pv, i - 1);
          BitVec head(prefix.begin(), prefix.end() - 1);
          const double folded = 0.5 * (oracle::wn_split_exact(ch, N, y, prefix, 0) +
                                       oracle::wn_split_exact(ch, N, y, prefix, 1));
          const double parent = oracle::wn_split_exact(ch, N, y, head, prefix.back());
          CHECK(std::abs(folded - parent) <= 1e-12);
        }
      }
    } while (next_output(y, q));
  }
}

TEST_CASE("coordinate channels are normalized") {
  for (const DmcChannel& ch : {DmcChannel::bsc(0.1), DmcChannel::bec(0.5)}) {
    const int N = 4, q = ch.alphabet_size();
    for (int i = 1; i <= N; ++i) {
      KahanSum total;
      SymbolVec y(static_cast<std::size_t>(N), 0);
      do {
        for (std::uint64_t pv = 0; pv < (std::uint64_t{1} << (i - 1)); ++pv) {
          BitVec prefix = uint_to_bits(pv, i - 1);
          for (int b = 0; b < 2; ++b)
            total.add(std::ldexp(oracle::wn_split_exact(ch, N, y, prefix, b), -i));
        }
      } while (next_output(y, q));
      CHECK(std::abs(total.value() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("single-use parameter equals the channel parameter bit for bit") {
  for (const DmcChannel& ch : {DmcChannel::bsc(0.1), DmcChannel::bec(0.3), asymmetric_ternary()})
    CHECK(oracle::z_exact(ch, 1, 1) == bhattacharyya(ch));
}

TEST_CASE("pinned two-use parameters") {
  DmcChannel bec = DmcChannel::bec(0.5);
  CHECK(oracle::z_exact(bec, 2, 1) == 0.75);
  CHECK(oracle::z_exact(bec, 2, 2) == 0.25);
  DmcChannel bsc = DmcChannel::bsc(0.1);
  CHECK(std::abs(oracle::z_exact(bsc, 2, 2) - 0.36) < 1e-12);
  CHECK(oracle::z_exact(bsc, 2, 1) <= 1.0);
  CHECK(oracle::z_exact(bsc, 2, 1) >= 0.6);  // combining can only hurt one use

  CHECK_THROWS_AS(oracle::z_exact(bsc, 16, 1), std::invalid_argument);
  CHECK_THROWS_AS(oracle::z_exact(bsc, 2, 3), std::invalid_argument);
}

TEST_CASE("exhaustive ml decoding and its tie rule") {
  PolarCodeSpec spec(1, {1, 2}, BitVec{});
  DmcChannel bsc = DmcChannel::bsc(0.1);
  CHECK(oracle::ml_decode_exact(spec, bsc, SymbolVec{0, 1}) == BitVec{1, 1});
  CHECK(oracle::ml_decode_exact(spec, bsc, SymbolVec{0, 0}) == BitVec{0, 0});

  DmcChannel bec = DmcChannel::bec(0.5);
  // (0,1) and (1,1) tie; the smaller info word wins
  CHECK(oracle::ml_decode_exact(spec, bec, SymbolVec{kErase, 1}) == BitVec{0, 1});

  PolarCodeSpec frozen_first(1, {2}, BitVec{1});
  CHECK(oracle::ml_decode_exact(frozen_first, bsc, SymbolVec{0, 0}) == BitVec{1, 0});
}

TEST_CASE("exact report for the sequential decoder") {
  PolarCodeSpec spec(2, {3, 4}, BitVec{0, 0});
  DmcChannel ch = DmcChannel::bsc(0.1);
  auto rep = oracle::exact_error_report(spec, ch, oracle::RefDecoder::SC);
  CHECK(rep.N == 4);
  CHECK(rep.K == 2);
  CHECK(rep.k == 2);
  CHECK_FALSE(rep.list_miss.has_value());
  REQUIRE(rep.per_message_error.size() == 4);
  KahanSum mean;
  double peak = 0.0;
  for (double e : rep.per_message_error) {
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
    mean.add(e);
    peak = std::max(peak, e);
  }
  CHECK(std::abs(rep.average_error - mean.value() / 4.0) <= 1e-15);
  CHECK(rep.max_error == peak);
}

TEST_CASE("pinned list report regression") {
  PolarCodeSpec spec(2, {3, 4}, BitVec{0, 0});
  DmcChannel ch = DmcChannel::bsc(0.1);
  auto rep = oracle::exact_error_report(spec, ch, oracle::RefDecoder::SCL, 2);
  REQUIRE(rep.list_miss.has_value());
  CHECK(rep.list_miss.value() == kPinnedListMissL2);
  CHECK(rep.average_error == kPinnedAvgErrorL2);
  REQUIRE(rep.per_message_list_miss.size() == 4);
  // a missed message can never be the selected winner
  for (std::size_t m = 0; m < 4; ++m)
    CHECK(rep.per_message_list_miss[m] <= rep.per_message_error[m] + 1e-15);
}

TEST_CASE("sequential error bound averaged over frozen words") {
  DmcChannel ch = DmcChannel::bsc(0.1);
  for (int n : {1, 2}) {
    const int N = 1 << n, K = N / 2;
    ZProfile prof = z_profile(ch, n, ZMethod::OracleExact);
    auto picked = select_polar_set(prof, K);
    KahanSum sum_z;
    for (int i : picked.first) sum_z.add(prof.value(i));
    KahanSum avg;
    const std::uint64_t words = std::uint64_t{1} << (N - K);
    for (std::uint64_t f = 0; f < words; ++f) {
      PolarCodeSpec spec(n, picked.first, uint_to_bits(f, N - K));
      avg.add(oracle::exact_error_report(spec, ch, oracle::RefDecoder::SC).average_error);
    }
    CHECK(avg.value() / static_cast<double>(words) <= sum_z.value());
  }
}

TEST_CASE("retransmission reports condition on acceptance") {
  PolarCodeSpec inner(2, {3, 4}, BitVec{0, 0});
  DmcChannel ch = DmcChannel::bsc(0.1);
  PrecodedCodeSpec retry(inner, PrecoderSpec::crc(1, 2, "11"), Strategy::Retransmission, 1);
  auto rep = oracle::exact_error_report(retry, ch);
  CHECK(rep.k == 1);
  REQUIRE(rep.acceptance_mass.size() == 2);
  for (double a : rep.acceptance_mass) {
    CHECK(a > 0.0);
    CHECK(a <= 1.0 + 1e-12);
  }
  REQUIRE(rep.list_miss.has_value());

  PrecodedCodeSpec fail(inner, PrecoderSpec::crc(1, 2, "11"), Strategy::Failure, 1);
  CHECK(oracle::exact_error_report(fail, ch).acceptance_mass.empty());
}

TEST_CASE("oracle size limits") {
  PolarCodeSpec big(4, {1, 2}, BitVec(14, 0));
  CHECK_THROWS_AS(oracle::exact_error_report(big, DmcChannel::bsc(0.1), oracle::RefDecoder::SC),
                  std::invalid_argument);
}
