#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polar/construction.hpp"
#include "polar/decode.hpp"
#include "polar/rng.hpp"

using namespace polar;

namespace {

PolarCodeSpec bec_half_rate(int n) {
  ZProfile prof = z_profile(DmcChannel::bec(0.5), n, ZMethod::BecExact);
  auto picked = select_polar_set(prof, prof.N / 2);
  return PolarCodeSpec(n, picked.first, BitVec(static_cast<std::size_t>(prof.N / 2), 0));
}

}  // namespace

TEST_CASE("single channel use") {
  PolarCodeSpec spec(0, {1}, BitVec{});
  DmcChannel ch = DmcChannel::bsc(0.1);
  CHECK(sc_decode(spec, ch, SymbolVec{0}) == BitVec{0});
  CHECK(sc_decode(spec, ch, SymbolVec{1}) == BitVec{1});
  CHECK_THROWS_AS(sc_decode(spec, ch, SymbolVec{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(sc_decode(spec, ch, SymbolVec{5}), std::invalid_argument);
}

TEST_CASE("erasure tie decides zero") {
  // both values of the first bit explain (erasure, 1) equally well
  PolarCodeSpec spec(1, {1, 2}, BitVec{});
  DmcChannel ch = DmcChannel::bec(0.5);
  CHECK(sc_decode(spec, ch, SymbolVec{kBecErasureSymbol, 1}) == BitVec{0, 1});
  CHECK(sc_decode(spec, ch, SymbolVec{kBecErasureSymbol, kBecErasureSymbol}) == BitVec{0, 0});
  CHECK(sc_decode(spec, ch, SymbolVec{1, 0}) == BitVec{1, 0});
}

TEST_CASE("most likely selection and its tie rule") {
  std::vector<DecodePath> cands = {
      {BitVec{0, 1}, -3.0}, {BitVec{1, 0}, -3.0}, {BitVec{0, 0}, -5.0}, {BitVec{1, 1}, -9.0}};
  CHECK(most_likely_select(cands, 1) == std::vector<BitVec>{BitVec{0, 1}});
  CHECK(most_likely_select(cands, 2) == std::vector<BitVec>{BitVec{0, 1}, BitVec{1, 0}});
  CHECK(most_likely_select(cands, 3) ==
        std::vector<BitVec>{BitVec{0, 0}, BitVec{0, 1}, BitVec{1, 0}});
  CHECK(most_likely_select(cands, 10).size() == 4);

  // metrics inside the tolerance band count as tied
  std::vector<DecodePath> close_pair = {{BitVec{1}, 0.0}, {BitVec{0}, -5e-12}};
  CHECK(most_likely_select(close_pair, 1) == std::vector<BitVec>{BitVec{0}});
  std::vector<DecodePath> separated = {{BitVec{1}, 0.0}, {BitVec{0}, -1.0}};
  CHECK(most_likely_select(separated, 1) == std::vector<BitVec>{BitVec{1}});

  CHECK_THROWS_AS(most_likely_select({{BitVec{0}, 0.0}, {BitVec{0, 1}, 0.0}}, 1),
                  std::invalid_argument);
}

TEST_CASE("list schedule validation") {
  CHECK_THROWS_AS(ListSchedule(std::vector<int>{2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ListSchedule(std::vector<int>{0, 1}), std::invalid_argument);
  ListSchedule s(std::vector<int>{1, 2, 4});
  CHECK(s.max_size() == 4);
  CHECK(s.info_count() == 3);
  CHECK(ListSchedule::constant(3, 2).sizes() == std::vector<int>{3, 3});
}

TEST_CASE("single-entry list reproduces the sequential decoder") {
  PolarCodeSpec spec = bec_half_rate(3);
  DmcChannel ch = DmcChannel::bec(0.5);
  ListDecoder engine(spec, ch, ListSchedule::constant(1, spec.K()));
  SplitMix64 rng = substream(11, 0, 3);
  for (int t = 0; t < 100; ++t) {
    SymbolVec y(8);
    for (auto& s : y) s = sample_output(ch, static_cast<int>(rng.next() & 1), rng);
    CHECK(engine.decode(y).winner == sc_decode(spec, ch, y));
  }
}

TEST_CASE("final list is sorted best-first") {
  PolarCodeSpec spec = bec_half_rate(3);
  DmcChannel ch = DmcChannel::bec(0.5);
  SplitMix64 rng = substream(12, 0, 1);
  for (int t = 0; t < 50; ++t) {
    SymbolVec y(8);
    for (auto& s : y) s = sample_output(ch, static_cast<int>(rng.next() & 1), rng);
    SclResult res = scl_decode(spec, ch, y, 4);
    REQUIRE(!res.final_list.paths.empty());
    CHECK(res.final_list.paths.size() <= 4);
    CHECK(res.winner == res.final_list.paths[0].prefix);
    for (std::size_t j = 1; j < res.final_list.paths.size(); ++j)
      CHECK(res.final_list.paths[j - 1].log_metric >=
            res.final_list.paths[j].log_metric - kMetricTieTolerance);
  }
}

TEST_CASE("schedule caps early forks") {
  PolarCodeSpec spec(2, {3, 4}, BitVec{0, 0});
  DmcChannel ch = DmcChannel::bsc(0.1);
  DecodeTrace trace;
  scl_decode(spec, ch, SymbolVec{0, 1, 1, 0}, ListSchedule(std::vector<int>{1, 2}), &trace);
  REQUIRE(trace.size() == 4);
  CHECK_FALSE(trace[0].is_info);
  CHECK_FALSE(trace[1].is_info);
  CHECK(trace[2].is_info);
  CHECK(trace[3].is_info);
  CHECK(trace[2].survivors.paths.size() <= 1);
  CHECK(trace[2].candidates.size() == 2);
  CHECK(trace[3].survivors.paths.size() <= 2);
  for (const auto& stage : trace)
    for (const auto& p : stage.survivors.paths) CHECK(p.prefix.size() == std::size_t(stage.index));
}

TEST_CASE("all-frozen code decodes to the frozen word") {
  PolarCodeSpec spec(1, {}, BitVec{1, 0});
  DmcChannel ch = DmcChannel::bsc(0.1);
  SclResult res = scl_decode(spec, ch, SymbolVec{0, 0}, 2);
  CHECK(res.winner == BitVec{1, 0});
  CHECK(res.final_list.paths.size() == 1);
  CHECK(std::isfinite(res.final_list.paths[0].log_metric));
  CHECK(sc_decode(spec, ch, SymbolVec{0, 0}) == BitVec{1, 0});
}

TEST_CASE("genie ratios") {
  DmcChannel bsc = DmcChannel::bsc(0.1);
  auto r0 = genie_ratios(bsc, SymbolVec{0}, BitVec{0});
  REQUIRE(r0.size() == 1);
  CHECK(std::abs(r0[0] - 0.3 / 0.9) < 1e-12);
  auto r1 = genie_ratios(bsc, SymbolVec{0}, BitVec{1});
  CHECK(std::abs(r1[0] - 3.0) < 1e-12);

  DmcChannel bec = DmcChannel::bec(0.5);
  CHECK(genie_ratios(bec, SymbolVec{kBecErasureSymbol}, BitVec{0})[0] == 1.0);
  CHECK(genie_ratios(bec, SymbolVec{0}, BitVec{0})[0] == 0.0);
}
