#include "polar/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/common.hpp"
#include "polar/construction.hpp"
#include "polar/decode.hpp"
#include "polar/oracle.hpp"
#include "polar/precode.hpp"
#include "polar/sim.hpp"

namespace polar::verify {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Several checks compare two independently computed values that are equal
// analytically (squared parameters, conditional errors with full acceptance
// mass). A zero-tolerance comparison there would test rounding, not the
// inequality; this slack sits far below every analytically strict margin.
constexpr double kRoundingSlack = 1e-12;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool next_output(SymbolVec& y, int q) {
  for (int j = static_cast<int>(y.size()) - 1; j >= 0; --j) {
    if (++y[static_cast<std::size_t>(j)] < q) return true;
    y[static_cast<std::size_t>(j)] = 0;
  }
  return false;
}

// Rate-K/N code over the K most reliable coordinates, all-zero frozen values.
PolarCodeSpec reliability_spec(const DmcChannel& ch, int n, int K) {
  ZProfile prof = z_profile(ch, n, ZMethod::OracleExact);
  auto picked = select_polar_set(prof, K);
  return PolarCodeSpec(n, picked.first, BitVec(static_cast<std::size_t>(prof.N - K), 0));
}

double sum_over_info(const ZProfile& prof, const std::vector<int>& info) {
  KahanSum s;
  for (int i : info) s.add(prof.value(i));
  return s.value();
}

bool same_report(const SimReport& a, const SimReport& b) {
  return a.trials == b.trials && a.frame_errors == b.frame_errors && a.bit_errors == b.bit_errors &&
         a.list_misses == b.list_misses && a.has_list == b.has_list &&
         a.retx_histogram == b.retx_histogram && a.N == b.N && a.K == b.K && a.k == b.k &&
         a.info_set == b.info_set && a.realized_rate == b.realized_rate && a.fer == b.fer &&
         a.fer_ci95 == b.fer_ci95 && a.ber == b.ber && a.ber_ci95 == b.ber_ci95 &&
         a.list_miss_rate == b.list_miss_rate && a.list_miss_ci95 == b.list_miss_ci95 &&
         a.retx_mean == b.retx_mean;
}

}  // namespace

CheckResult check_transform_dense(const std::vector<int>& exhaustive_n,
                                  const std::vector<int>& random_n, int random_count) {
  CheckResult r{"transform_matches_dense", true, ""};
  long exhaustive_checked = 0;
  for (int N : exhaustive_n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << N); ++v) {
      BitVec m = uint_to_bits(v, N);
      BitVec fast = polar_transform(m);
      if (fast != oracle::polar_transform_dense(m)) {
        r.pass = false;
        r.detail = "mismatch vs dense product at N=" + std::to_string(N) + " m=" + std::to_string(v);
        return r;
      }
      if (polar_transform(fast) != m) {
        r.pass = false;
        r.detail = "involution broken at N=" + std::to_string(N) + " m=" + std::to_string(v);
        return r;
      }
      ++exhaustive_checked;
    }
  }
  long random_checked = 0;
  for (int N : random_n) {
    const int n = log2_exact(static_cast<std::size_t>(N));
    const Eigen::MatrixXi g = oracle::dense_generator(n);
    const int words = (N + 63) / 64;
    // Columns packed into words so the dense product stays cheap at N=1024.
    std::vector<std::vector<std::uint64_t>> cols(
        static_cast<std::size_t>(N), std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i)
        if (g(i, j)) cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i / 64)] |=
            std::uint64_t{1} << (i % 64);
    SplitMix64 rng = substream(0x7ea5f0dd, 7, static_cast<std::uint64_t>(N));
    std::vector<std::uint64_t> mw(static_cast<std::size_t>(words));
    for (int t = 0; t < random_count; ++t) {
      BitVec m(static_cast<std::size_t>(N));
      for (auto& b : m) b = static_cast<std::uint8_t>(rng.next() >> 63);
      BitVec fast = polar_transform(m);
      std::fill(mw.begin(), mw.end(), 0);
      for (int i = 0; i < N; ++i)
        if (m[static_cast<std::size_t>(i)])
          mw[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
      for (int j = 0; j < N; ++j) {
        int parity = 0;
        const auto& cj = cols[static_cast<std::size_t>(j)];
        for (int w = 0; w < words; ++w)
          parity ^= std::popcount(mw[static_cast<std::size_t>(w)] & cj[static_cast<std::size_t>(w)]) & 1;
        if (parity != fast[static_cast<std::size_t>(j)]) {
          r.pass = false;
          r.detail = "mismatch vs dense product at N=" + std::to_string(N) +
                     " trial " + std::to_string(t);
          return r;
        }
      }
      if (polar_transform(fast) != m) {
        r.pass = false;
        r.detail = "involution broken at N=" + std::to_string(N) + " trial " + std::to_string(t);
        return r;
      }
      ++random_checked;
    }
  }
  r.detail = std::to_string(exhaustive_checked) + " exhaustive and " +
             std::to_string(random_checked) + " random vectors agree with the dense product";
  return r;
}

CheckResult check_sc_scl_equivalence() {
  CheckResult r{"sc_equals_list1", true, ""};
  struct Instance {
    DmcChannel ch;
    int n;
  };
  const std::vector<Instance> instances = {{DmcChannel::bsc(0.2), 3}, {DmcChannel::bec(0.5), 2}};
  long total = 0;
  for (const auto& inst : instances) {
    const int N = 1 << inst.n;
    PolarCodeSpec spec = reliability_spec(inst.ch, inst.n, N / 2);
    ListDecoder engine(spec, inst.ch, ListSchedule::constant(1, spec.K()));
    SymbolVec y(static_cast<std::size_t>(N), 0);
    const int q = inst.ch.alphabet_size();
    do {
      if (sc_decode(spec, inst.ch, y) != engine.decode(y).winner) {
        r.pass = false;
        r.detail = inst.ch.label() + " N=" + std::to_string(N) + ": decoder outputs differ";
        return r;
      }
      ++total;
    } while (next_output(y, q));
  }
  r.detail = std::to_string(total) + " output vectors decoded identically by SC and 1-entry SCL";
  return r;
}

CheckResult check_scl_ml_equivalence() {
  CheckResult r{"full_list_equals_ml", true, ""};
  const DmcChannel ch = DmcChannel::bsc(0.2);
  PolarCodeSpec spec = reliability_spec(ch, 3, 4);
  ListDecoder engine(spec, ch, ListSchedule::constant(16, spec.K()));
  SymbolVec y(8, 0);
  long total = 0;
  do {
    if (engine.decode(y).winner != oracle::ml_decode_exact(spec, ch, y)) {
      r.pass = false;
      r.detail = "SCL(16) and exhaustive ML disagree on output vector " + std::to_string(total);
      return r;
    }
    ++total;
  } while (next_output(y, ch.alphabet_size()));
  r.detail = std::to_string(total) + " output vectors: SCL with a full-size list matches ML";
  return r;
}

PropositionGrid proposition_grid(const std::vector<int>& sizes, const std::vector<int>& ls,
                                 bool frozen_average_small) {
  PropositionGrid g;
  double margin1 = kInf, margin2 = kInf;
  const std::vector<DmcChannel> channels = {DmcChannel::bsc(0.1), DmcChannel::bec(0.5)};
  for (const auto& ch : channels) {
    for (int N : sizes) {
      const int n = log2_exact(static_cast<std::size_t>(N));
      const int K = N / 2;
      ZProfile prof = z_profile(ch, n, ZMethod::OracleExact);
      auto picked = select_polar_set(prof, K);
      const double sum_z = sum_over_info(prof, picked.first);
      PolarCodeSpec spec(n, picked.first, BitVec(static_cast<std::size_t>(N - K), 0));
      for (int L : ls) {
        auto rep = oracle::exact_error_report(spec, ch, oracle::RefDecoder::SCL, L);
        const double miss = rep.list_miss.value();
        g.prop1 = g.prop1 && miss <= sum_z;
        g.prop2 = g.prop2 && rep.average_error <= 2.0 * sum_z;
        margin1 = std::min(margin1, sum_z - miss);
        margin2 = std::min(margin2, 2.0 * sum_z - rep.average_error);
        if (frozen_average_small && N <= 4) {
          const std::uint64_t count = std::uint64_t{1} << (N - K);
          KahanSum miss_sum, err_sum;
          for (std::uint64_t f = 0; f < count; ++f) {
            PolarCodeSpec fs(n, picked.first, uint_to_bits(f, N - K));
            auto fr = oracle::exact_error_report(fs, ch, oracle::RefDecoder::SCL, L);
            miss_sum.add(fr.list_miss.value());
            err_sum.add(fr.average_error);
          }
          const double avg_miss = miss_sum.value() / static_cast<double>(count);
          const double avg_err = err_sum.value() / static_cast<double>(count);
          g.prop1 = g.prop1 && avg_miss <= sum_z;
          g.prop2 = g.prop2 && avg_err <= 2.0 * sum_z;
          margin1 = std::min(margin1, sum_z - avg_miss);
          margin2 = std::min(margin2, 2.0 * sum_z - avg_err);
        }
      }
    }
  }
  std::ostringstream det;
  det << "min margin vs Z-sum: " << fmt(margin1) << "; vs twice the Z-sum: " << fmt(margin2);
  g.detail = det.str();
  return g;
}

CheckResult check_propositions(const std::vector<int>& ns, const std::vector<int>& ls,
                               bool include_frozen_average) {
  PropositionGrid g = proposition_grid(ns, ls, include_frozen_average);
  return {"list_error_bounds", g.prop1 && g.prop2, g.detail};
}

CheckResult check_symmetry_identities(int n) {
  CheckResult r{"symmetry_invariance", true, ""};
  const DmcChannel ch = DmcChannel::bsc(0.1);
  const int N = 1 << n;
  const int q = ch.alphabet_size();
  const std::uint64_t top = std::uint64_t{1} << N;
  double worst_block = 0.0, worst_coord = 0.0;
  for (std::uint64_t av = 0; av < top; ++av) {
    const BitVec a = uint_to_bits(av, N);
    const BitVec x = polar_transform(a);
    SymbolVec y(static_cast<std::size_t>(N), 0);
    do {
      const SymbolVec yp = apply_symmetry(ch, x, y);
      for (std::uint64_t mv = 0; mv < top; ++mv) {
        const BitVec m = uint_to_bits(mv, N);
        BitVec ma(m);
        for (int j = 0; j < N; ++j) ma[static_cast<std::size_t>(j)] ^= a[static_cast<std::size_t>(j)];
        worst_block = std::max(std::abs(oracle::wn_exact(ch, y, m) - oracle::wn_exact(ch, yp, ma)),
                               worst_block);
        for (int i = 1; i <= N; ++i) {
          const BitVec prefix(m.begin(), m.begin() + (i - 1));
          const BitVec prefix_a(ma.begin(), ma.begin() + (i - 1));
          const double lhs =
              oracle::wn_split_exact(ch, N, y, prefix, m[static_cast<std::size_t>(i - 1)]);
          const double rhs =
              oracle::wn_split_exact(ch, N, yp, prefix_a, ma[static_cast<std::size_t>(i - 1)]);
          worst_coord = std::max(std::abs(lhs - rhs), worst_coord);
        }
      }
    } while (next_output(y, q));
  }
  r.pass = worst_block <= 1e-12 && worst_coord <= 1e-12;
  r.detail = "max deviation: block " + fmt(worst_block) + ", coordinate " + fmt(worst_coord);
  return r;
}

CheckResult check_construction_consistency() {
  CheckResult r{"construction_consistency", true, ""};
  double worst_bec = 0.0;
  for (double eps : {0.25, 0.5, 0.9}) {
    const DmcChannel ch = DmcChannel::bec(eps);
    for (int N : {2, 4}) {
      const int n = log2_exact(static_cast<std::size_t>(N));
      ZProfile prof = z_profile(ch, n, ZMethod::BecExact);
      for (int i = 1; i <= N; ++i)
        worst_bec = std::max(std::abs(prof.value(i) - oracle::z_exact(ch, N, i)), worst_bec);
    }
  }
  double min_margin = kInf;
  const DmcChannel bsc = DmcChannel::bsc(0.1);
  for (int N : {2, 4}) {
    const int n = log2_exact(static_cast<std::size_t>(N));
    ZProfile prof = z_profile(bsc, n, ZMethod::BoundRecursion);
    for (int i = 1; i <= N; ++i)
      min_margin = std::min(prof.value(i) - oracle::z_exact(bsc, N, i), min_margin);
  }
  r.pass = worst_bec <= 1e-10 && min_margin >= -kRoundingSlack;
  r.detail = "erasure recursion max deviation " + fmt(worst_bec) + "; bound recursion min margin " +
             fmt(min_margin);
  return r;
}

CheckResult check_polarization_trend() {
  CheckResult r{"polarization_fractions", true, ""};
  const DmcChannel ch = DmcChannel::bec(0.5);
  double prev_lo = 0.0, prev_hi = 0.0;
  std::ostringstream det;
  for (int n : {8, 12, 16}) {
    ZProfile prof = z_profile(ch, n, ZMethod::BecExact);
    const double N = static_cast<double>(prof.N);
    const double lo = static_cast<double>((prof.values < 1e-3).count()) / N;
    const double hi = static_cast<double>((prof.values > 1.0 - 1e-3).count()) / N;
    if (lo < prev_lo || hi < prev_hi) r.pass = false;
    prev_lo = lo;
    prev_hi = hi;
    if (n == 16 && (lo < 0.40 || lo > 0.50 || hi < 0.40 || hi > 0.50)) r.pass = false;
    det << "N=2^" << n << ": " << fmt(lo) << " good / " << fmt(hi) << " bad; ";
  }
  det << "both fractions non-decreasing and within [0.40, 0.50] at 2^16";
  r.detail = det.str();
  return r;
}

CheckResult check_precoding_inequalities(const std::vector<int>& ls) {
  CheckResult r{"precoded_error_ordering", true, ""};
  const DmcChannel ch = DmcChannel::bsc(0.1);
  PolarCodeSpec spec = reliability_spec(ch, 3, 4);
  const PrecoderSpec crc = PrecoderSpec::crc(2, 4, "111");
  double min_margin = kInf;
  for (int L : ls) {
    auto inner = oracle::exact_error_report(spec, ch, oracle::RefDecoder::SCL, L);
    oracle::ExactErrorReport reps[3];
    const Strategy strategies[3] = {Strategy::Failure, Strategy::NonFailure,
                                    Strategy::Retransmission};
    for (int s = 0; s < 3; ++s) {
      PrecodedCodeSpec ps(spec, crc, strategies[s], L);
      if (ps.rate() != 0.25) {
        r.pass = false;
        r.detail = "precoded rate is " + fmt(ps.rate()) + ", expected 0.25";
        return r;
      }
      reps[s] = oracle::exact_error_report(ps, ch);
    }
    for (std::uint64_t mv = 0; mv < 4; ++mv) {
      const std::size_t mi = static_cast<std::size_t>(mv);
      const std::size_t inner_idx =
          static_cast<std::size_t>(bits_to_uint(precode(crc, uint_to_bits(mv, 2))));
      const double e_inner = inner.per_message_error[inner_idx];
      const double e_f = reps[0].per_message_error[mi];
      const double e_nf = reps[1].per_message_error[mi];
      const double e_r = reps[2].per_message_error[mi];
      for (double lhs_rhs : {e_inner - e_f, e_inner - e_nf, e_inner - e_r, e_f - e_nf, e_f - e_r})
        min_margin = std::min(min_margin, lhs_rhs);
    }
  }
  if (min_margin < -kRoundingSlack) r.pass = false;
  r.detail = "per-message ordering margin >= " + fmt(min_margin);
  return r;
}

CheckResult check_frozen_indifference() {
  CheckResult r{"frozen_value_indifference", true, ""};
  const DmcChannel ch = DmcChannel::bsc(0.1);
  ZProfile prof = z_profile(ch, 2, ZMethod::OracleExact);
  auto picked = select_polar_set(prof, 2);
  double worst_spread = 0.0;
  for (int L : {1, 2}) {
    double lo = kInf, hi = -kInf;
    for (std::uint64_t f = 0; f < 4; ++f) {
      PolarCodeSpec spec(2, picked.first, uint_to_bits(f, 2));
      auto rep = oracle::exact_error_report(spec, ch, oracle::RefDecoder::SCL, L);
      lo = std::min(lo, rep.average_error);
      hi = std::max(hi, rep.average_error);
    }
    worst_spread = std::max(worst_spread, hi - lo);
  }
  r.pass = worst_spread <= 1e-12;
  r.detail = "average error spread across frozen values: " + fmt(worst_spread);
  return r;
}

CheckResult check_mc_regression(int workers_a, int workers_b) {
  CheckResult r{"simulation_regression", true, ""};
  const std::string base =
      R"({"channel":{"kind":"BEC","param":0.5},)"
      R"("code":{"n":10,"K":256},)"
      R"("construction":{"method":"BecExact"},)"
      R"("decoder":{"kind":"SCL","L":1},)"
      R"("sim":{"trials":10000,"seed":1}})";
  SimConfig c1 = parse_config(base);
  SimConfig c8 = apply_axis(c1, "L", 8.0);
  SimReport r1 = run_trials(c1, workers_a);
  SimReport r8 = run_trials(c8, workers_a);

  BuiltCode built = build_code(c1);
  const double sum_z = sum_over_info(built.profile, built.spec.info_set);

  const bool miss_ordered = r8.list_misses <= r1.list_misses;
  const bool fer_bounded = r1.fer <= sum_z + 3.0 * r1.fer_ci95;
  const bool deterministic =
      same_report(r1, run_trials(c1, workers_b)) && same_report(r8, run_trials(c8, workers_b));
  r.pass = miss_ordered && fer_bounded && deterministic;
  std::ostringstream det;
  det << "misses L=8/L=1: " << r8.list_misses << "/" << r1.list_misses
      << (miss_ordered ? " ordered" : " NOT ordered") << "; FER " << fmt(r1.fer)
      << (fer_bounded ? " <= " : " > ") << fmt(sum_z) << " + 3*" << fmt(r1.fer_ci95)
      << "; reports across " << workers_a << " vs " << workers_b << " workers "
      << (deterministic ? "identical" : "DIFFER");
  r.detail = det.str();
  return r;
}

std::vector<CheckResult> run_verification_suite() {
  std::vector<CheckResult> out;
  out.push_back(check_transform_dense({1, 2, 4, 8}, {16}, 200));
  out.push_back(check_sc_scl_equivalence());
  out.push_back(check_scl_ml_equivalence());
  out.push_back(check_propositions({2, 4}, {1, 2}, true));
  out.push_back(check_symmetry_identities(2));
  out.push_back(check_construction_consistency());
  out.push_back(check_polarization_trend());
  out.push_back(check_precoding_inequalities({2}));
  out.push_back(check_frozen_indifference());
  return out;
}

}  // namespace polar::verify
