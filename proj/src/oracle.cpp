#include "polar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "polar/decode.hpp"

namespace polar::oracle {

namespace {

const Eigen::MatrixXi& cached_generator(int n) {
  thread_local std::vector<Eigen::MatrixXi> cache;
  if (static_cast<int>(cache.size()) <= n) cache.resize(static_cast<std::size_t>(n) + 1);
  auto& g = cache[static_cast<std::size_t>(n)];
  if (g.size() == 0) g = dense_generator(n);
  return g;
}

BitVec transform_dense(const BitVec& m, const Eigen::MatrixXi& g) {
  const int N = static_cast<int>(g.rows());
  BitVec x(static_cast<std::size_t>(N), 0);
  for (int j = 0; j < N; ++j) {
    int acc = 0;
    for (int i = 0; i < N; ++i) acc ^= (m[static_cast<std::size_t>(i)] & g(i, j));
    x[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(acc);
  }
  return x;
}

void check_symbols(const DmcChannel& ch, const SymbolVec& y, const char* who) {
  for (int s : y)
    require(s >= 0 && s < ch.alphabet_size(), std::string(who) + ": invalid output symbol");
}

void check_bits(const BitVec& m, const char* who) {
  for (auto b : m) require(b == 0 || b == 1, std::string(who) + ": entries must be 0/1");
}

// Plain left-to-right product; enumeration order is fixed, so results are
// reproducible run to run.
double likelihood(const DmcChannel& ch, const SymbolVec& y, const BitVec& x) {
  double prod = 1.0;
  for (std::size_t j = 0; j < y.size(); ++j)
    prod *= ch.transition(x[j], y[j]);
  return prod;
}

// Product with the factors grouped by value and multiplied in sorted order:
// two codewords whose transition-probability multisets coincide get exactly
// the same double, so analytic likelihood ties stay ties in floating point.
double canonical_likelihood(const DmcChannel& ch, const SymbolVec& y, const BitVec& x) {
  std::vector<std::pair<double, int>> groups;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double v = ch.transition(x[j], y[j]);
    bool found = false;
    for (auto& g : groups)
      if (g.first == v) {
        ++g.second;
        found = true;
        break;
      }
    if (!found) groups.emplace_back(v, 1);
  }
  std::sort(groups.begin(), groups.end());
  double prod = 1.0;
  for (const auto& g : groups) prod *= std::pow(g.first, static_cast<double>(g.second));
  return prod;
}

bool next_output(SymbolVec& y, int q) {
  for (int j = static_cast<int>(y.size()) - 1; j >= 0; --j) {
    if (y[static_cast<std::size_t>(j)] + 1 < q) {
      ++y[static_cast<std::size_t>(j)];
      return true;
    }
    y[static_cast<std::size_t>(j)] = 0;
  }
  return false;
}

}  // namespace

Eigen::MatrixXi dense_generator(int n) {
  require(n >= 0 && n <= 16, "dense_generator: n out of range");
  const int N = 1 << n;
  Eigen::MatrixXi f(1, 1);
  f(0, 0) = 1;
  for (int level = 0; level < n; ++level) {
    const int s = static_cast<int>(f.rows());
    Eigen::MatrixXi g = Eigen::MatrixXi::Zero(2 * s, 2 * s);
    g.topLeftCorner(s, s) = f;
    g.bottomLeftCorner(s, s) = f;
    g.bottomRightCorner(s, s) = f;
    f = std::move(g);
  }
  const std::vector<int> perm = bit_reversal_perm(n);
  Eigen::MatrixXi out(N, N);
  for (int i = 0; i < N; ++i) out.row(i) = f.row(perm[static_cast<std::size_t>(i)] - 1);
  return out;
}

BitVec polar_transform_dense(const BitVec& m) {
  check_bits(m, "polar_transform_dense");
  const int n = log2_exact(m.size());
  return transform_dense(m, cached_generator(n));
}

double wn_exact(const DmcChannel& ch, const SymbolVec& y, const BitVec& m) {
  require(y.size() == m.size(), "wn_exact: length mismatch");
  check_bits(m, "wn_exact");
  check_symbols(ch, y, "wn_exact");
  const int n = log2_exact(m.size());
  return likelihood(ch, y, transform_dense(m, cached_generator(n)));
}

double wn_split_exact(const DmcChannel& ch, int N, const SymbolVec& y,
                      const BitVec& m_prefix, int m_i) {
  require(N >= 1 && is_power_of_two(static_cast<std::size_t>(N)) && N <= 16,
          "wn_split_exact: N must be a power of two at most 16");
  require(static_cast<int>(y.size()) == N, "wn_split_exact: received length mismatch");
  require(static_cast<int>(m_prefix.size()) < N, "wn_split_exact: prefix too long");
  require(m_i == 0 || m_i == 1, "wn_split_exact: m_i must be a bit");
  check_bits(m_prefix, "wn_split_exact");
  check_symbols(ch, y, "wn_split_exact");

  const int i = static_cast<int>(m_prefix.size()) + 1;
  const int tail = N - i;
  BitVec m(static_cast<std::size_t>(N), 0);
  std::copy(m_prefix.begin(), m_prefix.end(), m.begin());
  m[static_cast<std::size_t>(i) - 1] = static_cast<std::uint8_t>(m_i);

  KahanSum acc;
  for (int s = 0; s < (1 << tail); ++s) {
    for (int j = 0; j < tail; ++j)
      m[static_cast<std::size_t>(i + j)] = static_cast<std::uint8_t>((s >> (tail - 1 - j)) & 1);
    acc.add(wn_exact(ch, y, m));
  }
  return std::ldexp(acc.value(), -tail);
}

double z_exact(const DmcChannel& ch, int N, int i) {
  require(N >= 1 && is_power_of_two(static_cast<std::size_t>(N)) && N <= 8,
          "z_exact: exhaustive evaluation is limited to N <= 8");
  require(ch.alphabet_size() <= 3, "z_exact: output alphabets above 3 are impractical here");
  require(i >= 1 && i <= N, "z_exact: index out of range");

  const int n = log2_exact(static_cast<std::size_t>(N));
  const auto& g = cached_generator(n);
  const int msgs = 1 << N;
  std::vector<BitVec> cw(static_cast<std::size_t>(msgs));
  for (int m = 0; m < msgs; ++m)
    cw[static_cast<std::size_t>(m)] = transform_dense(uint_to_bits(static_cast<std::uint64_t>(m), N), g);

  const int q = ch.alphabet_size();
  const int prefixes = 1 << (i - 1);
  const int tail = N - i;
  std::vector<double> w(static_cast<std::size_t>(msgs));
  KahanSum total;
  SymbolVec y(static_cast<std::size_t>(N), 0);
  do {
    for (int m = 0; m < msgs; ++m)
      w[static_cast<std::size_t>(m)] = likelihood(ch, y, cw[static_cast<std::size_t>(m)]);
    for (int p = 0; p < prefixes; ++p) {
      const int base0 = p << (tail + 1);
      const int base1 = base0 | (1 << tail);
      KahanSum s0, s1;
      for (int s = 0; s < (1 << tail); ++s) {
        s0.add(w[static_cast<std::size_t>(base0 + s)]);
        s1.add(w[static_cast<std::size_t>(base1 + s)]);
      }
      const double w0 = std::ldexp(s0.value(), -tail);
      const double w1 = std::ldexp(s1.value(), -tail);
      total.add(std::sqrt(w0 * w1));
    }
  } while (next_output(y, q));
  return std::ldexp(total.value(), -(i - 1));
}

BitVec ml_decode_exact(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y) {
  require(static_cast<int>(y.size()) == spec.N, "ml_decode_exact: received length mismatch");
  require(spec.K() <= 20, "ml_decode_exact: message space too large to enumerate");
  check_symbols(ch, y, "ml_decode_exact");

  const auto& g = cached_generator(spec.n);
  const std::uint64_t msgs = std::uint64_t{1} << spec.K();
  BitVec best;
  double best_lv = 0.0;
  for (std::uint64_t m = 0; m < msgs; ++m) {
    BitVec full = spec.assemble(uint_to_bits(m, spec.K()));
    const double v = canonical_likelihood(ch, y, transform_dense(full, g));
    const double lv = std::log2(v);
    // messages are scanned in ascending info order, so ties keep the
    // lexicographically smaller projection
    if (m == 0 || lv > best_lv + kMetricTieTolerance) {
      best = std::move(full);
      best_lv = lv;
    }
  }
  return best;
}

ExactErrorReport exact_error_report(const PolarCodeSpec& spec, const DmcChannel& ch,
                                    RefDecoder decoder, int L) {
  require(spec.N <= 8, "exact_error_report: output enumeration is limited to N <= 8");
  require(ch.alphabet_size() <= 3, "exact_error_report: output alphabets above 3 are impractical");
  require(L >= 1, "exact_error_report: list size must be >= 1");

  const int N = spec.N;
  const int K = spec.K();
  const int q = ch.alphabet_size();
  const std::uint64_t msgs = std::uint64_t{1} << K;

  std::vector<BitVec> assembled(msgs), cw(msgs);
  for (std::uint64_t m = 0; m < msgs; ++m) {
    BitVec info = uint_to_bits(m, K);
    assembled[m] = spec.assemble(info);
    cw[m] = encode(spec, info);
  }

  std::optional<ListDecoder> engine;
  if (decoder == RefDecoder::SCL) engine.emplace(spec, ch, ListSchedule::constant(L, K));

  std::vector<KahanSum> err(msgs), miss(msgs);
  SymbolVec y(static_cast<std::size_t>(N), 0);
  do {
    BitVec winner;
    const std::vector<DecodePath>* list = nullptr;
    SclResult res;
    switch (decoder) {
      case RefDecoder::SC:
        winner = sc_decode(spec, ch, y);
        break;
      case RefDecoder::SCL:
        res = engine->decode(y);
        winner = res.winner;
        list = &res.final_list.paths;
        break;
      case RefDecoder::ML:
        winner = ml_decode_exact(spec, ch, y);
        break;
    }
    for (std::uint64_t m = 0; m < msgs; ++m) {
      const double p = likelihood(ch, y, cw[m]);
      if (p == 0.0) continue;
      if (winner != assembled[m]) err[m].add(p);
      if (list) {
        bool found = false;
        for (const auto& path : *list)
          if (path.prefix == assembled[m]) {
            found = true;
            break;
          }
        if (!found) miss[m].add(p);
      }
    }
  } while (next_output(y, q));

  ExactErrorReport rep;
  rep.N = N;
  rep.K = K;
  rep.k = K;
  rep.info_set = spec.info_set;
  rep.per_message_error.resize(msgs);
  KahanSum avg;
  for (std::uint64_t m = 0; m < msgs; ++m) {
    rep.per_message_error[m] = err[m].value();
    rep.max_error = std::max(rep.max_error, rep.per_message_error[m]);
    avg.add(rep.per_message_error[m]);
  }
  rep.average_error = avg.value() / static_cast<double>(msgs);
  if (decoder == RefDecoder::SCL) {
    rep.per_message_list_miss.resize(msgs);
    KahanSum mavg;
    for (std::uint64_t m = 0; m < msgs; ++m) {
      rep.per_message_list_miss[m] = miss[m].value();
      mavg.add(rep.per_message_list_miss[m]);
    }
    rep.list_miss = mavg.value() / static_cast<double>(msgs);
  }
  return rep;
}

ExactErrorReport exact_error_report(const PrecodedCodeSpec& pspec, const DmcChannel& ch) {
  const PolarCodeSpec& spec = pspec.inner;
  require(spec.N <= 8, "exact_error_report: output enumeration is limited to N <= 8");
  require(ch.alphabet_size() <= 3, "exact_error_report: output alphabets above 3 are impractical");

  const int N = spec.N;
  const int q = ch.alphabet_size();
  const int k = pspec.precoder.k;
  const std::uint64_t msgs = std::uint64_t{1} << k;
  const bool retry = pspec.strategy == Strategy::Retransmission;

  std::vector<BitVec> info(msgs), assembled(msgs), cw(msgs);
  for (std::uint64_t m = 0; m < msgs; ++m) {
    info[m] = uint_to_bits(m, k);
    assembled[m] = spec.assemble(precode(pspec.precoder, info[m]));
    cw[m] = polar_transform(assembled[m]);
  }

  ListDecoder engine(spec, ch, pspec.schedule);
  std::vector<KahanSum> err(msgs), miss(msgs), acc(msgs);
  SymbolVec y(static_cast<std::size_t>(N), 0);
  do {
    SclResult det;
    DecodeOutcome outcome = precoded_decode(engine, pspec, y, &det);
    for (std::uint64_t m = 0; m < msgs; ++m) {
      const double p = likelihood(ch, y, cw[m]);
      if (p == 0.0) continue;
      const bool correct = outcome.tag == OutcomeTag::Message && outcome.message == info[m];
      if (retry) {
        if (outcome.tag != OutcomeTag::RetryRequested) {
          acc[m].add(p);
          if (!correct) err[m].add(p);
        }
      } else if (!correct) {
        err[m].add(p);
      }
      bool found = false;
      for (const auto& path : det.final_list.paths)
        if (path.prefix == assembled[m]) {
          found = true;
          break;
        }
      if (!found) miss[m].add(p);
    }
  } while (next_output(y, q));

  ExactErrorReport rep;
  rep.N = N;
  rep.K = spec.K();
  rep.k = k;
  rep.info_set = spec.info_set;
  rep.per_message_error.resize(msgs);
  rep.per_message_list_miss.resize(msgs);
  if (retry) rep.acceptance_mass.resize(msgs);
  KahanSum avg, mavg;
  for (std::uint64_t m = 0; m < msgs; ++m) {
    double e;
    if (retry) {
      const double a = acc[m].value();
      rep.acceptance_mass[m] = a;
      // conditional on eventual acceptance; no accepted mass leaves nothing
      // to condition on, reported as 0
      e = a > 0.0 ? err[m].value() / a : 0.0;
    } else {
      e = err[m].value();
    }
    rep.per_message_error[m] = e;
    rep.max_error = std::max(rep.max_error, e);
    avg.add(e);
    rep.per_message_list_miss[m] = miss[m].value();
    mavg.add(miss[m].value());
  }
  rep.average_error = avg.value() / static_cast<double>(msgs);
  rep.list_miss = mavg.value() / static_cast<double>(msgs);
  return rep;
}

}  // namespace polar::oracle
