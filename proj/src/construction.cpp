#include "polar/construction.hpp"

#include <algorithm>
#include <numeric>

#include "polar/decode.hpp"
#include "polar/oracle.hpp"

namespace polar {

namespace {

// Doubling pass: each level splits every reliability value into the
// degraded (2z - z^2) and upgraded (z^2) descendant, already in decoder
// input order.
Eigen::ArrayXd doubling_recursion(double z0, int n) {
  std::vector<double> cur{z0};
  for (int level = 0; level < n; ++level) {
    std::vector<double> next(cur.size() * 2);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const double z = cur[j];
      next[2 * j] = 2.0 * z - z * z;
      next[2 * j + 1] = z * z;
    }
    cur = std::move(next);
  }
  Eigen::ArrayXd out(static_cast<Eigen::Index>(cur.size()));
  for (std::size_t j = 0; j < cur.size(); ++j) out[static_cast<Eigen::Index>(j)] = cur[j];
  return out;
}

Eigen::ArrayXd monte_carlo_profile(const DmcChannel& ch, int n, int trials, SplitMix64& rng) {
  const int N = 1 << n;
  std::vector<KahanSum> acc(static_cast<std::size_t>(N));
  BitVec m(static_cast<std::size_t>(N));
  SymbolVec y(static_cast<std::size_t>(N));
  for (int t = 0; t < trials; ++t) {
    for (int j = 0; j < N; ++j) m[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(rng.next() >> 63);
    BitVec x = polar_transform(m);
    for (int j = 0; j < N; ++j) y[static_cast<std::size_t>(j)] = ch.sample(x[static_cast<std::size_t>(j)], rng);
    std::vector<double> r = genie_ratios(ch, y, m);
    for (int j = 0; j < N; ++j) acc[static_cast<std::size_t>(j)].add(r[static_cast<std::size_t>(j)]);
  }
  Eigen::ArrayXd out(N);
  for (int j = 0; j < N; ++j) {
    double v = acc[static_cast<std::size_t>(j)].value() / static_cast<double>(trials);
    out[j] = std::min(1.0, std::max(0.0, v));
  }
  return out;
}

}  // namespace

ZProfile z_profile(const DmcChannel& ch, int n, ZMethod method,
                   std::optional<int> trials, SplitMix64* rng) {
  require(n >= 0 && n <= 30, "z_profile: n out of range");
  const int N = 1 << n;
  ZProfile prof;
  prof.N = N;
  prof.method = method;
  prof.is_upper_bound = false;
  switch (method) {
    case ZMethod::BecExact:
      require(ch.kind() == ChannelKind::BEC,
              "z_profile: the erasure recursion is exact only for a binary erasure channel");
      prof.values = doubling_recursion(bhattacharyya(ch), n);
      break;
    case ZMethod::BoundRecursion:
      prof.values = doubling_recursion(bhattacharyya(ch), n);
      prof.is_upper_bound = true;
      break;
    case ZMethod::MonteCarlo: {
      require(trials.has_value() && *trials >= 1, "z_profile: Monte Carlo needs a trial count");
      require(rng != nullptr, "z_profile: Monte Carlo needs a random stream");
      prof.values = monte_carlo_profile(ch, n, *trials, *rng);
      break;
    }
    case ZMethod::OracleExact: {
      require(N <= 8 && ch.alphabet_size() <= 3,
              "z_profile: exact evaluation is limited to N <= 8 and |Y| <= 3");
      prof.values.resize(N);
      for (int i = 1; i <= N; ++i) prof.values[i - 1] = oracle::z_exact(ch, N, i);
      break;
    }
  }
  require(prof.values.size() == N, "z_profile: internal size mismatch");
  for (Eigen::Index i = 0; i < prof.values.size(); ++i)
    require(prof.values[i] >= 0.0 && prof.values[i] <= 1.0,
            "z_profile: reliability values must lie in [0, 1]");
  return prof;
}

std::pair<std::vector<int>, std::vector<int>> select_polar_set(const ZProfile& z, int K) {
  require(K >= 0 && K <= z.N, "select_polar_set: K out of range");
  std::vector<int> order(static_cast<std::size_t>(z.N));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (z.values[a] != z.values[b]) return z.values[a] < z.values[b];
    return a < b;  // deterministic: equal reliabilities favor the smaller index
  });
  std::vector<int> info(order.begin(), order.begin() + K);
  std::vector<int> frozen(order.begin() + K, order.end());
  for (int& i : info) ++i;
  for (int& i : frozen) ++i;
  std::sort(info.begin(), info.end());
  std::sort(frozen.begin(), frozen.end());
  return {info, frozen};
}

}  // namespace polar
