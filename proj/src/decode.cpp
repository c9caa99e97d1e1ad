#include "polar/decode.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <numeric>

namespace polar {

namespace detail {

std::vector<double> log2_table(const DmcChannel& ch) {
  const int q = ch.alphabet_size();
  std::vector<double> tab(2 * static_cast<std::size_t>(q));
  for (int u = 0; u < 2; ++u)
    for (int y = 0; y < q; ++y)
      tab[static_cast<std::size_t>(u * q + y)] = std::log2(ch.transition(u, y));
  return tab;
}

std::vector<std::size_t> select_top(const std::vector<double>& metrics,
                                    const std::vector<std::pair<long, int>>& lex_keys,
                                    std::size_t limit) {
  const std::size_t n = metrics.size();
  std::vector<std::size_t> by_metric(n);
  std::iota(by_metric.begin(), by_metric.end(), std::size_t{0});
  std::sort(by_metric.begin(), by_metric.end(),
            [&](std::size_t a, std::size_t b) { return metrics[a] > metrics[b]; });
  // Single-linkage clustering: metrics within the tolerance share a cluster,
  // so analytic ties survive floating-point noise.
  std::vector<int> cluster(n, 0);
  int cid = 0;
  for (std::size_t j = 1; j < n; ++j) {
    double gap = metrics[by_metric[j - 1]] - metrics[by_metric[j]];
    if (gap > kMetricTieTolerance) ++cid;  // NaN gap (-inf vs -inf) keeps the cluster
    cluster[by_metric[j]] = cid;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cluster[a] != cluster[b]) return cluster[a] < cluster[b];
    return lex_keys[a] < lex_keys[b];
  });
  if (order.size() > limit) order.resize(limit);
  return order;
}

}  // namespace detail

ListSchedule::ListSchedule(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  int prev = 1;
  for (int s : sizes_) {
    require(s >= 1, "list schedule: sizes must be >= 1");
    require(s >= prev, "list schedule: sizes must be non-decreasing");
    prev = s;
  }
}

ListSchedule ListSchedule::constant(int L, int info_count) {
  require(L >= 1, "list size must be >= 1");
  require(info_count >= 0, "list schedule: negative length");
  return ListSchedule(std::vector<int>(static_cast<std::size_t>(info_count), L));
}

std::vector<BitVec> most_likely_select(const std::vector<DecodePath>& candidates, int L) {
  require(!candidates.empty(), "most_likely_select: empty candidate set");
  require(L >= 1, "most_likely_select: list size must be >= 1");
  const std::size_t n = candidates.size();
  const std::size_t len = candidates[0].prefix.size();
  for (const auto& c : candidates)
    require(c.prefix.size() == len, "most_likely_select: prefixes must share one length");

  std::vector<std::size_t> lex(n);
  std::iota(lex.begin(), lex.end(), std::size_t{0});
  std::sort(lex.begin(), lex.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].prefix < candidates[b].prefix;
  });
  for (std::size_t j = 1; j < n; ++j)
    require(candidates[lex[j - 1]].prefix != candidates[lex[j]].prefix,
            "most_likely_select: prefixes must be distinct");

  std::vector<std::pair<long, int>> keys(n);
  for (std::size_t j = 0; j < n; ++j) keys[lex[j]] = {static_cast<long>(j), 0};
  std::vector<double> metrics(n);
  for (std::size_t j = 0; j < n; ++j) metrics[j] = candidates[j].log_metric;

  auto sel = detail::select_top(metrics, keys, static_cast<std::size_t>(L));
  std::sort(sel.begin(), sel.end(),
            [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<BitVec> out;
  out.reserve(sel.size());
  for (auto idx : sel) out.push_back(candidates[idx].prefix);
  return out;
}

namespace {

void check_received(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y,
                    const char* who) {
  require(static_cast<int>(y.size()) == spec.N, std::string(who) + ": received length mismatch");
  for (int s : y)
    require(s >= 0 && s < ch.alphabet_size(), std::string(who) + ": invalid output symbol");
}

// Single-path recursion over the layered butterfly; used by SC decoding and
// the genie-aided construction pass. Shares the metric kernels with the list
// decoder so both produce bit-identical values.
class ScEngine {
 public:
  ScEngine(int n, const DmcChannel& ch)
      : m_(n), N_(1 << n), q_(ch.alphabet_size()), tab_(detail::log2_table(ch)) {
    p_.resize(static_cast<std::size_t>(m_) + 1);
    c_.resize(static_cast<std::size_t>(m_) + 1);
    for (int layer = 0; layer <= m_; ++layer) {
      p_[static_cast<std::size_t>(layer)].resize(2u << (m_ - layer));
      c_[static_cast<std::size_t>(layer)].resize(2u << (m_ - layer));
    }
  }

  void load(const SymbolVec& y) {
    auto& ch0 = p_[0];
    for (int b = 0; b < N_; ++b) {
      ch0[2 * static_cast<std::size_t>(b)] = tab_[static_cast<std::size_t>(y[static_cast<std::size_t>(b)])];
      ch0[2 * static_cast<std::size_t>(b) + 1] =
          tab_[static_cast<std::size_t>(q_ + y[static_cast<std::size_t>(b)])];
    }
  }

  void calc(int layer, int phase) {
    if (layer == 0) return;
    if ((phase & 1) == 0) calc(layer - 1, phase >> 1);
    const int w = 1 << (m_ - layer);
    auto& dst = p_[static_cast<std::size_t>(layer)];
    const auto& src = p_[static_cast<std::size_t>(layer) - 1];
    const auto& cc = c_[static_cast<std::size_t>(layer)];
    if ((phase & 1) == 0) {
      for (int b = 0; b < w; ++b)
        for (int u = 0; u < 2; ++u)
          dst[static_cast<std::size_t>(2 * b + u)] =
              detail::log2_avg2(src[static_cast<std::size_t>(4 * b + u)] + src[static_cast<std::size_t>(4 * b + 2)],
                                src[static_cast<std::size_t>(4 * b + (u ^ 1))] + src[static_cast<std::size_t>(4 * b + 3)]);
    } else {
      for (int b = 0; b < w; ++b) {
        int u0 = cc[static_cast<std::size_t>(2 * b)];
        for (int u = 0; u < 2; ++u)
          dst[static_cast<std::size_t>(2 * b + u)] =
              src[static_cast<std::size_t>(4 * b + (u0 ^ u))] + src[static_cast<std::size_t>(4 * b + 2 + u)];
      }
    }
  }

  double value(int u) const { return p_[static_cast<std::size_t>(m_)][static_cast<std::size_t>(u)]; }

  void set_bit(int phase, std::uint8_t bit) {
    c_[static_cast<std::size_t>(m_)][static_cast<std::size_t>(phase & 1)] = bit;
    if (phase & 1) update(m_, phase);
  }

 private:
  void update(int layer, int phase) {
    const int par = (phase >> 1) & 1;
    const int w = 1 << (m_ - layer);
    const auto& cs = c_[static_cast<std::size_t>(layer)];
    auto& cd = c_[static_cast<std::size_t>(layer) - 1];
    for (int b = 0; b < w; ++b) {
      cd[static_cast<std::size_t>(4 * b + par)] =
          cs[static_cast<std::size_t>(2 * b)] ^ cs[static_cast<std::size_t>(2 * b + 1)];
      cd[static_cast<std::size_t>(4 * b + 2 + par)] = cs[static_cast<std::size_t>(2 * b + 1)];
    }
    if ((phase >> 1) & 1) update(layer - 1, phase >> 1);
  }

  int m_, N_, q_;
  std::vector<double> tab_;
  std::vector<std::vector<double>> p_;
  std::vector<std::vector<std::uint8_t>> c_;
};

}  // namespace

BitVec sc_decode(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y) {
  check_received(spec, ch, y, "sc_decode");
  ScEngine eng(spec.n, ch);
  eng.load(y);
  const auto& mask = spec.info_mask();
  BitVec out(static_cast<std::size_t>(spec.N));
  std::size_t f = 0;
  for (int phase = 0; phase < spec.N; ++phase) {
    eng.calc(spec.n, phase);
    std::uint8_t bit;
    if (!mask[static_cast<std::size_t>(phase)]) {
      bit = spec.frozen_bits[f++];
    } else {
      // likelihood ratio >= 1 decides 0; indeterminate 0/0 also decides 0
      bit = (eng.value(0) >= eng.value(1) - kMetricTieTolerance) ? 0 : 1;
    }
    out[static_cast<std::size_t>(phase)] = bit;
    eng.set_bit(phase, bit);
  }
  return out;
}

std::vector<double> genie_ratios(const DmcChannel& ch, const SymbolVec& y, const BitVec& m) {
  require(y.size() == m.size(), "genie_ratios: length mismatch");
  const int n = log2_exact(y.size());
  const int N = static_cast<int>(y.size());
  for (int s : y) require(s >= 0 && s < ch.alphabet_size(), "genie_ratios: invalid symbol");
  ScEngine eng(n, ch);
  eng.load(y);
  std::vector<double> ratios(static_cast<std::size_t>(N));
  for (int phase = 0; phase < N; ++phase) {
    eng.calc(n, phase);
    const double l0 = eng.value(0);
    const double l1 = eng.value(1);
    const std::uint8_t bit = m[static_cast<std::size_t>(phase)];
    const double lt = bit ? l1 : l0;
    double r = 0.0;
    if (l0 != kNegInf && l1 != kNegInf) {
      double e = 0.5 * (l0 + l1) - lt;
      r = std::exp2(e > 1020.0 ? 1020.0 : e);
    }
    ratios[static_cast<std::size_t>(phase)] = r;
    eng.set_bit(phase, bit);
  }
  return ratios;
}

ListDecoder::ListDecoder(const PolarCodeSpec& spec, const DmcChannel& ch, ListSchedule schedule)
    : spec_(spec), ch_(ch), sched_(std::move(schedule)) {
  require(sched_.info_count() == spec_.K(),
          "list schedule length must equal the information set size");
  m_ = spec_.n;
  N_ = spec_.N;
  cap_ = 1;
  for (int s : sched_.sizes()) cap_ = std::max(cap_, s);
  log_tab_ = detail::log2_table(ch_);

  const std::size_t layers = static_cast<std::size_t>(m_) + 1;
  pool_p_.resize(layers);
  pool_c_.resize(layers);
  refcnt_.resize(layers);
  free_slots_.resize(layers);
  for (int layer = 0; layer <= m_; ++layer) {
    const std::size_t sz = static_cast<std::size_t>(cap_) * (2u << (m_ - layer));
    pool_p_[static_cast<std::size_t>(layer)].resize(sz);
    pool_c_[static_cast<std::size_t>(layer)].resize(sz);
    refcnt_[static_cast<std::size_t>(layer)].assign(static_cast<std::size_t>(cap_), 0);
  }
  path_slot_.assign(static_cast<std::size_t>(cap_), std::vector<int>(layers, -1));
  path_active_.assign(static_cast<std::size_t>(cap_), 0);
  path_prefix_.resize(static_cast<std::size_t>(cap_));
  for (auto& p : path_prefix_) p.reserve(static_cast<std::size_t>(N_));
  path_metric_.assign(static_cast<std::size_t>(cap_), 0.0);
  path_rank_.assign(static_cast<std::size_t>(cap_), 0);
}

double* ListDecoder::slot_p(int layer, int slot) {
  return pool_p_[static_cast<std::size_t>(layer)].data() +
         static_cast<std::size_t>(slot) * (2u << (m_ - layer));
}

std::uint8_t* ListDecoder::slot_c(int layer, int slot) {
  return pool_c_[static_cast<std::size_t>(layer)].data() +
         static_cast<std::size_t>(slot) * (2u << (m_ - layer));
}

int ListDecoder::claim_slot(int layer) {
  auto& fs = free_slots_[static_cast<std::size_t>(layer)];
  assert(!fs.empty());
  int s = fs.back();
  fs.pop_back();
  refcnt_[static_cast<std::size_t>(layer)][static_cast<std::size_t>(s)] = 1;
  return s;
}

void ListDecoder::release_slot(int layer, int slot) {
  if (--refcnt_[static_cast<std::size_t>(layer)][static_cast<std::size_t>(slot)] == 0)
    free_slots_[static_cast<std::size_t>(layer)].push_back(slot);
}

int ListDecoder::ensure_private(int path, int layer) {
  int s = path_slot_[static_cast<std::size_t>(path)][static_cast<std::size_t>(layer)];
  if (refcnt_[static_cast<std::size_t>(layer)][static_cast<std::size_t>(s)] == 1) return s;
  int t = claim_slot(layer);
  const std::size_t w = 2u << (m_ - layer);
  std::memcpy(slot_p(layer, t), slot_p(layer, s), w * sizeof(double));
  std::memcpy(slot_c(layer, t), slot_c(layer, s), w * sizeof(std::uint8_t));
  --refcnt_[static_cast<std::size_t>(layer)][static_cast<std::size_t>(s)];
  path_slot_[static_cast<std::size_t>(path)][static_cast<std::size_t>(layer)] = t;
  return t;
}

double* ListDecoder::write_p(int path, int layer) { return slot_p(layer, ensure_private(path, layer)); }
std::uint8_t* ListDecoder::write_c(int path, int layer) { return slot_c(layer, ensure_private(path, layer)); }

const double* ListDecoder::read_p(int path, int layer) const {
  int s = path_slot_[static_cast<std::size_t>(path)][static_cast<std::size_t>(layer)];
  return const_cast<ListDecoder*>(this)->slot_p(layer, s);
}

const std::uint8_t* ListDecoder::read_c(int path, int layer) const {
  int s = path_slot_[static_cast<std::size_t>(path)][static_cast<std::size_t>(layer)];
  return const_cast<ListDecoder*>(this)->slot_c(layer, s);
}

int ListDecoder::alloc_path() {
  assert(!free_paths_.empty());
  int p = free_paths_.back();
  free_paths_.pop_back();
  path_active_[static_cast<std::size_t>(p)] = 1;
  path_prefix_[static_cast<std::size_t>(p)].clear();
  path_metric_[static_cast<std::size_t>(p)] = 0.0;
  path_rank_[static_cast<std::size_t>(p)] = 0;
  return p;
}

void ListDecoder::kill_path(int path) {
  for (int layer = 0; layer <= m_; ++layer) {
    int s = path_slot_[static_cast<std::size_t>(path)][static_cast<std::size_t>(layer)];
    if (s >= 0) release_slot(layer, s);
    path_slot_[static_cast<std::size_t>(path)][static_cast<std::size_t>(layer)] = -1;
  }
  path_active_[static_cast<std::size_t>(path)] = 0;
  free_paths_.push_back(path);
}

int ListDecoder::clone_path(int path) {
  int q = alloc_path();
  path_prefix_[static_cast<std::size_t>(q)] = path_prefix_[static_cast<std::size_t>(path)];
  path_metric_[static_cast<std::size_t>(q)] = path_metric_[static_cast<std::size_t>(path)];
  path_rank_[static_cast<std::size_t>(q)] = path_rank_[static_cast<std::size_t>(path)];
  for (int layer = 0; layer <= m_; ++layer) {
    int s = path_slot_[static_cast<std::size_t>(path)][static_cast<std::size_t>(layer)];
    path_slot_[static_cast<std::size_t>(q)][static_cast<std::size_t>(layer)] = s;
    ++refcnt_[static_cast<std::size_t>(layer)][static_cast<std::size_t>(s)];
  }
  return q;
}

void ListDecoder::calc_p(int path, int layer, int phase) {
  if (layer == 0) return;
  if ((phase & 1) == 0) calc_p(path, layer - 1, phase >> 1);
  const int w = 1 << (m_ - layer);
  const double* src = read_p(path, layer - 1);
  double* dst = write_p(path, layer);
  if ((phase & 1) == 0) {
    for (int b = 0; b < w; ++b)
      for (int u = 0; u < 2; ++u)
        dst[2 * b + u] = detail::log2_avg2(src[4 * b + u] + src[4 * b + 2],
                                           src[4 * b + (u ^ 1)] + src[4 * b + 3]);
  } else {
    const std::uint8_t* cc = read_c(path, layer);
    for (int b = 0; b < w; ++b) {
      const int u0 = cc[2 * b];
      for (int u = 0; u < 2; ++u)
        dst[2 * b + u] = src[4 * b + (u0 ^ u)] + src[4 * b + 2 + u];
    }
  }
}

void ListDecoder::update_c(int path, int layer, int phase) {
  const int par = (phase >> 1) & 1;
  const int w = 1 << (m_ - layer);
  const std::uint8_t* cs = read_c(path, layer);
  std::uint8_t* cd = write_c(path, layer - 1);
  for (int b = 0; b < w; ++b) {
    cd[4 * b + par] = cs[2 * b] ^ cs[2 * b + 1];
    cd[4 * b + 2 + par] = cs[2 * b + 1];
  }
  if ((phase >> 1) & 1) update_c(path, layer - 1, phase >> 1);
}

void ListDecoder::reset() {
  free_paths_.clear();
  for (int p = cap_ - 1; p >= 0; --p) free_paths_.push_back(p);
  std::fill(path_active_.begin(), path_active_.end(), 0);
  for (int layer = 0; layer <= m_; ++layer) {
    auto& fs = free_slots_[static_cast<std::size_t>(layer)];
    fs.clear();
    for (int s = cap_ - 1; s >= 0; --s) fs.push_back(s);
    std::fill(refcnt_[static_cast<std::size_t>(layer)].begin(),
              refcnt_[static_cast<std::size_t>(layer)].end(), 0);
  }
  for (auto& row : path_slot_) std::fill(row.begin(), row.end(), -1);
}

SclResult ListDecoder::decode(const SymbolVec& y, DecodeTrace* trace) {
  check_received(spec_, ch_, y, "scl_decode");
  if (trace) trace->clear();
  reset();

  const int q = ch_.alphabet_size();
  int p0 = alloc_path();
  for (int layer = 0; layer <= m_; ++layer)
    path_slot_[static_cast<std::size_t>(p0)][static_cast<std::size_t>(layer)] = claim_slot(layer);
  double* ch0 = slot_p(0, path_slot_[static_cast<std::size_t>(p0)][0]);
  for (int b = 0; b < N_; ++b) {
    ch0[2 * b] = log_tab_[static_cast<std::size_t>(y[static_cast<std::size_t>(b)])];
    ch0[2 * b + 1] = log_tab_[static_cast<std::size_t>(q + y[static_cast<std::size_t>(b)])];
  }

  const auto& mask = spec_.info_mask();
  std::size_t f = 0;
  int info_pos = 0;
  std::vector<int> act;
  act.reserve(static_cast<std::size_t>(cap_));

  for (int phase = 0; phase < N_; ++phase) {
    act.clear();
    for (int p = 0; p < cap_; ++p)
      if (path_active_[static_cast<std::size_t>(p)]) act.push_back(p);
    for (int p : act) calc_p(p, m_, phase);

    StageTrace st;
    if (trace) {
      st.index = phase + 1;
      st.is_info = mask[static_cast<std::size_t>(phase)] != 0;
    }

    if (!mask[static_cast<std::size_t>(phase)]) {
      const std::uint8_t bit = spec_.frozen_bits[f++];
      for (int p : act) {
        const double metric = read_p(p, m_)[bit];
        write_c(p, m_)[phase & 1] = bit;
        path_prefix_[static_cast<std::size_t>(p)].push_back(bit);
        path_metric_[static_cast<std::size_t>(p)] = metric;
      }
    } else {
      const int capacity = sched_.at(info_pos++);
      std::vector<Cand> cands;
      cands.reserve(2 * act.size());
      for (int p : act) {
        const double* pm = read_p(p, m_);
        for (int bi = 0; bi < 2; ++bi)
          cands.push_back({p, static_cast<std::uint8_t>(bi), pm[bi],
                           path_rank_[static_cast<std::size_t>(p)]});
      }
      if (trace) {
        for (const auto& c : cands) {
          BitVec pre = path_prefix_[static_cast<std::size_t>(c.parent)];
          pre.push_back(c.bit);
          st.candidates.push_back({std::move(pre), c.metric});
        }
      }

      std::vector<std::size_t> sel;
      if (static_cast<int>(cands.size()) <= capacity) {
        sel.resize(cands.size());
        std::iota(sel.begin(), sel.end(), std::size_t{0});
      } else {
        std::vector<double> metrics(cands.size());
        std::vector<std::pair<long, int>> keys(cands.size());
        for (std::size_t j = 0; j < cands.size(); ++j) {
          metrics[j] = cands[j].metric;
          keys[j] = {static_cast<long>(cands[j].parent_rank), cands[j].bit};
        }
        sel = detail::select_top(metrics, keys, static_cast<std::size_t>(capacity));
      }

      std::vector<int> kept(static_cast<std::size_t>(cap_), 0);
      std::vector<std::uint8_t> single_bit(static_cast<std::size_t>(cap_), 0);
      for (auto idx : sel) {
        ++kept[static_cast<std::size_t>(cands[idx].parent)];
        single_bit[static_cast<std::size_t>(cands[idx].parent)] = cands[idx].bit;
      }
      for (int p : act)
        if (kept[static_cast<std::size_t>(p)] == 0) kill_path(p);

      struct Surv {
        int path;
        std::uint8_t bit;
        long parent_rank;
      };
      std::vector<Surv> survivors;
      survivors.reserve(sel.size());
      for (int p : act) {
        const int count = kept[static_cast<std::size_t>(p)];
        if (count == 0) continue;
        const long rank = static_cast<long>(path_rank_[static_cast<std::size_t>(p)]);
        const double* pm = read_p(p, m_);
        const double m0 = pm[0];
        const double m1 = pm[1];
        if (count == 1) {
          const std::uint8_t bit = single_bit[static_cast<std::size_t>(p)];
          write_c(p, m_)[phase & 1] = bit;
          path_prefix_[static_cast<std::size_t>(p)].push_back(bit);
          path_metric_[static_cast<std::size_t>(p)] = bit ? m1 : m0;
          survivors.push_back({p, bit, rank});
        } else {
          const int dup = clone_path(p);
          write_c(p, m_)[phase & 1] = 0;
          path_prefix_[static_cast<std::size_t>(p)].push_back(0);
          path_metric_[static_cast<std::size_t>(p)] = m0;
          write_c(dup, m_)[phase & 1] = 1;
          path_prefix_[static_cast<std::size_t>(dup)].push_back(1);
          path_metric_[static_cast<std::size_t>(dup)] = m1;
          survivors.push_back({p, 0, rank});
          survivors.push_back({dup, 1, rank});
        }
      }
      std::sort(survivors.begin(), survivors.end(), [](const Surv& a, const Surv& b) {
        if (a.parent_rank != b.parent_rank) return a.parent_rank < b.parent_rank;
        return a.bit < b.bit;
      });
      for (std::size_t j = 0; j < survivors.size(); ++j)
        path_rank_[static_cast<std::size_t>(survivors[j].path)] = static_cast<int>(j);
    }

    if (phase & 1) {
      act.clear();
      for (int p = 0; p < cap_; ++p)
        if (path_active_[static_cast<std::size_t>(p)]) act.push_back(p);
      for (int p : act) update_c(p, m_, phase);
    }

    if (trace) {
      st.survivors.capacity = mask[static_cast<std::size_t>(phase)]
                                  ? sched_.at(info_pos - 1)
                                  : (info_pos > 0 ? sched_.at(info_pos - 1) : 1);
      std::vector<int> order(static_cast<std::size_t>(cap_), -1);
      for (int p = 0; p < cap_; ++p)
        if (path_active_[static_cast<std::size_t>(p)])
          order[static_cast<std::size_t>(path_rank_[static_cast<std::size_t>(p)])] = p;
      for (int r = 0; r < cap_; ++r)
        if (order[static_cast<std::size_t>(r)] >= 0) {
          int p = order[static_cast<std::size_t>(r)];
          st.survivors.paths.push_back(
              {path_prefix_[static_cast<std::size_t>(p)], path_metric_[static_cast<std::size_t>(p)]});
        }
      trace->push_back(std::move(st));
    }
  }

  // Final selection: order best-first, boundary ties to the smaller prefix.
  std::vector<int> fin;
  for (int p = 0; p < cap_; ++p)
    if (path_active_[static_cast<std::size_t>(p)]) fin.push_back(p);
  std::vector<double> metrics(fin.size());
  std::vector<std::pair<long, int>> keys(fin.size());
  for (std::size_t j = 0; j < fin.size(); ++j) {
    metrics[j] = path_metric_[static_cast<std::size_t>(fin[j])];
    keys[j] = {static_cast<long>(path_rank_[static_cast<std::size_t>(fin[j])]), 0};
  }
  auto order = detail::select_top(metrics, keys, fin.size());

  SclResult res;
  res.final_list.capacity = spec_.K() > 0 ? sched_.at(spec_.K() - 1) : 1;
  for (auto idx : order) {
    int p = fin[idx];
    res.final_list.paths.push_back(
        {path_prefix_[static_cast<std::size_t>(p)], path_metric_[static_cast<std::size_t>(p)]});
  }
  res.winner = res.final_list.paths.front().prefix;
  return res;
}

SclResult scl_decode(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y,
                     const ListSchedule& schedule, DecodeTrace* trace) {
  ListDecoder dec(spec, ch, schedule);
  return dec.decode(y, trace);
}

SclResult scl_decode(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y,
                     int L, DecodeTrace* trace) {
  return scl_decode(spec, ch, y, ListSchedule::constant(L, spec.K()), trace);
}

}  // namespace polar
