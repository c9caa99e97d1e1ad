#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/common.hpp"

namespace polar {

// All decoder metrics are base-2 logarithms of coordinate-channel values,
// i.e. log2 of the suffix-marginalized block likelihood carrying its 1/2^(N-i)
// weight. Base 2 keeps erasure-channel arithmetic exact (integer logs), which
// the reproducibility tests rely on.
//
// Metrics closer than this tolerance are treated as equal before the
// lexicographic tie-break. Floating-point noise on the instances exercised
// here stays below ~1e-12 while analytically distinct metrics differ by
// more than 1e-10, so the band separates the two regimes.
constexpr double kMetricTieTolerance = 1e-11;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct DecodePath {
  BitVec prefix;
  double log_metric = 0.0;
};

struct ListState {
  std::vector<DecodePath> paths;
  int capacity = 1;
};

// Per-information-position list capacities; must be non-decreasing.
class ListSchedule {
 public:
  ListSchedule() = default;
  explicit ListSchedule(std::vector<int> sizes);
  static ListSchedule constant(int L, int info_count);

  int at(int info_pos) const { return sizes_[static_cast<std::size_t>(info_pos)]; }
  int info_count() const { return static_cast<int>(sizes_.size()); }
  int max_size() const { return sizes_.empty() ? 1 : sizes_.back(); }
  const std::vector<int>& sizes() const { return sizes_; }

 private:
  std::vector<int> sizes_;
};

struct StageTrace {
  int index = 0;  // 1-based coordinate
  bool is_info = false;
  std::vector<DecodePath> candidates;  // forked, pre-prune (info stages only)
  ListState survivors;
};
using DecodeTrace = std::vector<StageTrace>;

struct SclResult {
  BitVec winner;
  ListState final_list;  // sorted best-first (metric, then lexicographic)
};

// Keep the L best candidates; boundary ties go to the lexicographically
// smaller prefix (0 before 1, earlier positions more significant). Returns
// the selected prefixes in lexicographic order.
std::vector<BitVec> most_likely_select(const std::vector<DecodePath>& candidates, int L);

BitVec sc_decode(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y);

SclResult scl_decode(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y,
                     const ListSchedule& schedule, DecodeTrace* trace = nullptr);
SclResult scl_decode(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y,
                     int L, DecodeTrace* trace = nullptr);

// One genie-aided pass over all coordinates: ratios[i-1] is the per-index
// Bhattacharyya sample sqrt(W(..|0) W(..|1)) / W(..|m_i) given the true bits.
std::vector<double> genie_ratios(const DmcChannel& ch, const SymbolVec& y, const BitVec& m);

// Reusable list decoding engine (per-thread; one instance per worker).
// Path recursion state is kept in per-layer arrays shared copy-on-write
// between paths, so forking is cheap and observationally identical to
// eagerly copied paths.
class ListDecoder {
 public:
  ListDecoder(const PolarCodeSpec& spec, const DmcChannel& ch, ListSchedule schedule);

  SclResult decode(const SymbolVec& y, DecodeTrace* trace = nullptr);

  const PolarCodeSpec& spec() const { return spec_; }
  const ListSchedule& schedule() const { return sched_; }

 private:
  struct Cand {
    int parent;
    std::uint8_t bit;
    double metric;
    int parent_rank;
  };

  int slot_width(int layer) const { return 1 << (m_ - layer); }
  double* slot_p(int layer, int slot);
  std::uint8_t* slot_c(int layer, int slot);
  int claim_slot(int layer);
  void release_slot(int layer, int slot);
  double* write_p(int path, int layer);
  std::uint8_t* write_c(int path, int layer);
  const double* read_p(int path, int layer) const;
  const std::uint8_t* read_c(int path, int layer) const;
  int ensure_private(int path, int layer);
  int alloc_path();
  void kill_path(int path);
  int clone_path(int path);
  void calc_p(int path, int layer, int phase);
  void update_c(int path, int layer, int phase);
  void reset();

  PolarCodeSpec spec_;
  DmcChannel ch_;
  ListSchedule sched_;
  int m_ = 0, N_ = 0, cap_ = 1;
  std::vector<double> log_tab_;  // [u * Q + symbol]

  std::vector<std::vector<double>> pool_p_;        // [layer] -> cap_ slots
  std::vector<std::vector<std::uint8_t>> pool_c_;  // [layer] -> cap_ slots
  std::vector<std::vector<int>> refcnt_;           // [layer][slot]
  std::vector<std::vector<int>> free_slots_;       // [layer]
  std::vector<std::vector<int>> path_slot_;        // [path][layer]
  std::vector<std::uint8_t> path_active_;
  std::vector<int> free_paths_;
  std::vector<BitVec> path_prefix_;
  std::vector<double> path_metric_;
  std::vector<int> path_rank_;
};

namespace detail {

// log2( (2^x0 + 2^x1) / 2 ), exact when x0 == x1 or one side is -inf.
inline double log2_avg2(double x0, double x1) {
  if (x0 == kNegInf) return x1 - 1.0;
  if (x1 == kNegInf) return x0 - 1.0;
  if (x0 == x1) return x0;
  double hi = x0 > x1 ? x0 : x1;
  double lo = x0 > x1 ? x1 : x0;
  constexpr double inv_ln2 = 1.4426950408889634074;
  return hi + std::log1p(std::exp2(lo - hi)) * inv_ln2 - 1.0;
}

std::vector<double> log2_table(const DmcChannel& ch);

// Positions of selected candidates given clustered metrics and per-candidate
// lexicographic keys; shared by the list decoder and most_likely_select.
std::vector<std::size_t> select_top(const std::vector<double>& metrics,
                                    const std::vector<std::pair<long, int>>& lex_keys,
                                    std::size_t limit);

}  // namespace detail

}  // namespace polar
