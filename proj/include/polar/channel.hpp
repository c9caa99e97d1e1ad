#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polar/common.hpp"
#include "polar/rng.hpp"

namespace polar {

enum class ChannelKind { BSC, BEC, Explicit };

// Binary-input discrete memoryless channel with a finite output alphabet.
// Outputs are dense indices 0..Q-1; a BEC uses index 2 for the erasure.
// Immutable after construction and safe to share across threads.
class DmcChannel {
 public:
  static DmcChannel bsc(double p);
  static DmcChannel bec(double eps);
  // table is 2 x Q, rows are the conditional distributions given input 0/1.
  static DmcChannel explicit_table(const Eigen::Matrix<double, 2, Eigen::Dynamic>& table,
                                   std::optional<std::vector<int>> pairing = std::nullopt,
                                   std::string label = "Explicit");

  ChannelKind kind() const { return kind_; }
  int alphabet_size() const { return static_cast<int>(table_.cols()); }
  double transition(int x, int y) const { return table_(x, y); }
  const Eigen::Matrix<double, 2, Eigen::Dynamic>& table() const { return table_; }

  bool has_pairing() const { return !pairing_.empty(); }
  int pairing(int y) const { return pairing_[static_cast<std::size_t>(y)]; }

  const std::string& label() const { return label_; }
  double param() const { return param_; }  // p or eps; -1 for explicit tables

  int sample(int x, SplitMix64& rng) const;

 private:
  DmcChannel() = default;
  void validate() const;

  ChannelKind kind_ = ChannelKind::Explicit;
  Eigen::Matrix<double, 2, Eigen::Dynamic> table_;
  Eigen::Matrix<double, 2, Eigen::Dynamic> cdf_;  // row-wise cumulative sums
  std::vector<int> pairing_;                      // empty when absent
  std::string label_;
  double param_ = -1.0;
};

DmcChannel make_channel(ChannelKind kind, double param);

double symmetric_capacity(const DmcChannel& ch);
double bhattacharyya(const DmcChannel& ch);

// pi_x(y): identity for x = 0, the symmetry involution for x = 1.
int apply_symmetry(const DmcChannel& ch, int x, int y);
SymbolVec apply_symmetry(const DmcChannel& ch, const BitVec& x, const SymbolVec& y);

int sample_output(const DmcChannel& ch, int x, SplitMix64& rng);

constexpr int kBecErasureSymbol = 2;

}  // namespace polar
