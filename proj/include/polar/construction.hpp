#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polar/channel.hpp"
#include "polar/rng.hpp"

namespace polar {

enum class ZMethod { BecExact, BoundRecursion, MonteCarlo, OracleExact };

// Per-coordinate Bhattacharyya profile; values[i-1] belongs to the i-th
// coordinate channel in decoding order.
struct ZProfile {
  int N = 1;
  Eigen::ArrayXd values;
  ZMethod method = ZMethod::BoundRecursion;
  bool is_upper_bound = false;

  double value(int i) const { return values[i - 1]; }  // 1-based
};

ZProfile z_profile(const DmcChannel& ch, int n, ZMethod method,
                   std::optional<int> trials = std::nullopt, SplitMix64* rng = nullptr);

// K indices of smallest Z (ties to the smaller index), ascending, plus the
// ascending complement.
std::pair<std::vector<int>, std::vector<int>> select_polar_set(const ZProfile& z, int K);

}  // namespace polar
