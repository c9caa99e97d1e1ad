#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polar/channel.hpp"
#include "polar/construction.hpp"
#include "polar/oracle.hpp"
#include "polar/precode.hpp"

namespace polar {

enum class SimDecoder { SC, SCL, Precoded };

struct SimConfig {
  DmcChannel channel = DmcChannel::bsc(0.5);  // placeholder until parsed
  double channel_param = -1.0;

  int n = 0;
  int K = 0;
  std::vector<int> explicit_info_set;  // empty: construct from the Z profile
  bool frozen_zero = true;
  BitVec explicit_frozen;

  ZMethod construction = ZMethod::BoundRecursion;
  int construction_trials = 10000;

  SimDecoder decoder = SimDecoder::SC;
  int L = 1;
  std::vector<int> schedule;  // empty: constant L
  Strategy strategy = Strategy::Failure;
  int k = 0;                  // Precoded only
  std::string crc_poly;       // Precoded, CRC kind
  std::string table_path;     // Precoded, permutation-table kind

  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int max_retransmissions = 0;

  std::string config_hash;
};

struct SimReport {
  std::uint64_t trials = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;  // over message bits
  std::uint64_t list_misses = 0;
  bool has_list = false;
  std::vector<std::uint64_t> retx_histogram;  // index = retransmissions used

  int N = 1, K = 0, k = 0;
  std::vector<int> info_set;
  double realized_rate = 0.0;

  double fer = 0.0, fer_ci95 = 0.0;
  double ber = 0.0, ber_ci95 = 0.0;
  double list_miss_rate = 0.0, list_miss_ci95 = 0.0;
  double retx_mean = 0.0;
  double seconds = 0.0;  // wall clock; excluded from determinism comparisons
};

struct BoundCheck {
  double sum_z = 0.0;
  double list_miss_estimate = 0.0;
  double avg_error_estimate = 0.0;
  double margin1 = 0.0, margin2 = 0.0;  // statistical slack (0 for exact reports)
  bool prop1 = false, prop2 = false;
  std::optional<double> beta_target;
  std::optional<double> reference_value;  // 2^(-N^beta)
};

struct BuiltCode {
  PolarCodeSpec spec;
  ZProfile profile;
};

SimConfig parse_config(const std::string& text);

BuiltCode build_code(const SimConfig& cfg);

// Precoder described by the decoder section (CRC polynomial or table file).
PrecoderSpec build_precoder(const SimConfig& cfg, int K);

SimReport run_trials(const SimConfig& cfg, int workers = 1);

BoundCheck verify_bounds(const ZProfile& z, const oracle::ExactErrorReport& report,
                         std::optional<double> beta = std::nullopt);
BoundCheck verify_bounds(const ZProfile& z, const SimReport& report,
                         std::optional<double> beta = std::nullopt);

// 95% half-width: normal approximation, Wilson fallback under 10 events.
double ci95_half_width(std::uint64_t events, std::uint64_t trials);

std::string csv_header();
std::string csv_row(const SimConfig& cfg, const SimReport& report, const BoundCheck& bound);

// Returns a copy of `base` with one axis overridden; axis is one of
// "n", "L", "rate", "param".
SimConfig apply_axis(const SimConfig& base, const std::string& axis, double value);

}  // namespace polar
