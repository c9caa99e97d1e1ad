#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/precode.hpp"

// Definitional brute-force references: exponential-time, small block lengths
// only. Every fast path in the library is validated against these.
namespace polar::oracle {

// Dense generator matrix (bit-reversal times the Kronecker kernel power).
Eigen::MatrixXi dense_generator(int n);

// Dense-product encoding; reference for the fast transform.
BitVec polar_transform_dense(const BitVec& m);

// W^N(y | m G_N): memoryless product of transition probabilities.
double wn_exact(const DmcChannel& ch, const SymbolVec& y, const BitVec& m);

// Coordinate-channel value: the suffix sum over m_{i+1}..m_N of
// W^N(y | m G_N) weighted by 1/2^(N-i), where i = |m_prefix| + 1.
double wn_split_exact(const DmcChannel& ch, int N, const SymbolVec& y,
                      const BitVec& m_prefix, int m_i);

// Bhattacharyya parameter of the i-th coordinate channel (1-based i),
// normalized to [0,1] like the single-use channel parameter.
double z_exact(const DmcChannel& ch, int N, int i);

// Exhaustive maximum-likelihood decoding over all valid messages; returns the
// assembled length-N vector. Ties go to the lexicographically smaller info
// projection. Likelihood products are grouped by factor value so analytically
// equal likelihoods compare bit-identically.
BitVec ml_decode_exact(const PolarCodeSpec& spec, const DmcChannel& ch, const SymbolVec& y);

enum class RefDecoder { SC, SCL, ML };

struct ExactErrorReport {
  int N = 0;
  int K = 0;  // info positions of the inner code
  int k = 0;  // message bits fed to the encoder (== K when not precoded)
  std::vector<int> info_set;

  std::vector<double> per_message_error;      // indexed by k-bit message value
  double average_error = 0.0;
  double max_error = 0.0;

  std::optional<double> list_miss;            // average over messages
  std::vector<double> per_message_list_miss;

  std::vector<double> acceptance_mass;        // Retransmission only: W(accepted | message)
};

// Enumerates every output vector, decodes once per vector, and accumulates the
// exact per-message error masses (and list-miss masses for list decoders).
ExactErrorReport exact_error_report(const PolarCodeSpec& spec, const DmcChannel& ch,
                                    RefDecoder decoder, int L = 1);
ExactErrorReport exact_error_report(const PrecodedCodeSpec& pspec, const DmcChannel& ch);

}  // namespace polar::oracle
