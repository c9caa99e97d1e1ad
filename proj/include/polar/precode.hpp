#pragma once

#include <string>
#include <vector>

#include "polar/decode.hpp"

namespace polar {

enum class PrecoderKind { PermutationTable, Crc };

// k-to-K injection induced by a permutation of the K-bit vectors: the message
// is extended with zeros and pushed through the permutation. The CRC kind uses
// pi(m, r) = (m, r xor crc(m)), so precoding appends the CRC remainder.
struct PrecoderSpec {
  PrecoderKind kind = PrecoderKind::Crc;
  int k = 0;
  int K = 0;
  std::vector<std::uint32_t> table;          // PermutationTable: image of each K-bit index
  std::vector<std::uint32_t> inverse_table;  // PermutationTable: preimage lookup
  BitVec crc_poly;                           // Crc: degree K-k, explicit leading 1

  static PrecoderSpec crc(int k, int K, const std::string& poly_bits);
  static PrecoderSpec permutation(int k, int K, std::vector<std::uint32_t> table);
};

enum class Strategy { Failure, NonFailure, Retransmission };

struct PrecodedCodeSpec {
  PolarCodeSpec inner;
  PrecoderSpec precoder;  // precoder.K must equal |inner.info_set|
  Strategy strategy = Strategy::Failure;
  ListSchedule schedule;

  PrecodedCodeSpec() = default;
  PrecodedCodeSpec(PolarCodeSpec inner_, PrecoderSpec pre, Strategy strat, ListSchedule sched);
  PrecodedCodeSpec(PolarCodeSpec inner_, PrecoderSpec pre, Strategy strat, int L);

  double rate() const { return static_cast<double>(precoder.k) / static_cast<double>(inner.N); }
};

enum class OutcomeTag { Message, Failure, RetryRequested };

struct DecodeOutcome {
  OutcomeTag tag = OutcomeTag::Failure;
  BitVec message;  // present iff tag == Message
};

// Remainder of m(x) * x^(deg poly) modulo poly over GF(2); zero initial state,
// no reflection, no final xor.
BitVec crc_remainder(const BitVec& m, const BitVec& poly);

BitVec precode(const PrecoderSpec& spec, const BitVec& m);
bool precoder_valid(const PrecoderSpec& spec, const BitVec& v);
BitVec precoder_invert(const PrecoderSpec& spec, const BitVec& v);  // first k components

BitVec precoded_encode(const PrecodedCodeSpec& pspec, const BitVec& m);

// Runs list decoding, filters the final list down to precoder-valid vectors,
// and applies the configured fallback strategy when the filter comes up empty.
// `detail` (optional) receives the unfiltered list for miss accounting.
DecodeOutcome precoded_decode(const PrecodedCodeSpec& pspec, const DmcChannel& ch,
                              const SymbolVec& y, SclResult* detail = nullptr);
DecodeOutcome precoded_decode(ListDecoder& engine, const PrecodedCodeSpec& pspec,
                              const SymbolVec& y, SclResult* detail = nullptr);

}  // namespace polar
