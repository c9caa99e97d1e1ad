#include "polar/precode.hpp"

#include <algorithm>

namespace polar {

PrecoderSpec PrecoderSpec::crc(int k, int K, const std::string& poly_bits) {
  require(k >= 0 && K >= k, "precoder: need 0 <= k <= K");
  require(!poly_bits.empty(), "crc: empty polynomial");
  PrecoderSpec s;
  s.kind = PrecoderKind::Crc;
  s.k = k;
  s.K = K;
  s.crc_poly.reserve(poly_bits.size());
  for (char c : poly_bits) {
    require(c == '0' || c == '1', "crc: polynomial must be a binary string");
    s.crc_poly.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  require(s.crc_poly.front() == 1, "crc: the leading coefficient must be written explicitly as 1");
  require(static_cast<int>(s.crc_poly.size()) - 1 == K - k,
          "crc: polynomial degree must equal K - k");
  return s;
}

PrecoderSpec PrecoderSpec::permutation(int k, int K, std::vector<std::uint32_t> table) {
  require(k >= 0 && K >= k, "precoder: need 0 <= k <= K");
  require(K <= 20, "precoder: permutation tables above K = 20 are impractical");
  const std::size_t size = std::size_t{1} << K;
  require(table.size() == size, "precoder: table must have 2^K entries");
  std::vector<std::uint8_t> seen(size, 0);
  for (std::uint32_t v : table) {
    require(v < size, "precoder: table entry out of range");
    require(!seen[v], "precoder: table must be a bijection");
    seen[v] = 1;
  }
  PrecoderSpec s;
  s.kind = PrecoderKind::PermutationTable;
  s.k = k;
  s.K = K;
  s.table = std::move(table);
  s.inverse_table.resize(size);
  for (std::size_t i = 0; i < size; ++i) s.inverse_table[s.table[i]] = static_cast<std::uint32_t>(i);
  return s;
}

BitVec crc_remainder(const BitVec& m, const BitVec& poly) {
  require(!poly.empty() && poly.front() == 1, "crc_remainder: polynomial needs an explicit leading 1");
  for (auto b : poly) require(b == 0 || b == 1, "crc_remainder: polynomial bits must be 0/1");
  for (auto b : m) require(b == 0 || b == 1, "crc_remainder: message bits must be 0/1");
  const std::size_t deg = poly.size() - 1;
  BitVec rem(deg, 0);
  if (deg == 0) return rem;
  for (std::uint8_t bit : m) {
    const std::uint8_t fb = bit ^ rem[0];
    for (std::size_t j = 0; j + 1 < deg; ++j)
      rem[j] = static_cast<std::uint8_t>(rem[j + 1] ^ (fb & poly[j + 1]));
    rem[deg - 1] = static_cast<std::uint8_t>(fb & poly[deg]);
  }
  return rem;
}

BitVec precode(const PrecoderSpec& spec, const BitVec& m) {
  require(static_cast<int>(m.size()) == spec.k, "precode: message length must equal k");
  if (spec.kind == PrecoderKind::Crc) {
    BitVec out = m;
    BitVec r = crc_remainder(m, spec.crc_poly);
    out.insert(out.end(), r.begin(), r.end());
    return out;
  }
  const std::uint64_t idx = bits_to_uint(m) << (spec.K - spec.k);
  return uint_to_bits(spec.table[idx], spec.K);
}

bool precoder_valid(const PrecoderSpec& spec, const BitVec& v) {
  require(static_cast<int>(v.size()) == spec.K, "precoder_valid: vector length must equal K");
  if (spec.kind == PrecoderKind::Crc) {
    BitVec head(v.begin(), v.begin() + spec.k);
    BitVec r = crc_remainder(head, spec.crc_poly);
    return std::equal(r.begin(), r.end(), v.begin() + spec.k);
  }
  const std::uint64_t pre = spec.inverse_table[bits_to_uint(v)];
  const std::uint64_t pad = (spec.K == spec.k) ? 0 : (pre & ((std::uint64_t{1} << (spec.K - spec.k)) - 1));
  return pad == 0;
}

BitVec precoder_invert(const PrecoderSpec& spec, const BitVec& v) {
  require(static_cast<int>(v.size()) == spec.K, "precoder_invert: vector length must equal K");
  if (spec.kind == PrecoderKind::Crc) {
    // systematic map: the message is the first k components
    return BitVec(v.begin(), v.begin() + spec.k);
  }
  BitVec pre = uint_to_bits(spec.inverse_table[bits_to_uint(v)], spec.K);
  return BitVec(pre.begin(), pre.begin() + spec.k);
}

PrecodedCodeSpec::PrecodedCodeSpec(PolarCodeSpec inner_, PrecoderSpec precoder_, Strategy strategy_,
                                   ListSchedule schedule_)
    : inner(std::move(inner_)),
      precoder(std::move(precoder_)),
      strategy(strategy_),
      schedule(std::move(schedule_)) {
  require(precoder.K == inner.K(), "precoded code: precoder output length must equal |info set|");
  require(schedule.info_count() == inner.K(),
          "precoded code: schedule length must equal |info set|");
}

PrecodedCodeSpec::PrecodedCodeSpec(PolarCodeSpec inner_, PrecoderSpec precoder_, Strategy strategy_,
                                   int L)
    : inner(std::move(inner_)),
      precoder(std::move(precoder_)),
      strategy(strategy_),
      schedule(ListSchedule::constant(L, inner.K())) {
  require(precoder.K == inner.K(), "precoded code: precoder output length must equal |info set|");
}

BitVec precoded_encode(const PrecodedCodeSpec& spec, const BitVec& m) {
  return encode(spec.inner, precode(spec.precoder, m));
}

DecodeOutcome precoded_decode(ListDecoder& engine, const PrecodedCodeSpec& spec,
                              const SymbolVec& y, SclResult* detail) {
  SclResult res = engine.decode(y);
  const std::vector<DecodePath>& paths = res.final_list.paths;

  // The list arrives best-first with ties already broken toward the smaller
  // prefix, so the first valid entry is the accepted-set winner.
  for (const auto& path : paths) {
    BitVec proj = spec.inner.info_projection(path.prefix);
    if (precoder_valid(spec.precoder, proj)) {
      DecodeOutcome out{OutcomeTag::Message, precoder_invert(spec.precoder, proj)};
      if (detail) *detail = std::move(res);
      return out;
    }
  }

  DecodeOutcome out;
  switch (spec.strategy) {
    case Strategy::Failure:
      out.tag = OutcomeTag::Failure;
      break;
    case Strategy::NonFailure: {
      out.tag = OutcomeTag::Message;
      BitVec proj = spec.inner.info_projection(paths.front().prefix);
      out.message = precoder_invert(spec.precoder, proj);
      break;
    }
    case Strategy::Retransmission:
      out.tag = OutcomeTag::RetryRequested;
      break;
  }
  if (detail) *detail = std::move(res);
  return out;
}

DecodeOutcome precoded_decode(const PrecodedCodeSpec& spec, const DmcChannel& ch,
                              const SymbolVec& y, SclResult* detail) {
  ListDecoder engine(spec.inner, ch, spec.schedule);
  return precoded_decode(engine, spec, y, detail);
}

}  // namespace polar
