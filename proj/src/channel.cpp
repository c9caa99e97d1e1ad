#include "polar/channel.hpp"

#include <cmath>

namespace polar {

namespace {
constexpr double kRowSumTol = 1e-12;
}

void DmcChannel::validate() const {
  const int q = alphabet_size();
  require(q >= 1, label_ + ": empty output alphabet");
  for (int x = 0; x < 2; ++x) {
    double s = 0.0;
    for (int y = 0; y < q; ++y) {
      double p = table_(x, y);
      require(p >= 0.0 && p <= 1.0, label_ + ": probability out of [0,1]");
      s += p;
    }
    require(std::abs(s - 1.0) <= kRowSumTol, label_ + ": transition row does not sum to 1");
  }
  if (!pairing_.empty()) {
    require(static_cast<int>(pairing_.size()) == q, label_ + ": pairing size mismatch");
    for (int y = 0; y < q; ++y) {
      int z = pairing_[static_cast<std::size_t>(y)];
      require(z >= 0 && z < q, label_ + ": pairing index out of range");
      require(pairing_[static_cast<std::size_t>(z)] == y, label_ + ": pairing is not an involution");
      require(table_(1, y) == table_(0, z), label_ + ": pairing does not map W(.|1) onto W(.|0)");
    }
  }
}

static Eigen::Matrix<double, 2, Eigen::Dynamic> row_cdf(
    const Eigen::Matrix<double, 2, Eigen::Dynamic>& t) {
  Eigen::Matrix<double, 2, Eigen::Dynamic> c(2, t.cols());
  for (int x = 0; x < 2; ++x) {
    double s = 0.0;
    for (int y = 0; y < t.cols(); ++y) {
      s += t(x, y);
      c(x, y) = s;
    }
    c(x, t.cols() - 1) = 1.0;
  }
  return c;
}

DmcChannel DmcChannel::bsc(double p) {
  require(p >= 0.0 && p <= 1.0, "BSC: crossover probability must be in [0,1]");
  DmcChannel ch;
  ch.kind_ = ChannelKind::BSC;
  ch.table_.resize(2, 2);
  ch.table_ << 1.0 - p, p,
               p, 1.0 - p;
  ch.pairing_ = {1, 0};
  ch.label_ = "BSC(" + std::to_string(p) + ")";
  ch.param_ = p;
  ch.cdf_ = row_cdf(ch.table_);
  ch.validate();
  return ch;
}

DmcChannel DmcChannel::bec(double eps) {
  require(eps >= 0.0 && eps <= 1.0, "BEC: erasure probability must be in [0,1]");
  DmcChannel ch;
  ch.kind_ = ChannelKind::BEC;
  ch.table_.resize(2, 3);
  ch.table_ << 1.0 - eps, 0.0, eps,
               0.0, 1.0 - eps, eps;
  ch.pairing_ = {1, 0, kBecErasureSymbol};
  ch.label_ = "BEC(" + std::to_string(eps) + ")";
  ch.param_ = eps;
  ch.cdf_ = row_cdf(ch.table_);
  ch.validate();
  return ch;
}

DmcChannel DmcChannel::explicit_table(const Eigen::Matrix<double, 2, Eigen::Dynamic>& table,
                                      std::optional<std::vector<int>> pairing,
                                      std::string label) {
  DmcChannel ch;
  ch.kind_ = ChannelKind::Explicit;
  ch.table_ = table;
  if (pairing) ch.pairing_ = *pairing;
  ch.label_ = std::move(label);
  ch.cdf_ = row_cdf(ch.table_);
  ch.validate();
  return ch;
}

int DmcChannel::sample(int x, SplitMix64& rng) const {
  double u = rng.next_double();
  const int q = alphabet_size();
  for (int y = 0; y < q; ++y) {
    if (u < cdf_(x, y)) return y;
  }
  return q - 1;
}

DmcChannel make_channel(ChannelKind kind, double param) {
  switch (kind) {
    case ChannelKind::BSC: return DmcChannel::bsc(param);
    case ChannelKind::BEC: return DmcChannel::bec(param);
    default: break;
  }
  throw std::invalid_argument("make_channel: explicit channels need a transition table");
}

double symmetric_capacity(const DmcChannel& ch) {
  const int q = ch.alphabet_size();
  double sum = 0.0;
  for (int y = 0; y < q; ++y) {
    double w0 = ch.transition(0, y);
    double w1 = ch.transition(1, y);
    double mix = 0.5 * (w0 + w1);
    if (w0 > 0.0) sum += 0.5 * w0 * std::log2(w0 / mix);
    if (w1 > 0.0) sum += 0.5 * w1 * std::log2(w1 / mix);
  }
  return sum;
}

double bhattacharyya(const DmcChannel& ch) {
  const int q = ch.alphabet_size();
  // compensated accumulation, term order as in the exhaustive references,
  // so small-N oracle identities hold bit-exactly
  KahanSum sum;
  for (int y = 0; y < q; ++y) sum.add(std::sqrt(ch.transition(0, y) * ch.transition(1, y)));
  return sum.value();
}

int apply_symmetry(const DmcChannel& ch, int x, int y) {
  require(y >= 0 && y < ch.alphabet_size(), "apply_symmetry: symbol out of range");
  if (x == 0) return y;
  require(ch.has_pairing(), "apply_symmetry: channel has no symmetry pairing");
  return ch.pairing(y);
}

SymbolVec apply_symmetry(const DmcChannel& ch, const BitVec& x, const SymbolVec& y) {
  require(x.size() == y.size(), "apply_symmetry: length mismatch");
  SymbolVec out(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) out[j] = apply_symmetry(ch, x[j], y[j]);
  return out;
}

int sample_output(const DmcChannel& ch, int x, SplitMix64& rng) {
  require(x == 0 || x == 1, "sample_output: input must be a bit");
  return ch.sample(x, rng);
}

}  // namespace polar
