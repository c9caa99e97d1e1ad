#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/common.hpp"
#include "polar/construction.hpp"
#include "polar/decode.hpp"
#include "polar/oracle.hpp"
#include "polar/precode.hpp"
#include "polar/sim.hpp"
#include "polar/verify.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

polar::SimConfig load_config(const std::string& path) { return polar::parse_config(slurp(path)); }

// Accepts "0101" as well as comma/space separated digits.
polar::BitVec parse_bits(const std::string& s) {
  polar::BitVec v;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') continue;
    if (c != '0' && c != '1') throw std::runtime_error("bit strings may only contain 0/1");
    v.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return v;
}

polar::SymbolVec parse_symbols(const std::string& s) {
  polar::SymbolVec v;
  std::string norm = s;
  for (char& c : norm)
    if (c == ',') c = ' ';
  std::istringstream in(norm);
  int x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw std::runtime_error("received vector must be a list of symbol indices");
  return v;
}

std::string bits_to_string(const polar::BitVec& v) {
  std::string s;
  for (auto b : v) s += static_cast<char>('0' + b);
  return s;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

void emit_row(std::ostream& out, const polar::SimConfig& cfg, int workers,
              std::optional<double> beta, bool header) {
  polar::BuiltCode built = polar::build_code(cfg);
  polar::SimReport rep = polar::run_trials(cfg, workers);
  polar::BoundCheck bound = polar::verify_bounds(built.profile, rep, beta);
  if (header) out << polar::csv_header() << '\n';
  out << polar::csv_row(cfg, rep, bound) << '\n';
  if (beta) {
    std::fprintf(stderr, "# beta=%g reference 2^(-N^beta)=%g sum_z=%g\n", *beta,
                 bound.reference_value.value_or(0.0), bound.sum_z);
  }
}

int cmd_construct(const std::string& config_path, const std::string& out_path) {
  polar::SimConfig cfg = load_config(config_path);
  polar::BuiltCode built = polar::build_code(cfg);
  std::ofstream file;
  std::ostream& out = open_sink(file, out_path);
  out << "# channel=" << cfg.channel.label() << " capacity=" << polar::symmetric_capacity(cfg.channel)
      << " z=" << polar::bhattacharyya(cfg.channel) << '\n';
  out << "# N=" << built.spec.N << " K=" << built.spec.K()
      << (built.profile.is_upper_bound ? " (profile values are upper bounds)" : "") << '\n';
  out << "index,z,is_info\n";
  const auto& mask = built.spec.info_mask();
  for (int i = 1; i <= built.spec.N; ++i)
    out << i << ',' << built.profile.value(i) << ',' << int(mask[static_cast<std::size_t>(i - 1)])
        << '\n';
  return 0;
}

int cmd_encode(const std::string& config_path, std::string message, bool random) {
  polar::SimConfig cfg = load_config(config_path);
  polar::BuiltCode built = polar::build_code(cfg);
  const bool precoded = cfg.decoder == polar::SimDecoder::Precoded;
  const int len = precoded ? cfg.k : built.spec.K();
  polar::BitVec msg;
  if (random) {
    polar::SplitMix64 rng = polar::substream(cfg.seed, 2, 0);
    for (int i = 0; i < len; ++i) msg.push_back(static_cast<std::uint8_t>(rng.next() >> 63));
  } else {
    msg = parse_bits(message);
    if (static_cast<int>(msg.size()) != len)
      throw std::runtime_error("message must have " + std::to_string(len) + " bits");
  }
  polar::BitVec x;
  if (precoded) {
    polar::PrecodedCodeSpec ps(built.spec, polar::build_precoder(cfg, built.spec.K()),
                               cfg.strategy, cfg.L);
    std::cout << "info      " << bits_to_string(precode(ps.precoder, msg)) << '\n';
    x = precoded_encode(ps, msg);
  } else {
    x = polar::encode(built.spec, msg);
  }
  std::cout << "message   " << bits_to_string(msg) << '\n';
  std::cout << "codeword  " << bits_to_string(x) << '\n';
  return 0;
}

int cmd_decode(const std::string& config_path, const std::string& received) {
  polar::SimConfig cfg = load_config(config_path);
  polar::BuiltCode built = polar::build_code(cfg);
  polar::SymbolVec y = parse_symbols(received);
  if (static_cast<int>(y.size()) != built.spec.N)
    throw std::runtime_error("received vector must have " + std::to_string(built.spec.N) + " symbols");
  for (int s : y)
    if (s < 0 || s >= cfg.channel.alphabet_size())
      throw std::runtime_error("symbol index out of range for this channel");
  if (cfg.decoder == polar::SimDecoder::Precoded) {
    polar::PrecodedCodeSpec ps(built.spec, polar::build_precoder(cfg, built.spec.K()), cfg.strategy,
                               cfg.schedule.empty()
                                   ? polar::ListSchedule::constant(cfg.L, built.spec.K())
                                   : polar::ListSchedule(cfg.schedule));
    polar::DecodeOutcome out = precoded_decode(ps, cfg.channel, y);
    switch (out.tag) {
      case polar::OutcomeTag::Message:
        std::cout << "message   " << bits_to_string(out.message) << '\n';
        break;
      case polar::OutcomeTag::Failure:
        std::cout << "failure   (no list entry passes the validity check)\n";
        break;
      case polar::OutcomeTag::RetryRequested:
        std::cout << "retry     (retransmission requested)\n";
        break;
    }
    return 0;
  }
  polar::BitVec m;
  if (cfg.decoder == polar::SimDecoder::SC) {
    m = polar::sc_decode(built.spec, cfg.channel, y);
  } else {
    polar::ListSchedule sched = cfg.schedule.empty()
                                    ? polar::ListSchedule::constant(cfg.L, built.spec.K())
                                    : polar::ListSchedule(cfg.schedule);
    m = polar::scl_decode(built.spec, cfg.channel, y, sched).winner;
  }
  std::cout << "message   " << bits_to_string(built.spec.info_projection(m)) << '\n';
  std::cout << "full      " << bits_to_string(m) << '\n';
  return 0;
}

int cmd_simulate(const std::string& config_path, int workers, std::optional<double> beta,
                 const std::string& out_path) {
  polar::SimConfig cfg = load_config(config_path);
  std::ofstream file;
  std::ostream& out = open_sink(file, out_path);
  emit_row(out, cfg, workers, beta, true);
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values, int workers, std::optional<double> beta,
              const std::string& out_path) {
  polar::SimConfig base = load_config(config_path);
  std::ofstream file;
  std::ostream& out = open_sink(file, out_path);
  bool header = true;
  for (double v : values) {
    polar::SimConfig cfg = polar::apply_axis(base, axis, v);
    emit_row(out, cfg, workers, beta, header);
    header = false;
  }
  return 0;
}

int cmd_verify() {
  auto results = polar::verify::run_verification_suite();
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s %-28s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar coding toolkit: construction, encoding, list decoding, simulation"};
  app.require_subcommand(1);

  std::string config_path, message, received, axis, out_path;
  std::vector<double> values;
  int workers = 1;
  double beta = 0.0;

  auto* construct = app.add_subcommand("construct", "emit the reliability profile and info set");
  construct->add_option("--config", config_path, "config file (JSON)")->required();
  construct->add_option("--out", out_path, "output file (default stdout)");

  auto* encode = app.add_subcommand("encode", "encode a message with the configured code");
  encode->add_option("--config", config_path, "config file (JSON)")->required();
  auto* msg_opt = encode->add_option("--message", message, "message bits, e.g. 0101");
  encode->add_flag("--random", "draw a random message from the config seed")->excludes(msg_opt);

  auto* decode = app.add_subcommand("decode", "decode one received vector");
  decode->add_option("--config", config_path, "config file (JSON)")->required();
  decode->add_option("--received", received, "output-symbol indices, e.g. 0,1,2,0")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run; prints one CSV row");
  simulate->add_option("--config", config_path, "config file (JSON)")->required();
  simulate->add_option("--workers", workers, "worker threads (result-invariant)")
      ->check(CLI::PositiveNumber);
  auto* beta_opt = simulate->add_option("--beta", beta, "report the 2^(-N^beta) reference value");
  simulate->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "vary one axis and emit a CSV curve");
  sweep->add_option("--config", config_path, "base config file (JSON)")->required();
  sweep->add_option("--axis", axis, "one of: n, L, rate, param")->required();
  sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
  sweep->add_option("--workers", workers, "worker threads (result-invariant)")
      ->check(CLI::PositiveNumber);
  auto* beta_opt2 = sweep->add_option("--beta", beta, "report the 2^(-N^beta) reference value");
  sweep->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the self-check suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) return cmd_construct(config_path, out_path);
    if (encode->parsed()) return cmd_encode(config_path, message, encode->count("--random") > 0);
    if (decode->parsed()) return cmd_decode(config_path, received);
    if (simulate->parsed())
      return cmd_simulate(config_path, workers,
                          beta_opt->count() ? std::optional<double>(beta) : std::nullopt, out_path);
    if (sweep->parsed())
      return cmd_sweep(config_path, axis, values, workers,
                       beta_opt2->count() ? std::optional<double>(beta) : std::nullopt, out_path);
    if (verify->parsed()) return cmd_verify();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
