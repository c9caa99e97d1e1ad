#include "polar/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "polar/decode.hpp"

namespace polar {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& msg) {
  throw std::invalid_argument("config: " + path + ": " + msg);
}

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        known = true;
        break;
      }
    if (!known)
      config_error(section.empty() ? it.key() : section + "." + it.key(), "unknown key");
  }
}

const json& need(const json& j, const char* key, const char* path = nullptr) {
  if (!j.contains(key)) config_error(path ? path : key, path ? "required" : "missing section");
  return j.at(key);
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) config_error(path, "expected an integer");
  return j.get<int>();
}

std::uint64_t get_uint64(const json& j, const std::string& path) {
  if (!(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)))
    config_error(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) config_error(path, "expected a number");
  return j.get<double>();
}

std::string get_str(const json& j, const std::string& path) {
  if (!j.is_string()) config_error(path, "expected a string");
  return j.get<std::string>();
}

void forbid(const json& j, const char* key, const std::string& path, const std::string& why) {
  if (j.contains(key)) config_error(path, why);
}

const char* method_name(ZMethod m) {
  switch (m) {
    case ZMethod::BecExact: return "BecExact";
    case ZMethod::BoundRecursion: return "BoundRecursion";
    case ZMethod::MonteCarlo: return "MonteCarlo";
    case ZMethod::OracleExact: return "OracleExact";
  }
  return "?";
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Failure: return "Failure";
    case Strategy::NonFailure: return "NonFailure";
    case Strategy::Retransmission: return "Retransmission";
  }
  return "?";
}

json serialize_config(const SimConfig& cfg) {
  json j;
  json& jc = j["channel"];
  switch (cfg.channel.kind()) {
    case ChannelKind::BSC:
      jc["kind"] = "BSC";
      jc["param"] = cfg.channel_param;
      break;
    case ChannelKind::BEC:
      jc["kind"] = "BEC";
      jc["param"] = cfg.channel_param;
      break;
    case ChannelKind::Explicit: {
      jc["kind"] = "Explicit";
      json rows = json::array();
      for (int x = 0; x < 2; ++x) {
        json row = json::array();
        for (int y = 0; y < cfg.channel.alphabet_size(); ++y)
          row.push_back(cfg.channel.transition(x, y));
        rows.push_back(std::move(row));
      }
      jc["table"] = std::move(rows);
      if (cfg.channel.has_pairing()) {
        json pr = json::array();
        for (int y = 0; y < cfg.channel.alphabet_size(); ++y) pr.push_back(cfg.channel.pairing(y));
        jc["pairing"] = std::move(pr);
      }
      break;
    }
  }
  json& jcode = j["code"];
  jcode["n"] = cfg.n;
  jcode["K"] = cfg.K;
  if (!cfg.explicit_info_set.empty()) jcode["info_set"] = cfg.explicit_info_set;
  if (cfg.frozen_zero)
    jcode["frozen"] = "zero";
  else
    jcode["frozen"] = cfg.explicit_frozen;
  json& jcons = j["construction"];
  jcons["method"] = method_name(cfg.construction);
  if (cfg.construction == ZMethod::MonteCarlo) jcons["trials"] = cfg.construction_trials;
  json& jd = j["decoder"];
  switch (cfg.decoder) {
    case SimDecoder::SC:
      jd["kind"] = "SC";
      break;
    case SimDecoder::SCL:
      jd["kind"] = "SCL";
      break;
    case SimDecoder::Precoded:
      jd["kind"] = "Precoded";
      jd["strategy"] = strategy_name(cfg.strategy);
      jd["k"] = cfg.k;
      if (!cfg.crc_poly.empty()) jd["crc_poly"] = cfg.crc_poly;
      if (!cfg.table_path.empty()) jd["table_path"] = cfg.table_path;
      break;
  }
  if (cfg.decoder != SimDecoder::SC) {
    if (!cfg.schedule.empty())
      jd["schedule"] = cfg.schedule;
    else
      jd["L"] = cfg.L;
  }
  json& js = j["sim"];
  js["trials"] = cfg.trials;
  js["seed"] = cfg.seed;
  js["max_retransmissions"] = cfg.max_retransmissions;
  return j;
}

std::string hash_config(const SimConfig& cfg) {
  const std::string s = serialize_config(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::uint64_t hamming(const BitVec& a, const BitVec& b) {
  std::uint64_t d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += a[j] != b[j];
  return d;
}

bool list_contains(const std::vector<DecodePath>& paths, const BitVec& v) {
  for (const auto& p : paths)
    if (p.prefix == v) return true;
  return false;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in.good()) config_error(field, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

PrecoderSpec build_precoder(const SimConfig& cfg, int K) {
  if (!cfg.crc_poly.empty()) return PrecoderSpec::crc(cfg.k, K, cfg.crc_poly);
  std::ifstream in(cfg.table_path);
  require(in.good(), "decoder.table_path: cannot open " + cfg.table_path);
  std::vector<std::uint32_t> tab;
  std::uint64_t v;
  while (in >> v) tab.push_back(static_cast<std::uint32_t>(v));
  return PrecoderSpec::permutation(cfg.k, K, std::move(tab));
}

SimConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("", "top level must be an object");
  check_keys(root, "", {"channel", "code", "construction", "decoder", "sim"});

  SimConfig cfg;

  const json& jc = need(root, "channel");
  check_keys(jc, "channel", {"kind", "param", "table", "table_path", "pairing"});
  const std::string ckind = get_str(need(jc, "kind", "channel.kind"), "channel.kind");
  if (ckind == "BSC" || ckind == "BEC") {
    if (!jc.contains("param")) config_error("channel.param", "required for BSC/BEC");
    forbid(jc, "table", "channel.table", "only valid for Explicit channels");
    forbid(jc, "table_path", "channel.table_path", "only valid for Explicit channels");
    forbid(jc, "pairing", "channel.pairing", "only valid for Explicit channels");
    cfg.channel_param = get_num(jc.at("param"), "channel.param");
    cfg.channel = make_channel(ckind == "BSC" ? ChannelKind::BSC : ChannelKind::BEC,
                               cfg.channel_param);
  } else if (ckind == "Explicit") {
    forbid(jc, "param", "channel.param", "only valid for BSC/BEC");
    const bool inline_table = jc.contains("table");
    const bool from_file = jc.contains("table_path");
    if (inline_table == from_file)
      config_error("channel.table", "give exactly one of table or table_path");
    json file_json;
    const json* src = &jc;
    if (from_file) {
      const std::string path = get_str(jc.at("table_path"), "channel.table_path");
      try {
        file_json = json::parse(read_file(path, "channel.table_path"));
      } catch (const json::parse_error& e) {
        config_error("channel.table_path", std::string("invalid JSON: ") + e.what());
      }
      if (!file_json.is_object()) config_error("channel.table_path", "expected a JSON object");
      check_keys(file_json, "channel.table_path", {"table", "pairing"});
      if (!file_json.contains("table")) config_error("channel.table_path", "missing table");
      forbid(jc, "pairing", "channel.pairing", "give the pairing inside the table file");
      src = &file_json;
    }
    const json& jt = src->at("table");
    if (!jt.is_array() || jt.size() != 2) config_error("channel.table", "expected two rows");
    const std::size_t q = jt.at(0).is_array() ? jt.at(0).size() : 0;
    if (q == 0 || !jt.at(1).is_array() || jt.at(1).size() != q)
      config_error("channel.table", "rows must be equal-length arrays");
    Eigen::Matrix<double, 2, Eigen::Dynamic> table(2, static_cast<Eigen::Index>(q));
    for (int x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < q; ++y)
        table(x, static_cast<Eigen::Index>(y)) =
            get_num(jt.at(static_cast<std::size_t>(x)).at(y), "channel.table");
    std::optional<std::vector<int>> pairing;
    if (src->contains("pairing")) {
      const json& jp = src->at("pairing");
      if (!jp.is_array() || jp.size() != q)
        config_error("channel.pairing", "expected one entry per output symbol");
      std::vector<int> pr;
      for (const auto& e : jp) pr.push_back(get_int(e, "channel.pairing"));
      pairing = std::move(pr);
    }
    try {
      cfg.channel = DmcChannel::explicit_table(table, std::move(pairing));
    } catch (const std::invalid_argument& e) {
      config_error("channel.table", e.what());
    }
    cfg.channel_param = -1.0;
  } else {
    config_error("channel.kind", "expected BSC, BEC, or Explicit");
  }

  const json& jcode = need(root, "code");
  check_keys(jcode, "code", {"n", "K", "info_set", "info_set_path", "frozen"});
  cfg.n = get_int(need(jcode, "n", "code.n"), "code.n");
  if (cfg.n < 0 || cfg.n > 20) config_error("code.n", "expected 0 <= n <= 20");
  const int N = 1 << cfg.n;
  if (jcode.contains("info_set") || jcode.contains("info_set_path")) {
    forbid(jcode, "K", "code.K", "give either K or an information set, not both");
    if (jcode.contains("info_set") && jcode.contains("info_set_path"))
      config_error("code.info_set", "give only one of info_set and info_set_path");
    if (jcode.contains("info_set")) {
      const json& ji = jcode.at("info_set");
      if (!ji.is_array()) config_error("code.info_set", "expected an array");
      for (const auto& e : ji) cfg.explicit_info_set.push_back(get_int(e, "code.info_set"));
    } else {
      const std::string path = get_str(jcode.at("info_set_path"), "code.info_set_path");
      std::istringstream in(read_file(path, "code.info_set_path"));
      int v;
      while (in >> v) cfg.explicit_info_set.push_back(v);
      if (!in.eof()) config_error("code.info_set_path", "expected whitespace-separated integers");
    }
    cfg.K = static_cast<int>(cfg.explicit_info_set.size());
    for (std::size_t j = 0; j < cfg.explicit_info_set.size(); ++j) {
      const int v = cfg.explicit_info_set[j];
      if (v < 1 || v > N) config_error("code.info_set", "indices must lie in 1..N");
      if (j > 0 && cfg.explicit_info_set[j - 1] >= v)
        config_error("code.info_set", "indices must be strictly increasing");
    }
  } else {
    if (!jcode.contains("K")) config_error("code.K", "required when info_set is absent");
    cfg.K = get_int(jcode.at("K"), "code.K");
    if (cfg.K < 0 || cfg.K > N) config_error("code.K", "expected 0 <= K <= N");
  }
  if (jcode.contains("frozen")) {
    const json& jf = jcode.at("frozen");
    if (jf.is_string()) {
      if (jf.get<std::string>() != "zero") config_error("code.frozen", "expected \"zero\" or a bit array");
    } else if (jf.is_array()) {
      cfg.frozen_zero = false;
      for (const auto& e : jf) {
        const int b = get_int(e, "code.frozen");
        if (b != 0 && b != 1) config_error("code.frozen", "bits must be 0/1");
        cfg.explicit_frozen.push_back(static_cast<std::uint8_t>(b));
      }
      if (static_cast<int>(cfg.explicit_frozen.size()) != N - cfg.K)
        config_error("code.frozen", "expected N - K bits");
    } else {
      config_error("code.frozen", "expected \"zero\" or a bit array");
    }
  }

  cfg.construction = cfg.channel.kind() == ChannelKind::BEC ? ZMethod::BecExact
                                                            : ZMethod::BoundRecursion;
  if (root.contains("construction")) {
    const json& jcons = root.at("construction");
    check_keys(jcons, "construction", {"method", "trials"});
    if (jcons.contains("method")) {
      const std::string m = get_str(jcons.at("method"), "construction.method");
      if (m == "BecExact")
        cfg.construction = ZMethod::BecExact;
      else if (m == "BoundRecursion")
        cfg.construction = ZMethod::BoundRecursion;
      else if (m == "MonteCarlo")
        cfg.construction = ZMethod::MonteCarlo;
      else if (m == "OracleExact")
        cfg.construction = ZMethod::OracleExact;
      else
        config_error("construction.method", "unknown method " + m);
    }
    if (jcons.contains("trials")) {
      if (cfg.construction != ZMethod::MonteCarlo)
        config_error("construction.trials", "only applies to MonteCarlo");
      cfg.construction_trials = get_int(jcons.at("trials"), "construction.trials");
      if (cfg.construction_trials < 1) config_error("construction.trials", "must be >= 1");
    }
    if (cfg.construction == ZMethod::BecExact && cfg.channel.kind() != ChannelKind::BEC)
      config_error("construction.method", "BecExact requires a BEC channel");
  }

  const json& jd = need(root, "decoder");
  check_keys(jd, "decoder", {"kind", "L", "schedule", "strategy", "k", "crc_poly", "table_path"});
  const std::string dkind = get_str(need(jd, "kind", "decoder.kind"), "decoder.kind");
  auto parse_list_size = [&]() {
    if (jd.contains("schedule")) {
      forbid(jd, "L", "decoder.L", "give either L or schedule, not both");
      const json& jsch = jd.at("schedule");
      if (!jsch.is_array()) config_error("decoder.schedule", "expected an array");
      int prev = 1;
      for (const auto& e : jsch) {
        const int s = get_int(e, "decoder.schedule");
        if (s < 1) config_error("decoder.schedule", "sizes must be >= 1");
        if (s < prev) config_error("decoder.schedule", "sizes must be non-decreasing");
        prev = s;
        cfg.schedule.push_back(s);
      }
      if (static_cast<int>(cfg.schedule.size()) != cfg.K)
        config_error("decoder.schedule", "length must equal K");
    } else {
      if (!jd.contains("L")) config_error("decoder.L", "required (or give a schedule)");
      cfg.L = get_int(jd.at("L"), "decoder.L");
      if (cfg.L < 1) config_error("decoder.L", "must be >= 1");
    }
  };
  if (dkind == "SC") {
    cfg.decoder = SimDecoder::SC;
    for (const char* key : {"L", "schedule", "strategy", "k", "crc_poly", "table_path"})
      forbid(jd, key, std::string("decoder.") + key, "not applicable to SC");
  } else if (dkind == "SCL") {
    cfg.decoder = SimDecoder::SCL;
    for (const char* key : {"strategy", "k", "crc_poly", "table_path"})
      forbid(jd, key, std::string("decoder.") + key, "only applies to Precoded");
    parse_list_size();
  } else if (dkind == "Precoded") {
    cfg.decoder = SimDecoder::Precoded;
    const std::string st = get_str(need(jd, "strategy", "decoder.strategy"), "decoder.strategy");
    if (st == "Failure")
      cfg.strategy = Strategy::Failure;
    else if (st == "NonFailure")
      cfg.strategy = Strategy::NonFailure;
    else if (st == "Retransmission")
      cfg.strategy = Strategy::Retransmission;
    else
      config_error("decoder.strategy", "expected Failure, NonFailure, or Retransmission");
    cfg.k = get_int(need(jd, "k", "decoder.k"), "decoder.k");
    if (cfg.k < 0 || cfg.k > cfg.K) config_error("decoder.k", "expected 0 <= k <= K");
    const bool has_crc = jd.contains("crc_poly");
    const bool has_table = jd.contains("table_path");
    if (has_crc == has_table)
      config_error("decoder.crc_poly", "give exactly one of crc_poly or table_path");
    if (has_crc) {
      cfg.crc_poly = get_str(jd.at("crc_poly"), "decoder.crc_poly");
      try {
        PrecoderSpec::crc(cfg.k, cfg.K, cfg.crc_poly);
      } catch (const std::invalid_argument& e) {
        config_error("decoder.crc_poly", e.what());
      }
    } else {
      cfg.table_path = get_str(jd.at("table_path"), "decoder.table_path");
    }
    parse_list_size();
  } else {
    config_error("decoder.kind", "expected SC, SCL, or Precoded");
  }

  const json& js = need(root, "sim");
  check_keys(js, "sim", {"trials", "seed", "max_retransmissions"});
  cfg.trials = get_uint64(need(js, "trials", "sim.trials"), "sim.trials");
  if (cfg.trials < 1) config_error("sim.trials", "must be >= 1");
  cfg.seed = get_uint64(need(js, "seed", "sim.seed"), "sim.seed");
  if (js.contains("max_retransmissions")) {
    if (cfg.strategy != Strategy::Retransmission || cfg.decoder != SimDecoder::Precoded)
      config_error("sim.max_retransmissions", "only applies to the Retransmission strategy");
    cfg.max_retransmissions = get_int(js.at("max_retransmissions"), "sim.max_retransmissions");
    if (cfg.max_retransmissions < 0) config_error("sim.max_retransmissions", "must be >= 0");
  }

  cfg.config_hash = hash_config(cfg);
  return cfg;
}

BuiltCode build_code(const SimConfig& cfg) {
  ZProfile prof;
  if (cfg.construction == ZMethod::MonteCarlo) {
    SplitMix64 rng = substream(cfg.seed, 1, 0);
    prof = z_profile(cfg.channel, cfg.n, cfg.construction, cfg.construction_trials, &rng);
  } else {
    prof = z_profile(cfg.channel, cfg.n, cfg.construction);
  }
  std::vector<int> info = cfg.explicit_info_set.empty() ? select_polar_set(prof, cfg.K).first
                                                        : cfg.explicit_info_set;
  BitVec frozen = cfg.frozen_zero
                      ? BitVec(static_cast<std::size_t>((1 << cfg.n) - static_cast<int>(info.size())), 0)
                      : cfg.explicit_frozen;
  return {PolarCodeSpec(cfg.n, std::move(info), std::move(frozen)), std::move(prof)};
}

SimReport run_trials(const SimConfig& cfg, int workers) {
  require(cfg.trials >= 1, "run_trials: needs at least one trial");
  require(workers >= 1, "run_trials: workers must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  BuiltCode built = build_code(cfg);
  const PolarCodeSpec& spec = built.spec;
  const DmcChannel& ch = cfg.channel;
  const int N = spec.N;
  const int K = spec.K();
  const int kmsg = cfg.decoder == SimDecoder::Precoded ? cfg.k : K;

  ListSchedule sched = cfg.schedule.empty() ? ListSchedule::constant(std::max(cfg.L, 1), K)
                                            : ListSchedule(cfg.schedule);
  require(sched.info_count() == K, "run_trials: schedule length must equal K");

  std::optional<PrecodedCodeSpec> pspec;
  if (cfg.decoder == SimDecoder::Precoded)
    pspec.emplace(spec, build_precoder(cfg, K), cfg.strategy, sched);

  struct Acc {
    std::uint64_t frame_errors = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t list_misses = 0;
    std::vector<std::uint64_t> retx;
  };
  const int nw = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), cfg.trials));
  std::vector<Acc> accs(static_cast<std::size_t>(nw));
  for (auto& a : accs) a.retx.assign(static_cast<std::size_t>(cfg.max_retransmissions) + 1, 0);

  auto worker = [&](int w) {
    Acc& a = accs[static_cast<std::size_t>(w)];
    std::optional<ListDecoder> engine;
    if (cfg.decoder != SimDecoder::SC) engine.emplace(spec, ch, sched);
    BitVec msg(static_cast<std::size_t>(kmsg));
    SymbolVec y(static_cast<std::size_t>(N));
    for (std::uint64_t t = static_cast<std::uint64_t>(w); t < cfg.trials;
         t += static_cast<std::uint64_t>(nw)) {
      SplitMix64 rng = substream(cfg.seed, 0, t);
      for (int j = 0; j < kmsg; ++j)
        msg[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(rng.next() >> 63);

      if (cfg.decoder == SimDecoder::Precoded) {
        const BitVec assembled = spec.assemble(precode(pspec->precoder, msg));
        const BitVec x = polar_transform(assembled);
        int attempts = 0;
        DecodeOutcome out;
        SclResult det;
        while (true) {
          for (int j = 0; j < N; ++j)
            y[static_cast<std::size_t>(j)] = ch.sample(x[static_cast<std::size_t>(j)], rng);
          out = precoded_decode(*engine, *pspec, y, &det);
          if (out.tag != OutcomeTag::RetryRequested || attempts >= cfg.max_retransmissions) break;
          ++attempts;
        }
        ++a.retx[static_cast<std::size_t>(attempts)];
        const bool ok = out.tag == OutcomeTag::Message && out.message == msg;
        if (!ok) {
          ++a.frame_errors;
          // a frame with no delivered message counts every bit as errored
          a.bit_errors += out.tag == OutcomeTag::Message ? hamming(out.message, msg)
                                                         : static_cast<std::uint64_t>(kmsg);
        }
        if (!list_contains(det.final_list.paths, assembled)) ++a.list_misses;
      } else {
        const BitVec assembled = spec.assemble(msg);
        const BitVec x = polar_transform(assembled);
        for (int j = 0; j < N; ++j)
          y[static_cast<std::size_t>(j)] = ch.sample(x[static_cast<std::size_t>(j)], rng);
        if (cfg.decoder == SimDecoder::SC) {
          const BitVec win = sc_decode(spec, ch, y);
          if (win != assembled) {
            ++a.frame_errors;
            a.bit_errors += hamming(spec.info_projection(win), msg);
          }
        } else {
          const SclResult res = engine->decode(y);
          if (res.winner != assembled) {
            ++a.frame_errors;
            a.bit_errors += hamming(spec.info_projection(res.winner), msg);
          }
          if (!list_contains(res.final_list.paths, assembled)) ++a.list_misses;
        }
      }
    }
  };

  std::vector<std::thread> threads;
  for (int w = 1; w < nw; ++w) threads.emplace_back(worker, w);
  worker(0);
  for (auto& t : threads) t.join();

  SimReport rep;
  rep.trials = cfg.trials;
  for (const auto& a : accs) {
    rep.frame_errors += a.frame_errors;
    rep.bit_errors += a.bit_errors;
    rep.list_misses += a.list_misses;
  }
  rep.has_list = cfg.decoder != SimDecoder::SC;
  if (cfg.decoder == SimDecoder::Precoded) {
    rep.retx_histogram.assign(static_cast<std::size_t>(cfg.max_retransmissions) + 1, 0);
    for (const auto& a : accs)
      for (std::size_t r = 0; r < a.retx.size(); ++r) rep.retx_histogram[r] += a.retx[r];
  }
  rep.N = N;
  rep.K = K;
  rep.k = kmsg;
  rep.info_set = spec.info_set;
  rep.realized_rate = static_cast<double>(kmsg) / static_cast<double>(N);

  const double trials = static_cast<double>(cfg.trials);
  rep.fer = static_cast<double>(rep.frame_errors) / trials;
  rep.fer_ci95 = ci95_half_width(rep.frame_errors, cfg.trials);
  const std::uint64_t bit_slots = cfg.trials * static_cast<std::uint64_t>(kmsg);
  rep.ber = bit_slots ? static_cast<double>(rep.bit_errors) / static_cast<double>(bit_slots) : 0.0;
  rep.ber_ci95 = bit_slots ? ci95_half_width(rep.bit_errors, bit_slots) : 0.0;
  if (rep.has_list) {
    rep.list_miss_rate = static_cast<double>(rep.list_misses) / trials;
    rep.list_miss_ci95 = ci95_half_width(rep.list_misses, cfg.trials);
  }
  std::uint64_t retx_total = 0;
  for (std::size_t r = 0; r < rep.retx_histogram.size(); ++r)
    retx_total += rep.retx_histogram[r] * r;
  rep.retx_mean = rep.retx_histogram.empty() ? 0.0 : static_cast<double>(retx_total) / trials;

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

double ci95_half_width(std::uint64_t events, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  const double z = 1.959963984540054;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(events) / t;
  if (events >= 10 && trials - events >= 10) return z * std::sqrt(p * (1.0 - p) / t);
  // Wilson interval half-width; stays informative at zero or few events
  const double z2t = z * z / t;
  return z * std::sqrt(p * (1.0 - p) / t + z2t / (4.0 * t)) / (1.0 + z2t);
}

namespace {

BoundCheck bounds_common(const ZProfile& z, const std::vector<int>& info_set, int N,
                         std::optional<double> beta) {
  require(z.N == N, "verify_bounds: profile and report block lengths differ");
  BoundCheck out;
  KahanSum sz;
  for (int i : info_set) sz.add(z.value(i));
  out.sum_z = sz.value();
  if (beta) {
    out.beta_target = beta;
    out.reference_value = std::exp2(-std::pow(static_cast<double>(N), *beta));
  }
  return out;
}

}  // namespace

BoundCheck verify_bounds(const ZProfile& z, const oracle::ExactErrorReport& report,
                         std::optional<double> beta) {
  BoundCheck out = bounds_common(z, report.info_set, report.N, beta);
  out.list_miss_estimate = report.list_miss.value_or(report.average_error);
  out.avg_error_estimate = report.average_error;
  out.margin1 = 0.0;
  out.margin2 = 0.0;
  out.prop1 = out.list_miss_estimate <= out.sum_z;
  out.prop2 = out.avg_error_estimate <= 2.0 * out.sum_z;
  return out;
}

BoundCheck verify_bounds(const ZProfile& z, const SimReport& report, std::optional<double> beta) {
  BoundCheck out = bounds_common(z, report.info_set, report.N, beta);
  out.list_miss_estimate = report.has_list ? report.list_miss_rate : report.fer;
  out.avg_error_estimate = report.fer;
  const double sigma1 =
      (report.has_list ? report.list_miss_ci95 : report.fer_ci95) / 1.959963984540054;
  const double sigma2 = report.fer_ci95 / 1.959963984540054;
  out.margin1 = 3.0 * sigma1;
  out.margin2 = 3.0 * sigma2;
  out.prop1 = out.list_miss_estimate - out.margin1 <= out.sum_z;
  out.prop2 = out.avg_error_estimate - out.margin2 <= 2.0 * out.sum_z;
  return out;
}

std::string csv_header() {
  return "config_hash,N,K,k,rate,channel_param,L,strategy,trials,frame_errors,fer,fer_ci95,"
         "ber,list_misses,list_miss_rate,retx_mean,sum_z,prop1,prop2,seconds";
}

std::string csv_row(const SimConfig& cfg, const SimReport& report, const BoundCheck& bound) {
  const int lmax = cfg.schedule.empty()
                       ? (cfg.decoder == SimDecoder::SC ? 1 : cfg.L)
                       : *std::max_element(cfg.schedule.begin(), cfg.schedule.end());
  const char* strategy =
      cfg.decoder == SimDecoder::Precoded ? strategy_name(cfg.strategy) : "none";
  std::string row;
  row += cfg.config_hash;
  row += ',' + std::to_string(report.N);
  row += ',' + std::to_string(report.K);
  row += ',' + std::to_string(report.k);
  row += ',' + fmt_g(report.realized_rate);
  row += ',' + fmt_g(cfg.channel_param);
  row += ',' + std::to_string(lmax);
  row += ',';
  row += strategy;
  row += ',' + std::to_string(report.trials);
  row += ',' + std::to_string(report.frame_errors);
  row += ',' + fmt_g(report.fer);
  row += ',' + fmt_g(report.fer_ci95);
  row += ',' + fmt_g(report.ber);
  row += ',' + std::to_string(report.list_misses);
  row += ',' + fmt_g(report.list_miss_rate);
  row += ',' + fmt_g(report.retx_mean);
  row += ',' + fmt_g(bound.sum_z);
  row += ',' + std::to_string(bound.prop1 ? 1 : 0);
  row += ',' + std::to_string(bound.prop2 ? 1 : 0);
  char sec[32];
  std::snprintf(sec, sizeof(sec), "%.3f", report.seconds);
  row += ',';
  row += sec;
  return row;
}

SimConfig apply_axis(const SimConfig& base, const std::string& axis, double value) {
  SimConfig cfg = base;
  if (axis == "n") {
    const int n = static_cast<int>(std::lround(value));
    require(static_cast<double>(n) == value && n >= 0 && n <= 20, "sweep: n must be an integer in 0..20");
    require(base.explicit_info_set.empty(), "sweep: axis n needs a constructed information set");
    require(base.schedule.empty(), "sweep: axis n cannot resize an explicit schedule");
    require(base.frozen_zero, "sweep: axis n cannot resize explicit frozen values");
    const double rate = static_cast<double>(base.K) / static_cast<double>(1 << base.n);
    cfg.n = n;
    cfg.K = static_cast<int>(std::lround(rate * static_cast<double>(1 << n)));
    cfg.K = std::max(0, std::min(cfg.K, 1 << n));
  } else if (axis == "L") {
    require(base.decoder != SimDecoder::SC, "sweep: axis L needs a list decoder");
    require(base.schedule.empty(), "sweep: axis L cannot override an explicit schedule");
    const int L = static_cast<int>(std::lround(value));
    require(static_cast<double>(L) == value && L >= 1, "sweep: L must be a positive integer");
    cfg.L = L;
  } else if (axis == "rate") {
    require(base.explicit_info_set.empty(), "sweep: axis rate needs a constructed information set");
    require(base.schedule.empty(), "sweep: axis rate cannot resize an explicit schedule");
    require(base.frozen_zero, "sweep: axis rate cannot resize explicit frozen values");
    require(value >= 0.0 && value <= 1.0, "sweep: rate must lie in [0, 1]");
    cfg.K = static_cast<int>(std::lround(value * static_cast<double>(1 << base.n)));
  } else if (axis == "param") {
    require(base.channel.kind() != ChannelKind::Explicit,
            "sweep: axis param needs a parametric channel");
    cfg.channel_param = value;
    cfg.channel = make_channel(base.channel.kind(), value);
  } else {
    require(false, "sweep: unknown axis " + axis);
  }
  cfg.config_hash = hash_config(cfg);
  return cfg;
}

}  // namespace polar
