#include "tnc/scenario_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tnc/errors.hpp"

namespace tnc {

using nlohmann::json;

const char* sweep_name(SweepKind k) {
  switch (k) {
    case SweepKind::single: return "single";
    case SweepKind::delay: return "w";
    case SweepKind::snr_db: return "snr_db";
    case SweepKind::info_delay: return "d";
    case SweepKind::backlog_threshold: return "x_bits";
  }
  return "?";
}

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"channel", {"model", "snr_db", "bandwidth_khz", "slot_ms", "rate_bits"}},
      {"network", {"hops", "backlog_bits"}},
      {"arrivals", {"kind", "T", "size", "rate", "sigma", "rho", "increments"}},
      {"eval",
       {"t", "w", "w_grid", "d", "overhead_rate", "snr_grid_db", "d_grid",
        "x_grid"}},
      {"sim", {"trials", "seed", "horizon", "t_eval", "threads"}},
  };
  return s;
}

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

void check_section_keys(const json& doc) {
  const auto& sch = schema();
  for (const auto& [section, body] : doc.items()) {
    auto it = sch.find(section);
    if (it == sch.end()) fail("unknown section '" + section + "'");
    if (!body.is_object()) fail("section '" + section + "' must be an object");
    for (const auto& [key, unused] : body.items()) {
      (void)unused;
      if (!it->second.count(key)) {
        fail("unknown key '" + key + "' in section '" + section + "'");
      }
    }
  }
  if (!doc.contains("channel")) fail("missing required section 'channel'");
  if (!doc.contains("network")) fail("missing required section 'network'");
  if (!doc.contains("arrivals")) fail("missing required section 'arrivals'");
}

double num(const json& sec, const std::string& section, const std::string& key,
           double fallback, bool required = false) {
  if (!sec.contains(key)) {
    if (required) fail("section '" + section + "' is missing key '" + key + "'");
    return fallback;
  }
  const json& v = sec.at(key);
  if (!v.is_number()) fail("'" + section + "." + key + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& sec, const std::string& section,
                     const std::string& key, std::int64_t fallback,
                     bool required = false) {
  const double d = num(sec, section, key, static_cast<double>(fallback), required);
  if (d != std::floor(d)) {
    fail("'" + section + "." + key + "' must be an integer");
  }
  return static_cast<std::int64_t>(d);
}

std::string str(const json& sec, const std::string& section,
                const std::string& key, const std::string& fallback,
                bool required = false) {
  if (!sec.contains(key)) {
    if (required) fail("section '" + section + "' is missing key '" + key + "'");
    return fallback;
  }
  const json& v = sec.at(key);
  if (!v.is_string()) fail("'" + section + "." + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> number_list(const json& sec, const std::string& section,
                                const std::string& key) {
  const json& v = sec.at(key);
  if (!v.is_array()) fail("'" + section + "." + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) {
      fail("'" + section + "." + key + "' must contain only numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

void apply_override(json& doc, const std::string& entry) {
  const auto eq = entry.find('=');
  if (eq == std::string::npos || eq == 0) {
    fail("override '" + entry + "' is not of the form key=value");
  }
  std::string key = entry.substr(0, eq);
  const std::string raw = entry.substr(eq + 1);
  std::string section;
  const auto dot = key.find('.');
  if (dot != std::string::npos) {
    section = key.substr(0, dot);
    key = key.substr(dot + 1);
    if (!schema().count(section)) {
      fail("override names unknown section '" + section + "'");
    }
    if (!schema().at(section).count(key)) {
      fail("override names unknown key '" + section + "." + key + "'");
    }
  } else {
    // Bare key: locate the unique section whose schema contains it.
    for (const auto& [sec, keys] : schema()) {
      if (keys.count(key)) {
        if (!section.empty()) {
          fail("override key '" + key + "' is ambiguous; qualify it as section." + key);
        }
        section = sec;
      }
    }
    if (section.empty()) fail("override names unknown key '" + key + "'");
  }
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;  // unquoted strings (e.g. model=constant)
  }
  doc[section][key] = value;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::shared_ptr<const ChannelModel> build_channel(const json& doc) {
  const json& ch = doc.at("channel");
  const std::string model = str(ch, "channel", "model", "rayleigh");
  if (model == "rayleigh") {
    const double snr_db = num(ch, "channel", "snr_db", 0.0, true);
    const double bw = num(ch, "channel", "bandwidth_khz", 20.0);
    const double slot = num(ch, "channel", "slot_ms", 1.0);
    if (bw <= 0.0 || slot <= 0.0) fail("bandwidth_khz and slot_ms must be > 0");
    return std::make_shared<RayleighChannel>(
        RayleighChannel::from_db(snr_db, bw * slot));
  }
  if (model == "constant") {
    return std::make_shared<ConstantChannel>(
        num(ch, "channel", "rate_bits", 0.0, true));
  }
  fail("channel.model must be 'rayleigh' or 'constant'");
}

ArrivalProcess build_arrivals(const json& doc) {
  const json& ar = doc.at("arrivals");
  const std::string kind = str(ar, "arrivals", "kind", "", true);
  std::optional<Envelope> env;
  const bool has_sigma = ar.contains("sigma");
  const bool has_rho = ar.contains("rho");
  if (has_sigma != has_rho) {
    fail("declare both arrivals.sigma and arrivals.rho or neither");
  }
  if (has_sigma) {
    env = Envelope{num(ar, "arrivals", "sigma", 0.0),
                   num(ar, "arrivals", "rho", 0.0)};
  }
  try {
    if (kind == "burst") {
      const std::int64_t T = integer(ar, "arrivals", "T", 1);
      if (T != 1) fail("a burst arrival has T = 1");
      return ArrivalProcess::burst(num(ar, "arrivals", "size", 0.0, true), env);
    }
    if (kind == "train") {
      const std::int64_t T = integer(ar, "arrivals", "T", 0, true);
      if (T < 1) fail("arrivals.T must be >= 1");
      const double rate = num(ar, "arrivals", "rate",
                              env ? env->rho_bits_per_slot : 0.0);
      return ArrivalProcess::train(rate, static_cast<int>(T), env);
    }
    if (kind == "custom") {
      if (!ar.contains("increments")) fail("arrivals.increments is required");
      return ArrivalProcess(number_list(ar, "arrivals", "increments"), env);
    }
  } catch (const ArgumentError& e) {
    fail(std::string("arrivals: ") + e.what());
  }
  fail("arrivals.kind must be burst, train or custom");
}

}  // namespace

std::string ScenarioFile::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(content_hash));
  return buf;
}

Scenario ScenarioFile::at_sweep_point(double value) const {
  Scenario sc = base;
  switch (sweep) {
    case SweepKind::single:
    case SweepKind::backlog_threshold:
      break;
    case SweepKind::delay:
      sc.target_delay = static_cast<int>(value);
      break;
    case SweepKind::snr_db: {
      const auto* ray = dynamic_cast<const RayleighChannel*>(base.channel.get());
      if (!ray) throw ArgumentError("an SNR sweep requires a Rayleigh channel");
      sc.channel = std::make_shared<RayleighChannel>(
          RayleighChannel::from_db(value, ray->symbols_per_slot()));
      break;
    }
    case SweepKind::info_delay: {
      const int d = static_cast<int>(value);
      sc.info_delay = d;
      sc.overhead = ArrivalProcess::train(overhead_rate, d);
      break;
    }
  }
  return sc;
}

ScenarioFile parse_scenario_text(const std::string& json_text,
                                 std::span<const std::string> overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("scenario file must be a JSON object");
  for (const std::string& entry : overrides) apply_override(doc, entry);
  check_section_keys(doc);

  ScenarioFile file;
  file.content_hash = fnv1a(doc.dump());

  file.base.channel = build_channel(doc);
  file.base.arrivals = build_arrivals(doc);

  const json& net = doc.at("network");
  const std::int64_t hops = integer(net, "network", "hops", 0, true);
  if (hops < 1) fail("network.hops must be >= 1");
  file.base.hops = static_cast<int>(hops);
  if (!net.contains("backlog_bits")) fail("network.backlog_bits is required");
  file.base.backlog_bits = number_list(net, "network", "backlog_bits");
  if (file.base.backlog_bits.size() != static_cast<std::size_t>(hops)) {
    fail("network.backlog_bits must list one value per hop");
  }

  const json eval_sec = doc.contains("eval") ? doc.at("eval") : json::object();
  const int T = file.base.arrivals.horizon();
  const std::int64_t t = integer(eval_sec, "eval", "t", std::max(T, 1));
  if (t < 1) fail("eval.t must be >= 1");
  file.base.eval_time = static_cast<int>(t);
  file.base.target_delay =
      static_cast<int>(integer(eval_sec, "eval", "w", 0));
  if (file.base.target_delay < 0) fail("eval.w must be >= 0");
  const std::int64_t d = integer(eval_sec, "eval", "d", 0);
  if (d < 0) fail("eval.d must be >= 0");
  file.base.info_delay = static_cast<int>(d);

  double default_overhead = 0.0;
  if (file.base.arrivals.envelope()) {
    default_overhead = file.base.arrivals.envelope()->rho_bits_per_slot;
  } else if (T > 0) {
    default_overhead = file.base.arrivals.total_bits() / T;
  }
  file.overhead_rate =
      num(eval_sec, "eval", "overhead_rate", default_overhead);
  if (file.overhead_rate < 0.0) fail("eval.overhead_rate must be >= 0");
  if (file.base.info_delay > 0) {
    file.base.overhead =
        ArrivalProcess::train(file.overhead_rate, file.base.info_delay);
  }

  int sweeps_declared = 0;
  auto take_sweep = [&](const char* key, SweepKind kind) {
    if (!eval_sec.contains(key)) return;
    ++sweeps_declared;
    file.sweep = kind;
    file.sweep_values = number_list(eval_sec, "eval", key);
    if (file.sweep_values.empty()) fail(std::string("eval.") + key + " is empty");
  };
  take_sweep("w_grid", SweepKind::delay);
  take_sweep("snr_grid_db", SweepKind::snr_db);
  take_sweep("d_grid", SweepKind::info_delay);
  take_sweep("x_grid", SweepKind::backlog_threshold);
  if (sweeps_declared > 1) {
    fail("declare at most one of eval.w_grid, snr_grid_db, d_grid, x_grid");
  }
  if (file.sweep == SweepKind::delay || file.sweep == SweepKind::info_delay) {
    for (double v : file.sweep_values) {
      if (v < 0 || v != std::floor(v)) {
        fail("sweep grid values must be non-negative integers");
      }
    }
  }

  const json sim_sec = doc.contains("sim") ? doc.at("sim") : json::object();
  const std::int64_t trials = integer(sim_sec, "sim", "trials", 100000);
  if (trials < 1) fail("sim.trials must be >= 1");
  file.sim.trials = static_cast<std::uint64_t>(trials);
  file.sim.seed =
      static_cast<std::uint64_t>(integer(sim_sec, "sim", "seed", 1));
  file.sim.max_horizon =
      static_cast<int>(integer(sim_sec, "sim", "horizon", 0));
  file.sim.t_eval = static_cast<int>(integer(sim_sec, "sim", "t_eval", -1));
  file.sim.threads = static_cast<int>(integer(sim_sec, "sim", "threads", 0));

  try {
    file.base.validate();
  } catch (const ArgumentError& e) {
    fail(std::string("invalid scenario: ") + e.what());
  }
  return file;
}

ScenarioFile load_scenario_file(const std::string& path,
                                std::span<const std::string> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str(), overrides);
  } catch (const ParseError& e) {
    fail(path + ": " + e.what());
  }
}

}  // namespace tnc
