#include "cdd/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace cdd {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
  }
}

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(std::string(key) + ": expected a number");
  return obj[key].get<double>();
}

std::vector<double> grid(const json& node, const std::string& where, double unit) {
  std::vector<double> values;
  if (node.is_array()) {
    for (const auto& v : node) {
      if (!v.is_number()) throw ConfigError(where + ": expected numbers");
      values.push_back(v.get<double>() * unit);
    }
    return values;
  }
  require_keys(node, where, {"start", "stop", "points"});
  const double start = number(node, "start", 0.0);
  const double stop = number(node, "stop", 0.0);
  const int points = static_cast<int>(number(node, "points", 0.0));
  if (points < 2) throw ConfigError(where + ": need at least 2 points");
  for (int i = 0; i < points; ++i) {
    values.push_back((start + (stop - start) * i / (points - 1)) * unit);
  }
  return values;
}

ZeemanParams parse_zeeman(const json& node) {
  require_keys(node, "zeeman",
               {"bias_field_gauss", "g_f", "linear_sensitivity_hz_per_gauss",
                "quadratic_coefficient_hz"});
  ZeemanParams p = ZeemanParams::calibrated();
  p.bias_field_gauss = number(node, "bias_field_gauss", p.bias_field_gauss);
  p.g_f = number(node, "g_f", p.g_f);
  if (node.contains("linear_sensitivity_hz_per_gauss")) {
    p.linear_sensitivity = hz_to_rad(node["linear_sensitivity_hz_per_gauss"].get<double>());
  }
  if (node.contains("quadratic_coefficient_hz")) {
    p.quadratic_coefficient = hz_to_rad(node["quadratic_coefficient_hz"].get<double>());
  }
  return p;
}

std::optional<DressingConfig> parse_dressing(const json& node,
                                             const ZeemanParams& params) {
  require_keys(node, "dressing",
               {"type", "omega_hz", "detuning_hz", "phase_rad", "omega1_hz",
                "omega2_hz", "phase1_rad", "phase2_rad"});
  if (!node.contains("type") || !node["type"].is_string()) {
    throw ConfigError("dressing: missing type");
  }
  const std::string type = node["type"].get<std::string>();
  if (type == "none") return std::nullopt;
  if (type == "monochromatic") {
    const double omega = hz_to_rad(number(node, "omega_hz", 0.0));
    const double detuning = node.contains("detuning_hz")
                                ? hz_to_rad(node["detuning_hz"].get<double>())
                                : raman_detuning(params);
    return DressingConfig::monochromatic(omega, detuning,
                                         number(node, "phase_rad", 0.0));
  }
  if (type == "bichromatic") {
    const double phase1 = number(node, "phase1_rad", 0.0);
    const double phase2 = number(node, "phase2_rad", 0.0);
    if (node.contains("omega1_hz") || node.contains("omega2_hz")) {
      return DressingConfig::bichromatic_unequal(
          hz_to_rad(number(node, "omega1_hz", 0.0)),
          hz_to_rad(number(node, "omega2_hz", 0.0)), phase1, phase2);
    }
    return DressingConfig::bichromatic(hz_to_rad(number(node, "omega_hz", 0.0)),
                                       phase1, phase2);
  }
  throw ConfigError("dressing: unknown type \"" + type + "\"");
}

NoiseModel parse_noise(const json& node) {
  require_keys(node, "noise",
               {"dc_offset_sigma_gauss", "mains", "broadband",
                "drive_amp_rel_sigma", "laser_freq", "mains_synchronized"});
  NoiseModel model;
  model.dc_offset_sigma_gauss = number(node, "dc_offset_sigma_gauss", 0.0);
  model.drive_amp_rel_sigma = number(node, "drive_amp_rel_sigma", 0.0);
  if (node.contains("mains_synchronized")) {
    model.mains_synchronized = node["mains_synchronized"].get<bool>();
  }
  if (node.contains("mains")) {
    if (!node["mains"].is_array()) throw ConfigError("noise.mains: expected an array");
    for (const auto& entry : node["mains"]) {
      require_keys(entry, "noise.mains[]",
                   {"harmonic", "amplitude_gauss", "phase_rad"});
      MainsComponent mc;
      mc.harmonic = static_cast<int>(number(entry, "harmonic", 1.0));
      mc.amplitude_gauss = number(entry, "amplitude_gauss", 0.0);
      if (entry.contains("phase_rad") && entry["phase_rad"].is_string()) {
        if (entry["phase_rad"].get<std::string>() != "random") {
          throw ConfigError("noise.mains[].phase_rad: number or \"random\"");
        }
        mc.random_phase = true;
      } else {
        mc.phase = number(entry, "phase_rad", 0.0);
      }
      model.mains.push_back(mc);
    }
  }
  if (node.contains("broadband")) {
    require_keys(node["broadband"], "noise.broadband",
                 {"sigma_gauss", "correlation_time_s"});
    model.broadband.sigma = number(node["broadband"], "sigma_gauss", 0.0);
    model.broadband.correlation_time =
        number(node["broadband"], "correlation_time_s", 1.0);
  }
  if (node.contains("laser_freq")) {
    require_keys(node["laser_freq"], "noise.laser_freq",
                 {"sigma_hz", "correlation_time_s"});
    model.laser_freq.sigma = hz_to_rad(number(node["laser_freq"], "sigma_hz", 0.0));
    model.laser_freq.correlation_time =
        number(node["laser_freq"], "correlation_time_s", 1.0);
  }
  return model;
}

GateRequest parse_gate_request(const json& node, const std::string& where) {
  GateRequest req;
  if (!node.contains("target") || !node["target"].is_string()) {
    throw ConfigError(where + ": missing target");
  }
  req.target = gate_target_from_string(node["target"].get<std::string>());
  req.bare_m = static_cast<int>(number(node, "bare_m", 0.0));
  req.angle = number(node, "angle_rad", std::numbers::pi);
  req.axis_phase = number(node, "axis_phase_rad", 0.0);
  return req;
}

SpectroscopyConfig parse_spectroscopy(const json& node) {
  require_keys(node, "spectroscopy",
               {"targets", "detuning_grid_hz", "probe_omega_s_hz",
                "probe_angle_rad", "weak_long", "shots"});
  SpectroscopyConfig cfg;
  if (node.contains("targets")) {
    for (const auto& t : node["targets"]) {
      cfg.targets.push_back(gate_target_from_string(t.get<std::string>()));
    }
  }
  if (node.contains("detuning_grid_hz")) {
    cfg.detuning_grid =
        grid(node["detuning_grid_hz"], "spectroscopy.detuning_grid_hz", kTwoPi);
  }
  cfg.probe_omega_s = hz_to_rad(number(node, "probe_omega_s_hz", 0.0));
  cfg.probe_angle = number(node, "probe_angle_rad", std::numbers::pi);
  if (node.contains("weak_long")) cfg.weak_long = node["weak_long"].get<bool>();
  cfg.shots = static_cast<int>(number(node, "shots", 1.0));
  return cfg;
}

RamseyConfig parse_ramsey(const json& node) {
  require_keys(node, "ramsey",
               {"target", "bare_m", "angle_rad", "axis_phase_rad", "delays_s",
                "detuning_scan_hz", "fringe_points", "shots", "pulse_omega_s_hz"});
  RamseyConfig cfg;
  cfg.target = parse_gate_request(node, "ramsey");
  if (node.contains("delays_s")) {
    cfg.delays = grid(node["delays_s"], "ramsey.delays_s", 1.0);
  }
  if (node.contains("detuning_scan_hz")) {
    cfg.detuning_scan =
        grid(node["detuning_scan_hz"], "ramsey.detuning_scan_hz", kTwoPi);
  }
  cfg.fringe_points = static_cast<int>(number(node, "fringe_points", 5.0));
  cfg.shots = static_cast<int>(number(node, "shots", 100.0));
  cfg.pulse_omega_s = hz_to_rad(number(node, "pulse_omega_s_hz", 0.0));
  return cfg;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  require_keys(root, "config",
               {"scheme", "zeeman", "dressing", "noise", "spectroscopy",
                "ramsey", "gate", "noise_preview", "seed", "workers", "out_dir"});

  RunConfig cfg;
  cfg.hash = fnv1a64(text);

  if (root.contains("scheme")) {
    const std::string name = root["scheme"].get<std::string>();
    if (name == "full") cfg.scheme = LevelScheme::full();
    else if (name == "ququart") cfg.scheme = LevelScheme::ququart();
    else throw ConfigError("scheme: expected \"full\" or \"ququart\"");
  }
  if (root.contains("zeeman")) cfg.zeeman = parse_zeeman(root["zeeman"]);
  if (root.contains("dressing")) {
    cfg.dressing = parse_dressing(root["dressing"], cfg.zeeman);
  }
  if (root.contains("noise")) cfg.noise = parse_noise(root["noise"]);
  if (root.contains("spectroscopy")) {
    cfg.spectroscopy = parse_spectroscopy(root["spectroscopy"]);
  }
  if (root.contains("ramsey")) cfg.ramsey = parse_ramsey(root["ramsey"]);
  if (root.contains("gate")) {
    require_keys(root["gate"], "gate",
                 {"target", "bare_m", "angle_rad", "axis_phase_rad", "omega_s_hz"});
    cfg.gate = parse_gate_request(root["gate"], "gate");
    cfg.gate_omega_s = hz_to_rad(number(root["gate"], "omega_s_hz", 0.0));
  }
  if (root.contains("noise_preview")) {
    require_keys(root["noise_preview"], "noise_preview", {"duration_s", "dt_s"});
    cfg.preview_duration = number(root["noise_preview"], "duration_s", 0.1);
    cfg.preview_dt = number(root["noise_preview"], "dt_s", 1e-5);
  }
  if (root.contains("seed")) cfg.seed = root["seed"].get<uint64_t>();
  if (root.contains("workers")) cfg.workers = root["workers"].get<int>();
  if (root.contains("out_dir")) cfg.out_dir = root["out_dir"].get<std::string>();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

void CsvWriter::header(const std::vector<std::string>& columns,
                       uint64_t config_hash) {
  std::vector<std::string> cells = columns;
  char buf[32];
  std::snprintf(buf, sizeof buf, "config_hash=%016llx",
                static_cast<unsigned long long>(config_hash));
  cells.emplace_back(buf);
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << quote(cells[i]);
  }
  out_ << "\r\n";
}

std::string CsvWriter::field(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string CsvWriter::field(const std::string& text) { return text; }

std::string CsvWriter::quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (const char c : cell) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace cdd
