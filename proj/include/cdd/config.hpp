#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "cdd/experiments.hpp"

namespace cdd {

// Thrown for malformed configuration files (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One JSON file drives every subcommand.  Frequencies are given in Hz in
// the file and converted to rad/s on ingestion; fields are gauss, times
// seconds.  Unknown keys are rejected.
struct RunConfig {
  LevelScheme scheme = LevelScheme::full();
  ZeemanParams zeeman = ZeemanParams::calibrated();
  std::optional<DressingConfig> dressing;
  NoiseModel noise;

  SpectroscopyConfig spectroscopy;
  RamseyConfig ramsey;

  GateRequest gate;
  double gate_omega_s = 0.0;          // rad/s

  double preview_duration = 0.1;      // s
  double preview_dt = 1e-5;           // s

  uint64_t seed = 0;
  int workers = 0;                    // 0 = available cores
  std::string out_dir = ".";

  uint64_t hash = 0;                  // FNV-1a of the config file bytes
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

uint64_t fnv1a64(std::string_view bytes);

// RFC-4180-style CSV with a single header row; the last header cell
// carries the config hash so outputs are self-describing.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns, uint64_t config_hash);
  void row(const std::vector<std::string>& cells);

  static std::string field(double value);   // %.12g
  static std::string field(const std::string& text);

 private:
  std::ostream& out_;
  static std::string quote(const std::string& cell);
};

}  // namespace cdd
