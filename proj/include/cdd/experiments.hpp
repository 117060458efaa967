#pragma once

#include "cdd/control.hpp"

namespace cdd {

struct SpectroscopyConfig {
  std::vector<GateTarget> targets;
  std::vector<double> detuning_grid;  // rad/s, sorted ascending
  double probe_omega_s = 0.0;         // rad/s
  double probe_angle = std::numbers::pi;
  bool weak_long = true;
  int shots = 1;
};

struct SpectroscopyRow {
  double detuning = 0.0;   // rad/s
  double ground = 0.0;
  std::array<double, 3> dressed{};
  double leakage = 0.0;    // population outside {g, -1, 0, 1}
};

struct SpectroscopyResult {
  std::array<DressedLabel, 3> dressed_labels{};
  std::vector<std::pair<GateTarget, std::vector<SpectroscopyRow>>> scans;
};

// Probe pulses are the compiled per-target tone patterns referenced to
// the bare carriers; scanning the common detuning then resolves each
// dressed transition at its eigenvalue offset.
SpectroscopyResult run_spectroscopy(const SpectroscopyConfig& cfg,
                                    const DressingConfig& dressing,
                                    const NoiseModel& noise, const LevelScheme& scheme,
                                    const ZeemanParams& params, uint64_t seed,
                                    int workers = 1);

struct RamseyConfig {
  GateRequest target;                  // pi/2 pulses toward this state
  std::vector<double> delays;          // s, positive ascending
  std::vector<double> detuning_scan;   // rad/s; empty = auto per-delay fringe
  int fringe_points = 5;               // used when detuning_scan is empty
  int shots = 100;
  double pulse_omega_s = 0.0;
};

struct FringePoint {
  double delay = 0.0;
  double contrast = 0.0;
  double mean_excitation = 0.0;
  bool valid = true;
};

struct FitResult {
  double amplitude = 0.0;   // a
  double tau = 0.0;         // s; +inf flags non-decaying data
  double residual_norm = 0.0;
  bool decaying = true;
};

struct ContrastCurve {
  std::vector<FringePoint> points;
};

struct RamseyResult {
  ContrastCurve curve;
  FitResult fit;
};

RamseyResult run_ramsey(const RamseyConfig& cfg,
                        const std::optional<DressingConfig>& dressing,
                        const NoiseModel& noise, const LevelScheme& scheme,
                        const ZeemanParams& params, uint64_t seed, int workers = 1);

// Least-squares fit of a*exp(-t/tau).
FitResult fit_exponential(const std::vector<std::pair<double, double>>& points);

struct ReadoutResult {
  std::array<double, 5> d_populations{};  // m = -2..+2
  double ground_population = 0.0;         // by normalization
  bool normalization_ok = true;
};

// 5-ion readout mapping: ion k (k = 1..5) receives a pi-pulse on
// g -> |k-3> before shelving detection, so its fluorescence probability
// equals the population of |k-3>.
ReadoutResult readout_map(const std::array<Eigen::VectorXd, 5>& ion_populations,
                          const LevelScheme& scheme);

// Ramsey schedule for one (delay, detuning) point: pi/2 - delay - pi/2
// with the dressing held on throughout when active.
Schedule ramsey_schedule(const CompiledPulse& half_pi,
                         const std::optional<DressingConfig>& dressing, double delay,
                         double detuning);

}  // namespace cdd
