#pragma once

#include <array>
#include <functional>
#include <optional>

#include "cdd/dressing.hpp"
#include "cdd/noise.hpp"
#include "cdd/physics.hpp"

namespace cdd {

using StateVector = Eigen::VectorXcd;

enum class Frame { lab, dressing_rotating };

struct PulseSegment {
  double duration = 0.0;                     // s, > 0
  std::optional<DriveField> optical;         // addressing field
  std::optional<DressingConfig> dressing;    // rf dressing
  Frame frame = Frame::dressing_rotating;
};

struct Schedule {
  std::vector<PulseSegment> segments;
  // Common shift added to every optical tone frequency (Ramsey /
  // spectroscopy scans), rad/s.
  double common_optical_detuning = 0.0;

  double duration() const;
};

struct EvolveOptions {
  // Integration steps per period of the fastest oscillating term.  The
  // stepper is a midpoint matrix exponential, exact for constant H, so
  // static Rabi magnitudes do not constrain the step.
  double steps_per_period = 200.0;
  // Upper bound on the step, covering noise-process timescales.
  double max_step = 1e-5;
  // Include counter-rotating drive terms (lab frame RWA validation).
  bool include_counter_rotating = false;
  // Called after every step with (t, state).
  std::function<void(double, const StateVector&)> observer;
};

// Largest frequency (Hz) appearing in the schedule's frame: residual
// tone frequencies, Rabi amplitudes and diagonal offsets.  The noise
// trace must resolve it: trace dt <= 1/(50 * f).
double frame_max_frequency_hz(const Schedule& schedule, const LevelScheme& scheme,
                              const ZeemanParams& params);

// Trace resolution satisfying both the evolve precondition and the OU
// sampling constraint of the model.
double required_trace_dt(const Schedule& schedule, const LevelScheme& scheme,
                         const ZeemanParams& params, const NoiseModel& model);

StateVector evolve(const StateVector& initial, const Schedule& schedule,
                   const NoiseTrace& trace, const LevelScheme& scheme,
                   const ZeemanParams& params,
                   const EvolveOptions& options = {});

struct EnsembleResult {
  Eigen::VectorXd populations;                  // per bare level, averaged
  std::array<double, 3> dressed_populations{};  // averaged, if projected
  std::array<DressedLabel, 3> dressed_labels{};
  bool has_dressed = false;
  int shots = 0;
  uint64_t seed = 0;

  double excitation_probability(const LevelScheme& scheme) const;
};

// Trajectory average over seeded noise realizations; shot s uses seed
// base_seed + s, partial results are reduced in shot order regardless of
// worker count.
EnsembleResult monte_carlo(const Schedule& schedule, const NoiseModel& model,
                           int shots, uint64_t seed, const LevelScheme& scheme,
                           const ZeemanParams& params, const StateVector& initial,
                           const EvolveOptions& options = {}, int workers = 1,
                           const std::optional<DressingConfig>& projection = {});

// Diagonal frame phases exp(-i D_j t) for the dressing rotating frame.
Eigen::VectorXcd frame_phases(const LevelScheme& scheme, const ZeemanParams& params,
                              const std::optional<DressingConfig>& dressing,
                              double t);

StateVector to_rotating_frame(const StateVector& lab_state, const LevelScheme& scheme,
                              const ZeemanParams& params,
                              const std::optional<DressingConfig>& dressing,
                              double t);

StateVector to_lab_frame(const StateVector& rotating_state, const LevelScheme& scheme,
                         const ZeemanParams& params,
                         const std::optional<DressingConfig>& dressing,
                         double t);

// Populations of the three dressed states for a full-scheme state.
std::array<double, 3> dressed_populations(const StateVector& state,
                                          const DressedBasis& basis,
                                          const LevelScheme& scheme);

}  // namespace cdd
