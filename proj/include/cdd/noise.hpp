#pragma once

#include <cstdint>
#include <vector>

#include "cdd/physics.hpp"

namespace cdd {

struct MainsComponent {
  int harmonic = 1;              // multiple of 50 Hz
  double amplitude_gauss = 0.0;
  double phase = 0.0;            // rad; ignored when random_phase is set
  bool random_phase = false;     // redrawn per shot (unsynchronized operation)
};

struct OuProcess {
  double sigma = 0.0;            // stationary standard deviation
  double correlation_time = 1.0; // s, > 0
};

struct NoiseModel {
  double dc_offset_sigma_gauss = 0.0;      // per-shot constant offset
  std::vector<MainsComponent> mains;
  OuProcess broadband;                      // gauss
  double drive_amp_rel_sigma = 0.0;         // relative Rabi error per shot
  OuProcess laser_freq;                     // rad/s
  // Experiments start synchronized with the mains line: phases fixed
  // across shots.  false redraws every mains phase per shot.
  bool mains_synchronized = true;
};

struct NoiseTrace {
  double dt = 0.0;
  uint64_t seed = 0;
  std::vector<double> delta_b;           // gauss
  std::vector<double> drive_amp_factor;  // dimensionless
  std::vector<double> laser_detuning;    // rad/s

  std::size_t size() const { return delta_b.size(); }
  double duration() const { return dt * (delta_b.empty() ? 0.0 : double(size() - 1)); }

  double delta_b_at(double t) const;
  double drive_amp_at(double t) const;
  // Accumulated laser phase: integral of laser_detuning from 0 to t.
  double laser_phase_at(double t) const;

  void finalize();  // builds the laser phase prefix integral

 private:
  std::vector<double> laser_phase_;
  double interp(const std::vector<double>& v, double t) const;
};

// Deterministic given (model, seed, duration, dt); mains components are
// exact sinusoids, OU components follow the exact discrete update.
NoiseTrace sample_trace(const NoiseModel& model, double duration, double dt,
                        uint64_t seed);

// Discrete Fourier projection of delta_b at omega, normalized so a pure
// sinusoid of amplitude A returns A.  Rejects omega above Nyquist.
double fourier_amplitude(const NoiseTrace& trace, double omega);

// Left-hand side of the excitation criterion
// |g_F mu_B dB(omega)| / (hbar |omega - gap|); >= 1 means the noise
// component can drive the protected transition.  Returns +inf at exact
// resonance.
double suppression_ratio(double omega, double b_tilde_gauss,
                         double dressing_gap, const ZeemanParams& params);

}  // namespace cdd
