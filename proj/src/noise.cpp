#include "cdd/noise.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <random>

namespace cdd {

double NoiseTrace::interp(const std::vector<double>& v, double t) const {
  if (v.empty()) return 0.0;
  const double x = t / dt;
  if (x <= 0.0) return v.front();
  const auto n = v.size();
  if (x >= double(n - 1)) return v.back();
  const auto k = static_cast<std::size_t>(x);
  const double f = x - double(k);
  return v[k] * (1.0 - f) + v[k + 1] * f;
}

double NoiseTrace::delta_b_at(double t) const { return interp(delta_b, t); }
double NoiseTrace::drive_amp_at(double t) const { return interp(drive_amp_factor, t); }
double NoiseTrace::laser_phase_at(double t) const { return interp(laser_phase_, t); }

void NoiseTrace::finalize() {
  laser_phase_.assign(laser_detuning.size(), 0.0);
  for (std::size_t k = 1; k < laser_detuning.size(); ++k) {
    laser_phase_[k] = laser_phase_[k - 1] +
                      0.5 * dt * (laser_detuning[k - 1] + laser_detuning[k]);
  }
}

NoiseTrace sample_trace(const NoiseModel& model, double duration, double dt,
                        uint64_t seed) {
  if (dt <= 0.0) throw std::invalid_argument("trace dt must be > 0");
  if (duration <= 0.0) throw std::invalid_argument("trace duration must be > 0");
  for (const OuProcess* ou : {&model.broadband, &model.laser_freq}) {
    if (ou->sigma > 0.0) {
      if (ou->correlation_time <= 0.0) {
        throw std::invalid_argument("OU correlation time must be > 0");
      }
      if (dt > ou->correlation_time / 10.0) {
        throw std::invalid_argument("trace dt undersamples an OU component");
      }
    }
  }

  const std::size_t n = static_cast<std::size_t>(std::ceil(duration / dt)) + 1;
  NoiseTrace trace;
  trace.dt = dt;
  trace.seed = seed;
  trace.delta_b.assign(n, 0.0);
  trace.drive_amp_factor.assign(n, 1.0);
  trace.laser_detuning.assign(n, 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);

  // Fixed draw order keeps traces reproducible when components are off.
  const double dc = model.dc_offset_sigma_gauss > 0.0
                        ? model.dc_offset_sigma_gauss * gauss(rng)
                        : 0.0;
  const double amp_factor = model.drive_amp_rel_sigma > 0.0
                                ? 1.0 + model.drive_amp_rel_sigma * gauss(rng)
                                : 1.0;

  std::vector<double> mains_phase(model.mains.size(), 0.0);
  for (std::size_t i = 0; i < model.mains.size(); ++i) {
    const auto& c = model.mains[i];
    mains_phase[i] = (c.random_phase || !model.mains_synchronized)
                         ? uniform(rng)
                         : c.phase;
  }

  for (std::size_t k = 0; k < n; ++k) {
    const double t = double(k) * dt;
    double b = dc;
    for (std::size_t i = 0; i < model.mains.size(); ++i) {
      const auto& c = model.mains[i];
      b += c.amplitude_gauss *
           std::sin(kTwoPi * kMainsFrequencyHz * c.harmonic * t + mains_phase[i]);
    }
    trace.delta_b[k] = b;
    trace.drive_amp_factor[k] = amp_factor;
  }

  auto add_ou = [&](const OuProcess& ou, std::vector<double>& out) {
    if (ou.sigma <= 0.0) return;
    const double a = std::exp(-dt / ou.correlation_time);
    const double s = ou.sigma * std::sqrt(1.0 - a * a);
    double x = ou.sigma * gauss(rng);  // stationary start
    out[0] += x;
    for (std::size_t k = 1; k < n; ++k) {
      x = a * x + s * gauss(rng);
      out[k] += x;
    }
  };
  add_ou(model.broadband, trace.delta_b);
  add_ou(model.laser_freq, trace.laser_detuning);

  trace.finalize();
  return trace;
}

double fourier_amplitude(const NoiseTrace& trace, double omega) {
  const std::size_t n = trace.size();
  if (n == 0) throw std::invalid_argument("empty trace");
  if (omega > std::numbers::pi / trace.dt) {
    throw std::invalid_argument("omega above the trace Nyquist frequency");
  }
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += trace.delta_b[k] *
           std::exp(std::complex<double>(0.0, -omega * double(k) * trace.dt));
  }
  return 2.0 * std::abs(acc) / double(n);
}

double suppression_ratio(double omega, double b_tilde_gauss,
                         double dressing_gap, const ZeemanParams& params) {
  const double num = std::abs(params.linear_sensitivity * b_tilde_gauss);
  const double den = std::abs(omega - dressing_gap);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace cdd
