#include "cdd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdd {

namespace {

constexpr uint64_t kSeedStride = 0x9E3779B97F4A7C15ULL;

CompiledPulse carrier_referenced(CompiledPulse pulse) {
  for (auto& tone : pulse.field.tones) tone.detuning = 0.0;
  return pulse;
}

}  // namespace

Schedule ramsey_schedule(const CompiledPulse& half_pi,
                         const std::optional<DressingConfig>& dressing, double delay,
                         double detuning) {
  Schedule schedule;
  schedule.common_optical_detuning = detuning;
  schedule.segments.push_back(PulseSegment{half_pi.duration, half_pi.field, dressing,
                                           Frame::dressing_rotating});
  schedule.segments.push_back(
      PulseSegment{delay, std::nullopt, dressing, Frame::dressing_rotating});
  schedule.segments.push_back(PulseSegment{half_pi.duration, half_pi.field, dressing,
                                           Frame::dressing_rotating});
  return schedule;
}

SpectroscopyResult run_spectroscopy(const SpectroscopyConfig& cfg,
                                    const DressingConfig& dressing,
                                    const NoiseModel& noise, const LevelScheme& scheme,
                                    const ZeemanParams& params, uint64_t seed,
                                    int workers) {
  if (cfg.targets.empty()) throw std::invalid_argument("no spectroscopy targets");
  if (cfg.detuning_grid.empty()) throw std::invalid_argument("empty detuning grid");
  if (!std::is_sorted(cfg.detuning_grid.begin(), cfg.detuning_grid.end())) {
    throw std::invalid_argument("detuning grid must be sorted");
  }
  if (cfg.probe_omega_s < 0.0) throw std::invalid_argument("probe omega_s must be >= 0");

  SpectroscopyResult result;
  result.dressed_labels = dressed_basis(dressing).labels;

  StateVector psi0 = StateVector::Zero(scheme.dim());
  psi0(scheme.ground_index()) = 1.0;

  if (cfg.probe_omega_s == 0.0) {
    // No drive: the response is flat zero excitation.
    for (const GateTarget target : cfg.targets) {
      std::vector<SpectroscopyRow> rows;
      for (const double det : cfg.detuning_grid) {
        SpectroscopyRow row;
        row.detuning = det;
        row.ground = 1.0;
        rows.push_back(row);
      }
      result.scans.emplace_back(target, std::move(rows));
    }
    return result;
  }

  uint64_t point = 0;
  for (const GateTarget target : cfg.targets) {
    GateRequest req{target, 0, cfg.probe_angle, 0.0};
    const CompiledPulse probe = carrier_referenced(
        compile_single_qudit(req, dressing, cfg.probe_omega_s, params));

    std::vector<SpectroscopyRow> rows;
    for (const double det : cfg.detuning_grid) {
      Schedule schedule;
      schedule.common_optical_detuning = det;
      schedule.segments.push_back(
          PulseSegment{probe.duration, probe.field, dressing, Frame::dressing_rotating});

      const EnsembleResult ens =
          monte_carlo(schedule, noise, cfg.shots, seed + point * kSeedStride, scheme,
                      params, psi0, {}, workers, dressing);
      ++point;

      SpectroscopyRow row;
      row.detuning = det;
      row.ground = ens.populations(scheme.ground_index());
      row.dressed = ens.dressed_populations;
      row.leakage = std::max(
          0.0, 1.0 - row.ground - row.dressed[0] - row.dressed[1] - row.dressed[2]);
      rows.push_back(row);
    }
    result.scans.emplace_back(target, std::move(rows));
  }
  return result;
}

RamseyResult run_ramsey(const RamseyConfig& cfg,
                        const std::optional<DressingConfig>& dressing,
                        const NoiseModel& noise, const LevelScheme& scheme,
                        const ZeemanParams& params, uint64_t seed, int workers) {
  if (cfg.delays.empty()) throw std::invalid_argument("no Ramsey delays");
  if (!std::is_sorted(cfg.delays.begin(), cfg.delays.end()) ||
      cfg.delays.front() <= 0.0) {
    throw std::invalid_argument("delays must be positive ascending");
  }
  if (cfg.pulse_omega_s <= 0.0) throw std::invalid_argument("pulse omega_s must be > 0");

  GateRequest req = cfg.target;
  req.angle = std::numbers::pi / 2.0;
  const CompiledPulse half_pi =
      compile_single_qudit(req, dressing, cfg.pulse_omega_s, params);

  StateVector psi0 = StateVector::Zero(scheme.dim());
  psi0(scheme.ground_index()) = 1.0;

  RamseyResult result;
  uint64_t point = 0;
  for (const double delay : cfg.delays) {
    std::vector<double> scan = cfg.detuning_scan;
    if (scan.empty()) {
      // One full fringe across the scan at this delay.
      const int n = std::max(3, cfg.fringe_points);
      for (int k = 0; k < n; ++k) scan.push_back(kTwoPi * k / (n * delay));
    }

    Eigen::MatrixXd design(scan.size(), 3);
    Eigen::VectorXd excitation(scan.size());
    for (std::size_t i = 0; i < scan.size(); ++i) {
      const Schedule schedule = ramsey_schedule(half_pi, dressing, delay, scan[i]);
      const EnsembleResult ens =
          monte_carlo(schedule, noise, cfg.shots, seed + point * kSeedStride, scheme,
                      params, psi0, {}, workers);
      ++point;
      excitation(i) = ens.excitation_probability(scheme);
      design(i, 0) = 1.0;
      design(i, 1) = std::cos(scan[i] * delay);
      design(i, 2) = std::sin(scan[i] * delay);
    }

    // Fringe frequency at fixed delay equals the delay itself; fit the
    // known-frequency sinusoid and take its relative amplitude.
    FringePoint fp;
    fp.delay = delay;
    fp.mean_excitation = excitation.mean();
    const Eigen::Vector3d coef =
        design.colPivHouseholderQr().solve(excitation);
    const double offset = coef(0);
    const double amp = std::hypot(coef(1), coef(2));
    if (offset < 1e-3) {
      fp.valid = false;
    } else {
      fp.contrast = std::min(1.0, amp / offset);
    }
    result.curve.points.push_back(fp);
  }

  std::vector<std::pair<double, double>> pts;
  for (const auto& fp : result.curve.points) {
    if (fp.valid) pts.emplace_back(fp.delay, fp.contrast);
  }
  if (pts.size() >= 3) {
    result.fit = fit_exponential(pts);
  } else {
    // Too few valid points for a decay fit; report the mean level.
    double mean = 0.0;
    for (const auto& [t, c] : pts) mean += c;
    result.fit.amplitude = pts.empty() ? 0.0 : mean / pts.size();
    result.fit.tau = std::numeric_limits<double>::infinity();
    result.fit.decaying = false;
  }
  return result;
}

FitResult fit_exponential(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("need at least 3 points to fit");
  for (const auto& [t, c] : points) {
    if (t <= 0.0) throw std::invalid_argument("fit requires positive delays");
  }

  // Log-linear initialization on the positive samples.
  double sw = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (const auto& [t, c] : points) {
    if (c <= 1e-12) continue;
    const double y = std::log(c);
    sw += 1; st += t; sy += y; stt += t * t; sty += t * y;
  }
  FitResult fit;
  const double denom = sw * stt - st * st;
  double slope = 0.0, intercept = 0.0;
  if (sw >= 2 && std::abs(denom) > 0) {
    slope = (sw * sty - st * sy) / denom;
    intercept = (sy * stt - st * sty) / denom;
  }
  if (slope >= -1e-9) {
    // Non-decaying data: report the mean level and flag tau.
    double mean = 0;
    for (const auto& [t, c] : points) mean += c;
    fit.amplitude = mean / points.size();
    fit.tau = std::numeric_limits<double>::infinity();
    fit.decaying = false;
    double r2 = 0;
    for (const auto& [t, c] : points) r2 += (c - fit.amplitude) * (c - fit.amplitude);
    fit.residual_norm = std::sqrt(r2);
    return fit;
  }

  double a = std::exp(intercept);
  double k = -slope;  // 1/tau
  // Gauss-Newton refinement of a*exp(-k t).
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (const auto& [t, c] : points) {
      const double model = a * std::exp(-k * t);
      const double r = model - c;
      const Eigen::Vector2d j(model / a, -t * model);
      jtj += j * j.transpose();
      jtr += j * r;
    }
    jtj += 1e-12 * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d step = jtj.ldlt().solve(jtr);
    a -= step(0);
    k -= step(1);
    if (a < 1e-12) a = 1e-12;
    if (k < 1e-12) k = 1e-12;
    if (step.cwiseAbs().maxCoeff() < 1e-14 * (std::abs(a) + std::abs(k))) break;
  }

  // Contrast is physical, so the amplitude is capped at 1.05; when the
  // free fit exceeds it (quasi-static shoulder at short delays), re-fit
  // the decay rate alone with the amplitude pinned to the cap.
  if (a > 1.05) {
    a = 1.05;
    for (int iter = 0; iter < 200; ++iter) {
      double jtj = 0.0, jtr = 0.0;
      for (const auto& [t, c] : points) {
        const double model = a * std::exp(-k * t);
        const double jac = -t * model;
        jtj += jac * jac;
        jtr += jac * (model - c);
      }
      if (jtj <= 0.0) break;
      const double step = jtr / jtj;
      k -= step;
      if (k < 1e-12) k = 1e-12;
      if (std::abs(step) < 1e-14 * k) break;
    }
  }

  fit.amplitude = a;
  fit.tau = 1.0 / k;
  double r2 = 0;
  for (const auto& [t, c] : points) {
    const double r = a * std::exp(-k * t) - c;
    r2 += r * r;
  }
  fit.residual_norm = std::sqrt(r2);
  return fit;
}

ReadoutResult readout_map(const std::array<Eigen::VectorXd, 5>& ion_populations,
                          const LevelScheme& scheme) {
  ReadoutResult result;
  double total = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const int m = k - 3;
    const Eigen::VectorXd& pops = ion_populations[k - 1];
    if (pops.size() != scheme.dim()) {
      throw std::invalid_argument("ion population vector dimension mismatch");
    }
    result.d_populations[k - 1] = pops(scheme.index_of_d(m));
    total += result.d_populations[k - 1];
  }
  result.ground_population = 1.0 - total;
  result.normalization_ok = total <= 1.0 + 1e-6;
  return result;
}

}  // namespace cdd
