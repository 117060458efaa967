#include "cdd/control.hpp"

#include <algorithm>
#include <cmath>

namespace cdd {

std::string to_string(GateTarget target) {
  switch (target) {
    case GateTarget::g_plus: return "g_plus";
    case GateTarget::g_minus: return "g_minus";
    case GateTarget::g_tilde_plus: return "g_tilde_plus";
    case GateTarget::g_tilde_minus: return "g_tilde_minus";
    case GateTarget::g_tilde_zero: return "g_tilde_zero";
    case GateTarget::g_bare: return "g_bare";
  }
  return "?";
}

GateTarget gate_target_from_string(const std::string& name) {
  if (name == "g_plus") return GateTarget::g_plus;
  if (name == "g_minus") return GateTarget::g_minus;
  if (name == "g_tilde_plus") return GateTarget::g_tilde_plus;
  if (name == "g_tilde_minus") return GateTarget::g_tilde_minus;
  if (name == "g_tilde_zero") return GateTarget::g_tilde_zero;
  if (name == "g_bare") return GateTarget::g_bare;
  throw std::invalid_argument("unknown gate target: " + name);
}

namespace {

double wrap_phase(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  return phi;
}

LevelLabel d_label(int m) {
  switch (m) {
    case -2: return LevelLabel::m_minus2;
    case -1: return LevelLabel::m_minus1;
    case 0: return LevelLabel::m_zero;
    case 1: return LevelLabel::m_plus1;
    case 2: return LevelLabel::m_plus2;
  }
  throw std::invalid_argument("m_F out of range");
}

std::optional<DressedLabel> dressed_label_of(GateTarget target, int bare_m,
                                             const std::optional<DressingConfig>& cfg) {
  switch (target) {
    case GateTarget::g_plus: return DressedLabel::plus;
    case GateTarget::g_minus: return DressedLabel::minus;
    case GateTarget::g_tilde_plus: return DressedLabel::tilde_plus;
    case GateTarget::g_tilde_minus: return DressedLabel::tilde_minus;
    case GateTarget::g_tilde_zero: return DressedLabel::tilde_zero;
    case GateTarget::g_bare:
      // |0> under monochromatic dressing is the Stark-shifted zero state.
      if (cfg && !cfg->is_bichromatic() && bare_m == 0) return DressedLabel::zero;
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

CompiledPulse compile_single_qudit(const GateRequest& req,
                                   const std::optional<DressingConfig>& config,
                                   double omega_s, const ZeemanParams& params) {
  (void)params;  // detunings are carrier-relative; no bare energies needed
  if (req.angle <= 0.0 || req.angle > kTwoPi) {
    throw std::invalid_argument("gate angle must be in (0, 2pi]");
  }
  if (omega_s <= 0.0) throw std::invalid_argument("omega_s must be > 0");

  const bool bichromatic = config && config->is_bichromatic();
  const bool monochromatic = config && !config->is_bichromatic();

  switch (req.target) {
    case GateTarget::g_plus:
    case GateTarget::g_minus:
      if (!monochromatic) {
        throw std::invalid_argument(to_string(req.target) +
                                    " requires monochromatic dressing");
      }
      break;
    case GateTarget::g_tilde_plus:
    case GateTarget::g_tilde_minus:
    case GateTarget::g_tilde_zero:
      if (!bichromatic) {
        throw std::invalid_argument(to_string(req.target) +
                                    " requires bichromatic dressing");
      }
      break;
    case GateTarget::g_bare:
      if (monochromatic && (req.bare_m == -1 || req.bare_m == 1)) {
        throw std::invalid_argument("|+-1> are dressed; address |+> or |->");
      }
      if (bichromatic && req.bare_m >= -1 && req.bare_m <= 1) {
        throw std::invalid_argument(
            "bare qudit levels are dressed; address a tilde state");
      }
      break;
  }

  CompiledPulse pulse;
  pulse.request = req;
  pulse.effective_rabi = omega_s;
  pulse.duration = req.angle / omega_s;
  pulse.field.kind = DriveKind::optical_addressing;

  const auto label = dressed_label_of(req.target, req.bare_m, config);
  if (!label) {
    pulse.field.tones.push_back(Tone{LevelLabel::g, d_label(req.bare_m), 0.0,
                                     omega_s, wrap_phase(req.axis_phase)});
    return pulse;
  }

  const DressedBasis basis = dressed_basis(*config);
  const Eigen::Vector3cd c = basis.vector_of(*label);
  const double energy = basis.value_of(*label);
  const double delta = config->delta();
  const std::array<int, 3> ms = {-1, 0, 1};
  for (int j = 0; j < 3; ++j) {
    if (std::abs(c(j)) < 1e-9) continue;
    const double frame_offset = (ms[j] == 0) ? 0.0 : delta;
    pulse.field.tones.push_back(Tone{
        LevelLabel::g, d_label(ms[j]), energy + frame_offset,
        omega_s * std::abs(c(j)),
        wrap_phase(req.axis_phase - std::arg(c(j)))});
  }
  return pulse;
}

MsToneSpec compile_ms_tones(const DressingConfig& config, double secular_frequency,
                            double gate_detuning, const ZeemanParams& params) {
  (void)params;
  if (secular_frequency <= 0.0) throw std::invalid_argument("secular frequency must be > 0");
  if (gate_detuning == 0.0) {
    throw std::invalid_argument("zero gate detuning: degenerate MS condition");
  }
  MsToneSpec spec;
  spec.field.kind = DriveKind::optical_addressing;
  const double sideband = secular_frequency + gate_detuning;
  const DressedBasis basis = dressed_basis(config);
  if (config.is_bichromatic()) {
    // g -> |~0> carries the qubit-like MS transition: four tones around
    // the sidebands of g -> |-1> and g -> |1>.
    const Eigen::Vector3cd c = basis.vector_of(DressedLabel::tilde_zero);
    const double energy = basis.value_of(DressedLabel::tilde_zero);
    for (int j : {0, 2}) {
      const int m = j - 1;
      for (double sign : {-1.0, +1.0}) {
        spec.field.tones.push_back(Tone{LevelLabel::g, d_label(m),
                                        energy + sign * sideband,
                                        std::abs(c(j)) * std::sqrt(2.0),
                                        wrap_phase(-std::arg(c(j)))});
      }
    }
    spec.note = "bichromatic dressing: 4-tone MS field on g->|~0>";
  } else {
    const double stark = basis.value_of(DressedLabel::zero);
    for (double sign : {-1.0, +1.0}) {
      spec.field.tones.push_back(
          Tone{LevelLabel::g, LevelLabel::m_zero, stark + sign * sideband, 1.0, 0.0});
    }
    spec.note =
        "monochromatic dressing: standard 2-tone MS field on g->|0> "
        "(Stark corrected), entanglement procedure unchanged";
  }
  return spec;
}

CrosstalkReport crosstalk_audit(const CompiledPulse& pulse,
                                const std::optional<DressingConfig>& config,
                                const LevelScheme& scheme, const ZeemanParams& params) {
  if (!config) throw std::invalid_argument("crosstalk audit requires active dressing");
  const DressedBasis basis = dressed_basis(*config);
  const auto target = dressed_label_of(pulse.request.target, pulse.request.bare_m, config);

  Schedule schedule;
  schedule.segments.push_back(PulseSegment{pulse.duration, pulse.field, *config,
                                           Frame::dressing_rotating});

  CrosstalkReport report;
  report.labels = basis.labels;

  EvolveOptions options;
  options.observer = [&](double, const StateVector& psi) {
    const auto pops = dressed_populations(psi, basis, scheme);
    for (int k = 0; k < 3; ++k) {
      report.peak_population[k] = std::max(report.peak_population[k], pops[k]);
    }
  };

  const NoiseModel quiet;
  const double dt = required_trace_dt(schedule, scheme, params, quiet);
  const NoiseTrace trace = sample_trace(quiet, schedule.duration(), dt, 0);

  StateVector psi0 = StateVector::Zero(scheme.dim());
  psi0(scheme.ground_index()) = 1.0;
  const StateVector psi = evolve(psi0, schedule, trace, scheme, params, options);

  const auto final_pops = dressed_populations(psi, basis, scheme);
  if (target) {
    const int k = basis.index_of(*target);
    report.target_final_population = final_pops[k];
    report.target_peak_population = report.peak_population[k];
    report.peak_population[k] = 0.0;  // target is not crosstalk
  } else {
    report.target_final_population =
        psi.cwiseAbs2()(scheme.index_of_d(pulse.request.bare_m));
  }
  return report;
}

namespace {

double audit_objective(const CompiledPulse& pulse,
                       const std::optional<DressingConfig>& config,
                       const LevelScheme& scheme, const ZeemanParams& params) {
  const CrosstalkReport report = crosstalk_audit(pulse, config, scheme, params);
  double leakage = 0.0;
  for (double p : report.peak_population) leakage += p;
  const double wanted = std::pow(std::sin(pulse.request.angle / 2.0), 2);
  return leakage + std::abs(report.target_final_population - wanted);
}

}  // namespace

PulseOptimizationResult optimize_pulse(const CompiledPulse& seed_pulse,
                                       const std::optional<DressingConfig>& config,
                                       const LevelScheme& scheme,
                                       const ZeemanParams& params,
                                       int max_evaluations) {
  const int ntones = static_cast<int>(seed_pulse.field.tones.size());
  const int n = 2 * ntones;  // per-tone phase offset and relative amplitude
  int evaluations = 0;

  auto apply = [&](const Eigen::VectorXd& x) {
    CompiledPulse p = seed_pulse;
    for (int i = 0; i < ntones; ++i) {
      p.field.tones[i].phase = wrap_phase(p.field.tones[i].phase + x(2 * i));
      p.field.tones[i].rabi *= std::exp(x(2 * i + 1));
    }
    return p;
  };
  auto f = [&](const Eigen::VectorXd& x) {
    ++evaluations;
    return audit_objective(apply(x), config, scheme, params);
  };

  // Nelder-Mead on the phase/log-amplitude offsets.
  std::vector<Eigen::VectorXd> simplex(n + 1, Eigen::VectorXd::Zero(n));
  std::vector<double> value(n + 1);
  for (int i = 0; i < n; ++i) simplex[i + 1](i) = 0.05;
  for (int i = 0; i <= n; ++i) value[i] = f(simplex[i]);

  while (evaluations < max_evaluations) {
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return value[a] < value[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= double(n);

    Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    double fr = f(reflected);
    if (fr < value[best]) {
      Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(expanded);
      if (fe < fr) { simplex[worst] = expanded; value[worst] = fe; }
      else { simplex[worst] = reflected; value[worst] = fr; }
    } else if (fr < value[second]) {
      simplex[worst] = reflected; value[worst] = fr;
    } else {
      Eigen::VectorXd contracted = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = f(contracted);
      if (fc < value[worst]) {
        simplex[worst] = contracted; value[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          value[i] = f(simplex[i]);
        }
      }
    }
    if (value[order[0]] < 1e-10) break;
  }

  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (value[i] < value[best]) best = i;
  }
  PulseOptimizationResult result;
  result.pulse = apply(simplex[best]);
  result.objective = value[best];
  result.evaluations = evaluations;
  return result;
}

}  // namespace cdd
