#include "cdd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace cdd {

double Schedule::duration() const {
  double d = 0.0;
  for (const auto& s : segments) d += s.duration;
  return d;
}

namespace {

struct OscTerm {
  int upper = 0;
  int lower = 0;
  double rabi_half = 0.0;
  double phase = 0.0;        // phase offset inside e^{-i(...)}
  double freq = 0.0;         // residual angular frequency
  double laser_sign = 0.0;   // +-1 for optical tones, 0 for rf
  bool amp_scaled = false;   // multiplied by the drive amplitude factor
};

struct CompiledSegment {
  double duration = 0.0;
  Eigen::VectorXd static_diag;      // E - D per level, rad/s
  std::vector<OscTerm> terms;
  double step = 0.0;
};

// Frame generator D_j.  Lab frame: zero.  Rotating frame: the bare
// interaction picture, plus Delta on |+-1> when dressing is active.
Eigen::VectorXd frame_generator(const LevelScheme& scheme, const ZeemanParams& params,
                                const std::optional<DressingConfig>& dressing,
                                Frame frame) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(scheme.dim());
  if (frame == Frame::lab) return d;
  for (const auto& l : scheme.levels()) {
    if (l.manifold == Manifold::D_excited) d(l.index) = params.level_energy(l.m_f);
  }
  if (dressing) {
    const double delta = dressing->delta();
    d(scheme.index_of_d(-1)) += delta;
    d(scheme.index_of_d(1)) += delta;
  }
  return d;
}

double level_energy_of(const Level& level, const ZeemanParams& params) {
  return level.manifold == Manifold::S_ground ? 0.0 : params.level_energy(level.m_f);
}

// The two rf dressing tones implied by a DressingConfig:
// omega_D1 = (E_0 - E_-1) - Delta on |-1> -> |0>,
// omega_D2 = (E_1 - E_0) + Delta on |0> -> |1>.
std::array<Tone, 2> dressing_tones(const DressingConfig& cfg) {
  return {Tone{LevelLabel::m_minus1, LevelLabel::m_zero, -cfg.delta(), cfg.omega1(),
               cfg.phase1()},
          Tone{LevelLabel::m_zero, LevelLabel::m_plus1, cfg.delta(), cfg.omega2(),
               cfg.phase2()}};
}

void append_tone_terms(std::vector<OscTerm>& out, const Tone& tone,
                       double extra_detuning, double laser_sign, bool amp_scaled,
                       const Eigen::VectorXd& frame_d, const LevelScheme& scheme,
                       const ZeemanParams& params, bool counter_rotating) {
  const int li = scheme.index_of(tone.lower);
  const int ui = scheme.index_of(tone.upper);
  const double bare = level_energy_of(scheme.level(ui), params) -
                      level_energy_of(scheme.level(li), params);
  const double omega = bare + tone.detuning + extra_detuning;
  const double d_ul = frame_d(ui) - frame_d(li);
  out.push_back(OscTerm{ui, li, 0.5 * tone.rabi, tone.phase, omega - d_ul,
                        laser_sign, amp_scaled});
  if (counter_rotating) {
    out.push_back(OscTerm{ui, li, 0.5 * tone.rabi, -tone.phase, -omega - d_ul,
                          -laser_sign, amp_scaled});
  }
}

const DressingConfig* schedule_dressing(const Schedule& schedule) {
  for (const auto& seg : schedule.segments) {
    if (seg.dressing) return &*seg.dressing;
  }
  return nullptr;
}

Frame schedule_frame(const Schedule& schedule) {
  if (schedule.segments.empty()) throw std::invalid_argument("empty schedule");
  const Frame f = schedule.segments.front().frame;
  for (const auto& seg : schedule.segments) {
    if (seg.frame != f) throw std::invalid_argument("frame mismatch between segments");
    if (seg.duration <= 0.0) throw std::invalid_argument("segment duration must be > 0");
  }
  return f;
}

std::vector<CompiledSegment> compile_schedule(const Schedule& schedule,
                                              const LevelScheme& scheme,
                                              const ZeemanParams& params,
                                              const EvolveOptions& options) {
  const Frame frame = schedule_frame(schedule);
  const DressingConfig* frame_dressing = schedule_dressing(schedule);
  const Eigen::VectorXd frame_d = frame_generator(
      scheme, params,
      frame_dressing ? std::optional<DressingConfig>(*frame_dressing) : std::nullopt,
      frame);

  std::vector<CompiledSegment> out;
  for (const auto& seg : schedule.segments) {
    CompiledSegment cs;
    cs.duration = seg.duration;
    cs.static_diag = Eigen::VectorXd::Zero(scheme.dim());
    for (const auto& l : scheme.levels()) {
      cs.static_diag(l.index) = level_energy_of(l, params) - frame_d(l.index);
    }
    if (seg.dressing) {
      if (frame_dressing &&
          (seg.dressing->delta() != frame_dressing->delta())) {
        throw std::invalid_argument("dressing detuning changes across segments");
      }
      for (const auto& tone : dressing_tones(*seg.dressing)) {
        append_tone_terms(cs.terms, tone, 0.0, 0.0, true, frame_d, scheme, params,
                          options.include_counter_rotating);
      }
    }
    if (seg.optical) {
      seg.optical->validate(scheme);
      for (const auto& tone : seg.optical->tones) {
        append_tone_terms(cs.terms, tone, schedule.common_optical_detuning, 1.0,
                          false, frame_d, scheme, params,
                          options.include_counter_rotating);
      }
    }
    double f_osc = 0.0;
    for (const auto& term : cs.terms) f_osc = std::max(f_osc, std::abs(term.freq));
    double step = options.max_step;
    if (f_osc > 0.0) {
      step = std::min(step, kTwoPi / (options.steps_per_period * f_osc));
    }
    cs.step = std::min(step, cs.duration);
    out.push_back(std::move(cs));
  }
  return out;
}

}  // namespace

double frame_max_frequency_hz(const Schedule& schedule, const LevelScheme& scheme,
                              const ZeemanParams& params) {
  EvolveOptions opts;
  const auto segments = compile_schedule(schedule, scheme, params, opts);
  double f = 0.0;
  for (const auto& cs : segments) {
    for (const auto& term : cs.terms) {
      f = std::max(f, std::abs(term.freq));
      f = std::max(f, 2.0 * term.rabi_half);
    }
    f = std::max(f, cs.static_diag.cwiseAbs().maxCoeff());
  }
  return rad_to_hz(f);
}

double required_trace_dt(const Schedule& schedule, const LevelScheme& scheme,
                         const ZeemanParams& params, const NoiseModel& model) {
  double dt = 1e-4;
  const double f = frame_max_frequency_hz(schedule, scheme, params);
  if (f > 0.0) dt = std::min(dt, 1.0 / (50.0 * f));
  for (const OuProcess* ou : {&model.broadband, &model.laser_freq}) {
    if (ou->sigma > 0.0) dt = std::min(dt, ou->correlation_time / 10.0);
  }
  double f_mains = 0.0;
  for (const auto& c : model.mains) {
    f_mains = std::max(f_mains, kMainsFrequencyHz * c.harmonic);
  }
  if (f_mains > 0.0) dt = std::min(dt, 1.0 / (50.0 * f_mains));
  return dt;
}

StateVector evolve(const StateVector& initial, const Schedule& schedule,
                   const NoiseTrace& trace, const LevelScheme& scheme,
                   const ZeemanParams& params, const EvolveOptions& options) {
  const int dim = scheme.dim();
  if (initial.size() != dim) throw std::invalid_argument("state dimension mismatch");

  const auto segments = compile_schedule(schedule, scheme, params, options);

  const double total = schedule.duration();
  if (trace.duration() + 1e-12 < total) {
    throw std::invalid_argument("noise trace shorter than the schedule");
  }
  const double f_frame = frame_max_frequency_hz(schedule, scheme, params);
  if (f_frame > 0.0 && trace.dt > 1.0 / (50.0 * f_frame)) {
    throw std::invalid_argument("noise trace undersamples the frame dynamics");
  }

  StateVector psi = initial;
  Eigen::MatrixXcd h(dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  double t0 = 0.0;
  for (const auto& cs : segments) {
    const int nsteps = std::max(1, int(std::ceil(cs.duration / cs.step)));
    const double dt = cs.duration / nsteps;
    for (int k = 0; k < nsteps; ++k) {
      const double tm = t0 + (k + 0.5) * dt;
      const double db = trace.delta_b_at(tm);
      const double ampf = trace.drive_amp_at(tm);
      const double lphase = trace.laser_phase_at(tm);

      h.setZero();
      for (const auto& l : scheme.levels()) {
        double e = cs.static_diag(l.index);
        if (l.manifold == Manifold::D_excited) {
          e += -params.linear_sensitivity * l.m_f * db;
        }
        h(l.index, l.index) = e;
      }
      for (const auto& term : cs.terms) {
        const double rabi = term.rabi_half * (term.amp_scaled ? ampf : 1.0);
        const Complex amp =
            rabi * std::exp(Complex(
                       0.0, -(term.freq * tm + term.phase + term.laser_sign * lphase)));
        h(term.upper, term.lower) += amp;
        h(term.lower, term.upper) += std::conj(amp);
      }

      solver.compute(h);
      const auto& vecs = solver.eigenvectors();
      Eigen::VectorXcd coeffs = vecs.adjoint() * psi;
      for (int i = 0; i < dim; ++i) {
        coeffs(i) *= std::exp(Complex(0.0, -solver.eigenvalues()(i) * dt));
      }
      psi = vecs * coeffs;
      if (options.observer) options.observer(t0 + (k + 1) * dt, psi);
    }
    t0 += cs.duration;
  }
  return psi;
}

double EnsembleResult::excitation_probability(const LevelScheme& scheme) const {
  return 1.0 - populations(scheme.ground_index());
}

std::array<double, 3> dressed_populations(const StateVector& state,
                                          const DressedBasis& basis,
                                          const LevelScheme& scheme) {
  const std::array<int, 3> idx = {scheme.index_of_d(-1), scheme.index_of_d(0),
                                  scheme.index_of_d(1)};
  std::array<double, 3> pops{};
  for (int k = 0; k < 3; ++k) {
    Complex overlap = 0.0;
    for (int j = 0; j < 3; ++j) {
      overlap += std::conj(basis.vectors(j, k)) * state(idx[j]);
    }
    pops[k] = std::norm(overlap);
  }
  return pops;
}

EnsembleResult monte_carlo(const Schedule& schedule, const NoiseModel& model,
                           int shots, uint64_t seed, const LevelScheme& scheme,
                           const ZeemanParams& params, const StateVector& initial,
                           const EvolveOptions& options, int workers,
                           const std::optional<DressingConfig>& projection) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const double duration = schedule.duration();
  const double trace_dt = required_trace_dt(schedule, scheme, params, model);

  std::optional<DressedBasis> basis;
  if (projection) basis = dressed_basis(*projection);

  struct ShotResult {
    Eigen::VectorXd pops;
    std::array<double, 3> dressed{};
  };
  std::vector<ShotResult> results(shots);

  auto run_range = [&](int begin, int end) {
    for (int s = begin; s < end; ++s) {
      const NoiseTrace trace =
          sample_trace(model, duration, trace_dt, seed + uint64_t(s));
      const StateVector psi =
          evolve(initial, schedule, trace, scheme, params, options);
      ShotResult r;
      r.pops = psi.cwiseAbs2();
      if (basis) r.dressed = cdd::dressed_populations(psi, *basis, scheme);
      results[s] = std::move(r);
    }
  };

  workers = std::max(1, workers);
  if (workers == 1 || shots == 1) {
    run_range(0, shots);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (shots + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(shots, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  EnsembleResult out;
  out.populations = Eigen::VectorXd::Zero(scheme.dim());
  out.shots = shots;
  out.seed = seed;
  // Fixed-order reduction keeps the ensemble deterministic for any
  // worker count.
  for (const auto& r : results) {
    out.populations += r.pops;
    for (int k = 0; k < 3; ++k) out.dressed_populations[k] += r.dressed[k];
  }
  out.populations /= double(shots);
  for (auto& p : out.dressed_populations) p /= double(shots);
  if (basis) {
    out.has_dressed = true;
    out.dressed_labels = basis->labels;
  }
  return out;
}

Eigen::VectorXcd frame_phases(const LevelScheme& scheme, const ZeemanParams& params,
                              const std::optional<DressingConfig>& dressing,
                              double t) {
  const Eigen::VectorXd d =
      frame_generator(scheme, params, dressing, Frame::dressing_rotating);
  Eigen::VectorXcd phases(scheme.dim());
  for (int i = 0; i < scheme.dim(); ++i) {
    phases(i) = std::exp(Complex(0.0, -d(i) * t));
  }
  return phases;
}

StateVector to_rotating_frame(const StateVector& lab_state, const LevelScheme& scheme,
                              const ZeemanParams& params,
                              const std::optional<DressingConfig>& dressing,
                              double t) {
  return frame_phases(scheme, params, dressing, t).conjugate().cwiseProduct(lab_state);
}

StateVector to_lab_frame(const StateVector& rotating_state, const LevelScheme& scheme,
                         const ZeemanParams& params,
                         const std::optional<DressingConfig>& dressing,
                         double t) {
  return frame_phases(scheme, params, dressing, t).cwiseProduct(rotating_state);
}

}  // namespace cdd
