#include "cdd/physics.hpp"

#include <cmath>

namespace cdd {

std::string to_string(LevelLabel label) {
  switch (label) {
    case LevelLabel::g: return "g";
    case LevelLabel::m_minus2: return "m-2";
    case LevelLabel::m_minus1: return "m-1";
    case LevelLabel::m_zero: return "m0";
    case LevelLabel::m_plus1: return "m+1";
    case LevelLabel::m_plus2: return "m+2";
  }
  return "?";
}

LevelScheme::LevelScheme(std::vector<Level> levels) : levels_(std::move(levels)) {}

LevelScheme LevelScheme::full() {
  return LevelScheme({
      {0, LevelLabel::g, 0, Manifold::S_ground},
      {1, LevelLabel::m_minus2, -2, Manifold::D_excited},
      {2, LevelLabel::m_minus1, -1, Manifold::D_excited},
      {3, LevelLabel::m_zero, 0, Manifold::D_excited},
      {4, LevelLabel::m_plus1, 1, Manifold::D_excited},
      {5, LevelLabel::m_plus2, 2, Manifold::D_excited},
  });
}

LevelScheme LevelScheme::ququart() {
  return LevelScheme({
      {0, LevelLabel::g, 0, Manifold::S_ground},
      {1, LevelLabel::m_minus1, -1, Manifold::D_excited},
      {2, LevelLabel::m_zero, 0, Manifold::D_excited},
      {3, LevelLabel::m_plus1, 1, Manifold::D_excited},
  });
}

bool LevelScheme::has_d_level(int m_f) const {
  for (const auto& l : levels_) {
    if (l.manifold == Manifold::D_excited && l.m_f == m_f) return true;
  }
  return false;
}

int LevelScheme::index_of_d(int m_f) const {
  for (const auto& l : levels_) {
    if (l.manifold == Manifold::D_excited && l.m_f == m_f) return l.index;
  }
  throw std::invalid_argument("level scheme has no D sublevel with m_F = " +
                              std::to_string(m_f));
}

std::optional<int> LevelScheme::find_label(LevelLabel label) const {
  for (const auto& l : levels_) {
    if (l.label == label) return l.index;
  }
  return std::nullopt;
}

int LevelScheme::index_of(LevelLabel label) const {
  auto idx = find_label(label);
  if (!idx) throw std::invalid_argument("level " + to_string(label) + " not in scheme");
  return *idx;
}

ZeemanParams ZeemanParams::calibrated() {
  ZeemanParams p;
  p.bias_field_gauss = 7.7;
  p.g_f = 0.6;
  p.linear_sensitivity = hz_to_rad(6465e3) / 7.7;
  p.quadratic_coefficient = hz_to_rad(11e3);
  return p;
}

double ZeemanParams::transition_frequency(int m) const {
  if (m < -2 || m > 1) {
    throw std::invalid_argument("transition index m must be in {-2,...,1}");
  }
  return linear_sensitivity * bias_field_gauss - quadratic_coefficient * m;
}

double ZeemanParams::level_energy(int m) const {
  if (m < -2 || m > 2) throw std::invalid_argument("m_F out of range");
  double e = 0.0;
  for (int k = 0; k < m; ++k) e += transition_frequency(k);
  for (int k = m; k < 0; ++k) e -= transition_frequency(k);
  return e;
}

double zeeman_transition_frequency(int m, const ZeemanParams& params) {
  return params.transition_frequency(m);
}

void DriveField::validate(const LevelScheme& scheme) const {
  if (tones.empty()) throw std::invalid_argument("drive field has no tones");
  for (const auto& tone : tones) {
    if (tone.rabi < 0) throw std::invalid_argument("tone Rabi amplitude < 0");
    const int li = scheme.index_of(tone.lower);
    const int ui = scheme.index_of(tone.upper);
    const Level& lo = scheme.level(li);
    const Level& up = scheme.level(ui);
    if (kind == DriveKind::optical_addressing) {
      if (lo.label != LevelLabel::g || up.manifold != Manifold::D_excited) {
        throw std::invalid_argument("optical tone must couple |g> to a D sublevel");
      }
    } else {
      if (lo.manifold != Manifold::D_excited || up.manifold != Manifold::D_excited ||
          up.m_f != lo.m_f + 1) {
        throw std::invalid_argument("rf tone must couple D sublevels with dm_F = +1");
      }
    }
  }
}

namespace {

double level_energy_of(const Level& level, const ZeemanParams& params) {
  if (level.manifold == Manifold::S_ground) return 0.0;
  return params.level_energy(level.m_f);
}

}  // namespace

HermitianOperator bare_hamiltonian(const LevelScheme& scheme,
                                   const ZeemanParams& params) {
  if (!scheme.has_d_level(-1) || !scheme.has_d_level(0) || !scheme.has_d_level(1)) {
    throw std::invalid_argument("scheme must contain at least {|-1>,|0>,|1>}");
  }
  HermitianOperator h = HermitianOperator::Zero(scheme.dim(), scheme.dim());
  for (const auto& l : scheme.levels()) {
    h(l.index, l.index) = level_energy_of(l, params);
  }
  return h;
}

HermitianOperator zeeman_noise_hamiltonian(double delta_b_gauss,
                                           const LevelScheme& scheme,
                                           const ZeemanParams& params) {
  HermitianOperator h = HermitianOperator::Zero(scheme.dim(), scheme.dim());
  for (const auto& l : scheme.levels()) {
    if (l.manifold == Manifold::D_excited) {
      h(l.index, l.index) = -params.linear_sensitivity * l.m_f * delta_b_gauss;
    }
  }
  return h;
}

HermitianOperator drive_hamiltonian(const DriveField& field, double t,
                                    const LevelScheme& scheme,
                                    const ZeemanParams& params) {
  field.validate(scheme);
  HermitianOperator h = HermitianOperator::Zero(scheme.dim(), scheme.dim());
  for (const auto& tone : field.tones) {
    const int li = scheme.index_of(tone.lower);
    const int ui = scheme.index_of(tone.upper);
    const double bare = level_energy_of(scheme.level(ui), params) -
                        level_energy_of(scheme.level(li), params);
    const double omega = bare + tone.detuning;
    const Complex amp =
        0.5 * tone.rabi * std::exp(Complex(0.0, -(omega * t + tone.phase)));
    h(ui, li) += amp;
    h(li, ui) += std::conj(amp);
  }
  return h;
}

bool is_hermitian(const Eigen::MatrixXcd& op, double rel_tol) {
  const double scale = std::max(op.norm(), 1.0);
  return (op - op.adjoint()).norm() <= rel_tol * scale;
}

}  // namespace cdd
