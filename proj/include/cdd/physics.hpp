#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdd/units.hpp"

namespace cdd {

using Complex = std::complex<double>;
using HermitianOperator = Eigen::MatrixXcd;

// Bare levels of the ququart plus the two m_F = +-2 sublevels kept for
// leakage tracking: |g> = 2S1/2 (F=0) and the five 2D3/2 (F=2) sublevels.
enum class LevelLabel { g, m_minus2, m_minus1, m_zero, m_plus1, m_plus2 };

enum class Manifold { S_ground, D_excited };

std::string to_string(LevelLabel label);

struct Level {
  int index;
  LevelLabel label;
  int m_f;  // 0 for |g>
  Manifold manifold;
};

class LevelScheme {
 public:
  // Six levels: g, m-2, m-1, m0, m+1, m+2 (indices 0..5).
  static LevelScheme full();
  // Ququart reduction: g, m-1, m0, m+1 (indices 0..3).
  static LevelScheme ququart();

  int dim() const { return static_cast<int>(levels_.size()); }
  const std::vector<Level>& levels() const { return levels_; }
  const Level& level(int index) const { return levels_.at(index); }

  int ground_index() const { return 0; }
  bool has_d_level(int m_f) const;
  int index_of_d(int m_f) const;              // throws if absent
  std::optional<int> find_label(LevelLabel label) const;
  int index_of(LevelLabel label) const;       // throws if absent

 private:
  explicit LevelScheme(std::vector<Level> levels);
  std::vector<Level> levels_;
};

// Zeeman parameterization of the D manifold.  The transition frequency
// between neighboring sublevels is affine in m: linear part calibrated
// against the measured |0> -> |1> splitting, quadratic part as the
// per-step asymmetry.
struct ZeemanParams {
  double bias_field_gauss = 7.7;
  double g_f = 0.6;                       // Lande factor, bookkeeping only
  double linear_sensitivity = 0.0;        // rad/s per gauss per unit m_F
  double quadratic_coefficient = 0.0;     // rad/s per unit m

  // 7.7 G operating point: omega_{m,m+1} = 2pi x [6465 - 11 m] kHz.
  static ZeemanParams calibrated();

  // |m> -> |m+1> splitting, m in {-2,...,1}.
  double transition_frequency(int m) const;
  // Level energy relative to |0>, m in {-2,...,2}.
  double level_energy(int m) const;
};

double zeeman_transition_frequency(int m, const ZeemanParams& params);

// One spectral component of a control field.  detuning is measured from
// the bare transition of the coupling pair.
enum class DriveKind { rf_dressing, optical_addressing };

struct Tone {
  LevelLabel lower;
  LevelLabel upper;
  double detuning = 0.0;  // rad/s
  double rabi = 0.0;      // rad/s, >= 0
  double phase = 0.0;     // rad, [0, 2pi)
};

struct DriveField {
  std::vector<Tone> tones;
  DriveKind kind = DriveKind::optical_addressing;

  void validate(const LevelScheme& scheme) const;
};

// Diagonal bare Hamiltonian: E_g = 0, D levels at their Zeeman energies
// relative to |0>.
HermitianOperator bare_hamiltonian(const LevelScheme& scheme,
                                   const ZeemanParams& params);

// Linear Zeeman response to a field fluctuation delta_b (gauss):
// diagonal entries -linear_sensitivity * m_F * delta_b.
HermitianOperator zeeman_noise_hamiltonian(double delta_b_gauss,
                                           const LevelScheme& scheme,
                                           const ZeemanParams& params);

// Sum over tones of (Omega/2) e^{-i(omega t + phi)} |upper><lower| + h.c.
// with omega = bare splitting of the pair + tone detuning.
HermitianOperator drive_hamiltonian(const DriveField& field, double t,
                                    const LevelScheme& scheme,
                                    const ZeemanParams& params);

bool is_hermitian(const Eigen::MatrixXcd& op, double rel_tol = 1e-12);

}  // namespace cdd
