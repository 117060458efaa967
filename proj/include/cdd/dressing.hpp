#pragma once

#include <array>
#include <variant>

#include "cdd/physics.hpp"

namespace cdd {

// Single far-detuned field pair driving the two-photon |-1> <-> |1>
// Raman transition: Delta = -(omega_1 + omega_-1)/2, equal Rabi
// frequencies and phases on both legs.
struct Monochromatic {
  double omega = 0.0;     // rad/s
  double detuning = 0.0;  // Delta, rad/s
  double phase = 0.0;
};

// Two fields resonant with |-1> -> |0> and |0> -> |1> (Delta = 0).
struct Bichromatic {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double phase1 = 0.0;
  double phase2 = 0.0;
};

struct DressingConfig {
  std::variant<Monochromatic, Bichromatic> scheme;

  static DressingConfig monochromatic(double omega, double detuning,
                                      double phase = 0.0);
  static DressingConfig bichromatic(double omega, double phase1 = 0.0,
                                    double phase2 = 0.0);
  static DressingConfig bichromatic_unequal(double omega1, double omega2,
                                            double phase1, double phase2);

  bool is_bichromatic() const { return std::holds_alternative<Bichromatic>(scheme); }
  double delta() const;   // 0 for bichromatic
  double omega1() const;
  double omega2() const;
  double phase1() const;
  double phase2() const;
};

enum class DressedLabel { plus, minus, zero, tilde_plus, tilde_minus, tilde_zero };

std::string to_string(DressedLabel label);

// Eigenbasis of the rotating-frame V-system, over {|-1>, |0>, |1>}.
struct DressedBasis {
  std::array<DressedLabel, 3> labels;
  Eigen::Matrix3cd vectors;   // columns, basis order {|-1>, |0>, |1>}
  Eigen::Vector3d values;     // rad/s

  int index_of(DressedLabel label) const;
  Eigen::Vector3cd vector_of(DressedLabel label) const;
  double value_of(DressedLabel label) const;
  // Smallest gap between the target eigenvalue and any other one.
  double gap_of(DressedLabel label) const;
};

// (hbar/2) [[-2D, W1 e^{i p1}, 0], [W1 e^{-i p1}, 0, W2 e^{i p2}],
//           [0, W2 e^{-i p2}, -2D]] in basis {|-1>, |0>, |1>}, in rad/s.
Eigen::Matrix3cd rotating_frame_hamiltonian(const DressingConfig& config);

DressedBasis dressed_basis(const DressingConfig& config);

// Closed forms for the equal-amplitude bichromatic case.
Eigen::Vector3cd analytic_tilde_state(DressedLabel label, double phase1,
                                      double phase2);

struct RamanEffective {
  double omega_e;          // Omega^2 / (2 Delta)
  double stark_shift_zero; // equal-magnitude shift of |0>
};

RamanEffective effective_raman_rabi(double omega, double delta);

// Raman detuning implied by the quadratic Zeeman shift:
// Delta = -(omega_1 + omega_-1)/2.
double raman_detuning(const ZeemanParams& params);

enum class HierarchyStatus { pass, warn, fail };

struct HierarchyReport {
  double ratio_omega_e_to_omega = 0.0;  // monochromatic only
  double ratio_omega_to_bound = 0.0;    // Omega/Delta or Omega/|w1+w-1|
  HierarchyStatus status = HierarchyStatus::pass;
};

// Omega_e << Omega << Delta for the monochromatic scheme; for the
// bichromatic scheme only Omega << |omega_1 + omega_-1| is checked.
// WARN above 0.3, FAIL above 1.0 on any ratio.
HierarchyReport hierarchy_check(const DressingConfig& config,
                                const ZeemanParams& params);

}  // namespace cdd
