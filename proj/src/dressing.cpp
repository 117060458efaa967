#include "cdd/dressing.hpp"

#include <algorithm>
#include <cmath>

namespace cdd {

DressingConfig DressingConfig::monochromatic(double omega, double detuning,
                                             double phase) {
  if (omega <= 0) throw std::invalid_argument("monochromatic dressing requires omega > 0");
  if (std::abs(omega) >= std::abs(detuning)) {
    throw std::invalid_argument("monochromatic dressing requires |omega| < |detuning|");
  }
  return DressingConfig{Monochromatic{omega, detuning, phase}};
}

DressingConfig DressingConfig::bichromatic(double omega, double phase1,
                                           double phase2) {
  if (omega < 0) throw std::invalid_argument("dressing omega must be >= 0");
  return DressingConfig{Bichromatic{omega, omega, phase1, phase2}};
}

DressingConfig DressingConfig::bichromatic_unequal(double omega1, double omega2,
                                                   double phase1, double phase2) {
  if (omega1 < 0 || omega2 < 0) throw std::invalid_argument("dressing omega must be >= 0");
  return DressingConfig{Bichromatic{omega1, omega2, phase1, phase2}};
}

double DressingConfig::delta() const {
  if (auto* m = std::get_if<Monochromatic>(&scheme)) return m->detuning;
  return 0.0;
}

double DressingConfig::omega1() const {
  if (auto* m = std::get_if<Monochromatic>(&scheme)) return m->omega;
  return std::get<Bichromatic>(scheme).omega1;
}

double DressingConfig::omega2() const {
  if (auto* m = std::get_if<Monochromatic>(&scheme)) return m->omega;
  return std::get<Bichromatic>(scheme).omega2;
}

double DressingConfig::phase1() const {
  if (auto* m = std::get_if<Monochromatic>(&scheme)) return m->phase;
  return std::get<Bichromatic>(scheme).phase1;
}

double DressingConfig::phase2() const {
  if (auto* m = std::get_if<Monochromatic>(&scheme)) return m->phase;
  return std::get<Bichromatic>(scheme).phase2;
}

std::string to_string(DressedLabel label) {
  switch (label) {
    case DressedLabel::plus: return "+";
    case DressedLabel::minus: return "-";
    case DressedLabel::zero: return "0";
    case DressedLabel::tilde_plus: return "~+";
    case DressedLabel::tilde_minus: return "~-";
    case DressedLabel::tilde_zero: return "~0";
  }
  return "?";
}

int DressedBasis::index_of(DressedLabel label) const {
  for (int i = 0; i < 3; ++i) {
    if (labels[i] == label) return i;
  }
  throw std::invalid_argument("dressed label " + to_string(label) + " not in basis");
}

Eigen::Vector3cd DressedBasis::vector_of(DressedLabel label) const {
  return vectors.col(index_of(label));
}

double DressedBasis::value_of(DressedLabel label) const {
  return values(index_of(label));
}

double DressedBasis::gap_of(DressedLabel label) const {
  const int k = index_of(label);
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (i != k) gap = std::min(gap, std::abs(values(i) - values(k)));
  }
  return gap;
}

Eigen::Matrix3cd rotating_frame_hamiltonian(const DressingConfig& config) {
  const double d = config.delta();
  const Complex c1 = 0.5 * config.omega1() *
                     std::exp(Complex(0.0, config.phase1()));
  const Complex c2 = 0.5 * config.omega2() *
                     std::exp(Complex(0.0, config.phase2()));
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 0) = -d;
  h(2, 2) = -d;
  h(0, 1) = c1;
  h(1, 0) = std::conj(c1);
  h(1, 2) = c2;
  h(2, 1) = std::conj(c2);
  return h;
}

namespace {

// Global phase convention: largest-magnitude component real-positive.
void fix_phase(Eigen::Vector3cd& v) {
  int imax = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
  }
  if (std::abs(v(imax)) > 0) v *= std::abs(v(imax)) / v(imax);
}

}  // namespace

Eigen::Vector3cd analytic_tilde_state(DressedLabel label, double phase1,
                                      double phase2) {
  const Complex e1 = std::exp(Complex(0.0, phase1));
  const Complex e2 = std::exp(Complex(0.0, -phase2));
  Eigen::Vector3cd v;
  switch (label) {
    case DressedLabel::tilde_plus:
      v << 0.5 * e1, 0.5 * std::sqrt(2.0), 0.5 * e2;
      break;
    case DressedLabel::tilde_minus:
      v << 0.5 * e1, -0.5 * std::sqrt(2.0), 0.5 * e2;
      break;
    case DressedLabel::tilde_zero:
      v << -e1 / std::sqrt(2.0), 0.0, e2 / std::sqrt(2.0);
      break;
    default:
      throw std::invalid_argument("analytic forms exist only for tilde states");
  }
  fix_phase(v);
  return v;
}

DressedBasis dressed_basis(const DressingConfig& config) {
  const Eigen::Matrix3cd h = rotating_frame_hamiltonian(config);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dressed-basis eigensolver failed");
  }

  // Ascending eigenvalues; degenerate ties broken by overlap with |0>.
  std::array<int, 3> order = {0, 1, 2};
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(evals(a) - evals(b)) > 1e-12 * (std::abs(evals(a)) + 1.0)) {
      return evals(a) < evals(b);
    }
    return std::abs(evecs(1, a)) < std::abs(evecs(1, b));
  });

  DressedBasis basis;
  for (int i = 0; i < 3; ++i) {
    basis.values(i) = evals(order[i]);
    Eigen::Vector3cd v = evecs.col(order[i]);
    fix_phase(v);
    basis.vectors.col(i) = v;
  }

  if (config.is_bichromatic()) {
    // {~-, ~0, ~+} in ascending eigenvalue order.
    basis.labels = {DressedLabel::tilde_minus, DressedLabel::tilde_zero,
                    DressedLabel::tilde_plus};
  } else {
    // |+> / |-> assigned by overlap with (e^{i p1}|-1> +- e^{-i p2}|1>)/sqrt(2),
    // not by eigenvalue order; the remaining column is the |0>-like state.
    const Complex e1 = std::exp(Complex(0.0, config.phase1()));
    const Complex e2 = std::exp(Complex(0.0, -config.phase2()));
    Eigen::Vector3cd plus_ref, minus_ref;
    plus_ref << e1 / std::sqrt(2.0), 0.0, e2 / std::sqrt(2.0);
    minus_ref << e1 / std::sqrt(2.0), 0.0, -e2 / std::sqrt(2.0);

    int plus_col = 0, zero_col = 0;
    double best_plus = -1.0, best_zero = -1.0;
    for (int i = 0; i < 3; ++i) {
      const double op = std::abs(plus_ref.dot(basis.vectors.col(i)));
      const double oz = std::abs(basis.vectors(1, i));
      if (op > best_plus) { best_plus = op; plus_col = i; }
      if (oz > best_zero) { best_zero = oz; zero_col = i; }
    }
    for (int i = 0; i < 3; ++i) {
      if (i == zero_col) basis.labels[i] = DressedLabel::zero;
      else if (i == plus_col) basis.labels[i] = DressedLabel::plus;
      else basis.labels[i] = DressedLabel::minus;
    }
  }
  return basis;
}

RamanEffective effective_raman_rabi(double omega, double delta) {
  if (delta == 0.0) {
    throw std::invalid_argument(
        "effective Raman Rabi undefined at delta = 0 (use the bichromatic scheme)");
  }
  const double oe = omega * omega / (2.0 * delta);
  return RamanEffective{oe, oe};
}

double raman_detuning(const ZeemanParams& params) {
  return -(params.level_energy(1) + params.level_energy(-1)) / 2.0;
}

HierarchyReport hierarchy_check(const DressingConfig& config,
                                const ZeemanParams& params) {
  HierarchyReport report;
  auto status_of = [](double r) {
    if (r > 1.0) return HierarchyStatus::fail;
    if (r > 0.3) return HierarchyStatus::warn;
    return HierarchyStatus::pass;
  };
  if (config.is_bichromatic()) {
    const double bound =
        std::abs(params.level_energy(1) + params.level_energy(-1));
    const double omega = std::max(config.omega1(), config.omega2());
    report.ratio_omega_to_bound = omega / bound;
    report.status = status_of(report.ratio_omega_to_bound);
  } else {
    const double omega = config.omega1();
    const double delta = config.delta();
    report.ratio_omega_to_bound = std::abs(omega / delta);
    report.ratio_omega_e_to_omega =
        std::abs(effective_raman_rabi(omega, delta).omega_e / omega);
    report.status = std::max(status_of(report.ratio_omega_to_bound),
                             status_of(report.ratio_omega_e_to_omega));
  }
  return report;
}

}  // namespace cdd
