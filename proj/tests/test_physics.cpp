#include "doctest.h"

#include <random>

#include "cdd/physics.hpp"

using namespace cdd;

TEST_SUITE("physics") {

TEST_CASE("calibrated transition frequencies match the measured splittings") {
  const ZeemanParams p = ZeemanParams::calibrated();
  // omega_{m,m+1} = 2pi x [6465 - 11 m] kHz at 7.7 G.
  CHECK(p.transition_frequency(0) == doctest::Approx(kTwoPi * 6465e3).epsilon(1e-12));
  CHECK(p.transition_frequency(-1) == doctest::Approx(kTwoPi * 6476e3).epsilon(1e-12));
  CHECK(p.transition_frequency(-1) - p.transition_frequency(0) ==
        doctest::Approx(kTwoPi * 11e3).epsilon(1e-12));
  CHECK(zeeman_transition_frequency(0, p) == p.transition_frequency(0));
}

TEST_CASE("level energies relative to |0>") {
  const ZeemanParams p = ZeemanParams::calibrated();
  CHECK(p.level_energy(0) == 0.0);
  // E(1) = omega_{0,1}, E(-1) = -omega_{-1,0}; independent arithmetic.
  CHECK(p.level_energy(1) == doctest::Approx(kTwoPi * 6465e3).epsilon(1e-12));
  CHECK(p.level_energy(-1) == doctest::Approx(-kTwoPi * 6476e3).epsilon(1e-12));
  // Sum probes the quadratic asymmetry.
  CHECK(p.level_energy(1) + p.level_energy(-1) ==
        doctest::Approx(-kTwoPi * 11e3).epsilon(1e-9));
}

TEST_CASE("level scheme indexing") {
  const LevelScheme full = LevelScheme::full();
  const LevelScheme quart = LevelScheme::ququart();
  CHECK(full.dim() == 6);
  CHECK(quart.dim() == 4);
  CHECK(full.ground_index() == 0);
  CHECK(full.index_of_d(-2) == 1);
  CHECK(full.index_of_d(2) == 5);
  CHECK(quart.has_d_level(0));
  CHECK(!quart.has_d_level(2));
  CHECK_THROWS_AS((void)quart.index_of_d(2), std::exception);
}

TEST_CASE("bare Hamiltonian is diagonal with Zeeman energies") {
  const ZeemanParams p = ZeemanParams::calibrated();
  const LevelScheme scheme = LevelScheme::full();
  const HermitianOperator h = bare_hamiltonian(scheme, p);
  CHECK(h.rows() == 6);
  CHECK(h(0, 0) == Complex(0.0, 0.0));
  CHECK(h(scheme.index_of_d(1), scheme.index_of_d(1)).real() ==
        doctest::Approx(kTwoPi * 6465e3).epsilon(1e-12));
  CHECK(h(scheme.index_of_d(-1), scheme.index_of_d(-1)).real() ==
        doctest::Approx(-kTwoPi * 6476e3).epsilon(1e-12));
  CHECK((h - h.adjoint()).norm() == 0.0);
}

TEST_CASE("Zeeman noise Hamiltonian: 1 mG shifts |1> by -2pi x 0.8396 kHz") {
  const ZeemanParams p = ZeemanParams::calibrated();
  const LevelScheme scheme = LevelScheme::full();
  const HermitianOperator h = zeeman_noise_hamiltonian(1e-3, scheme, p);
  // Oracle: linear_sensitivity = 2pi x 6465 kHz / 7.7 G.
  const double expected = -(kTwoPi * 6465e3 / 7.7) * 1e-3;
  CHECK(h(scheme.index_of_d(1), scheme.index_of_d(1)).real() ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(h(scheme.index_of_d(1), scheme.index_of_d(1)).real() ==
        doctest::Approx(-kTwoPi * 839.6).epsilon(1e-3));
  CHECK(h(scheme.index_of_d(-1), scheme.index_of_d(-1)).real() ==
        doctest::Approx(-expected).epsilon(1e-12));
  CHECK(h(0, 0) == Complex(0.0, 0.0));
  CHECK(h(scheme.index_of_d(0), scheme.index_of_d(0)) == Complex(0.0, 0.0));
}

TEST_CASE("drive Hamiltonian single tone at t=0") {
  const ZeemanParams p = ZeemanParams::calibrated();
  const LevelScheme scheme = LevelScheme::full();
  DriveField field;
  field.kind = DriveKind::optical_addressing;
  field.tones.push_back(Tone{LevelLabel::g, LevelLabel::m_zero, 0.0, kTwoPi * 1e3, 0.0});
  const HermitianOperator h = drive_hamiltonian(field, 0.0, scheme, p);
  CHECK(h(scheme.index_of_d(0), 0).real() == doctest::Approx(kTwoPi * 500.0));
  CHECK(h(scheme.index_of_d(0), 0).imag() == doctest::Approx(0.0));
  CHECK(is_hermitian(h));
}

TEST_CASE("drive Hamiltonian is Hermitian at random times (property)") {
  const ZeemanParams p = ZeemanParams::calibrated();
  const LevelScheme scheme = LevelScheme::full();
  DriveField field;
  field.kind = DriveKind::optical_addressing;
  field.tones.push_back(Tone{LevelLabel::g, LevelLabel::m_minus1, kTwoPi * 120.0,
                             kTwoPi * 2.1e3, 0.4});
  field.tones.push_back(Tone{LevelLabel::g, LevelLabel::m_plus1, -kTwoPi * 55.0,
                             kTwoPi * 0.9e3, 2.8});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> t(0.0, 1e-3);
  for (int i = 0; i < 50; ++i) {
    CHECK(is_hermitian(drive_hamiltonian(field, t(rng), scheme, p)));
  }
}

TEST_CASE("field validation rejects wrong manifolds") {
  const LevelScheme scheme = LevelScheme::full();
  DriveField optical;
  optical.kind = DriveKind::optical_addressing;
  optical.tones.push_back(
      Tone{LevelLabel::m_minus1, LevelLabel::m_zero, 0.0, 1.0, 0.0});
  CHECK_THROWS_AS(optical.validate(scheme), std::exception);

  DriveField rf;
  rf.kind = DriveKind::rf_dressing;
  rf.tones.push_back(Tone{LevelLabel::g, LevelLabel::m_zero, 0.0, 1.0, 0.0});
  CHECK_THROWS_AS(rf.validate(scheme), std::exception);

  DriveField ok_rf;
  ok_rf.kind = DriveKind::rf_dressing;
  ok_rf.tones.push_back(
      Tone{LevelLabel::m_minus1, LevelLabel::m_zero, 0.0, 1.0, 0.0});
  CHECK_NOTHROW(ok_rf.validate(scheme));
}

}  // TEST_SUITE
