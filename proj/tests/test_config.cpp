#include "doctest.h"

#include <sstream>

#include "cdd/config.hpp"

using namespace cdd;

TEST_SUITE("config") {

TEST_CASE("minimal config gets calibrated defaults") {
  const RunConfig cfg = parse_run_config("{}");
  CHECK(cfg.scheme.dim() == 6);
  CHECK(cfg.zeeman.transition_frequency(0) ==
        doctest::Approx(kTwoPi * 6465e3).epsilon(1e-12));
  CHECK(!cfg.dressing);
  CHECK(cfg.seed == 0);
}

TEST_CASE("frequencies are ingested in Hz and converted to rad/s") {
  const RunConfig cfg = parse_run_config(R"({
    "dressing": { "type": "bichromatic", "omega_hz": 3300 },
    "noise": { "laser_freq": { "sigma_hz": 89, "correlation_time_s": 2e-4 } }
  })");
  REQUIRE(cfg.dressing);
  CHECK(cfg.dressing->omega1() == doctest::Approx(kTwoPi * 3300.0).epsilon(1e-12));
  CHECK(cfg.noise.laser_freq.sigma == doctest::Approx(kTwoPi * 89.0).epsilon(1e-12));
}

TEST_CASE("monochromatic detuning defaults to the quadratic-shift value") {
  const RunConfig cfg = parse_run_config(R"({
    "dressing": { "type": "monochromatic", "omega_hz": 4062 }
  })");
  REQUIRE(cfg.dressing);
  CHECK(cfg.dressing->delta() == doctest::Approx(kTwoPi * 5.5e3).epsilon(1e-9));
}

TEST_CASE("unknown keys are rejected at any level") {
  CHECK_THROWS_AS((void)parse_run_config(R"({"sceme": "full"})"), ConfigError);
  CHECK_THROWS_AS(
      (void)parse_run_config(R"({"zeeman": {"bias_gauss": 7.7}})"), ConfigError);
  CHECK_THROWS_AS(
      (void)parse_run_config(
          R"({"noise": {"broadband": {"sigma": 1e-4, "correlation_time_s": 1e-3}}})"),
      ConfigError);
}

TEST_CASE("malformed JSON raises ConfigError") {
  CHECK_THROWS_AS((void)parse_run_config("{"), ConfigError);
  CHECK_THROWS_AS((void)parse_run_config("not json"), ConfigError);
}

TEST_CASE("grids expand from start/stop/points") {
  const RunConfig cfg = parse_run_config(R"({
    "spectroscopy": {
      "detuning_grid_hz": { "start": -100, "stop": 100, "points": 5 },
      "probe_omega_s_hz": 10
    }
  })");
  REQUIRE(cfg.spectroscopy.detuning_grid.size() == 5);
  CHECK(cfg.spectroscopy.detuning_grid.front() ==
        doctest::Approx(-kTwoPi * 100.0).epsilon(1e-12));
  CHECK(cfg.spectroscopy.detuning_grid[2] == doctest::Approx(0.0));
  CHECK(cfg.spectroscopy.detuning_grid.back() ==
        doctest::Approx(kTwoPi * 100.0).epsilon(1e-12));
}

TEST_CASE("mains entries accept a random phase marker") {
  const RunConfig cfg = parse_run_config(R"({
    "noise": { "mains": [
      { "harmonic": 1, "amplitude_gauss": 1e-4, "phase_rad": 0.4 },
      { "harmonic": 3, "amplitude_gauss": 2e-5, "phase_rad": "random" }
    ] }
  })");
  REQUIRE(cfg.noise.mains.size() == 2);
  CHECK(!cfg.noise.mains[0].random_phase);
  CHECK(cfg.noise.mains[0].phase == doctest::Approx(0.4));
  CHECK(cfg.noise.mains[1].random_phase);
}

TEST_CASE("FNV-1a 64 known vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("CSV writer quotes per RFC 4180 and stamps the hash") {
  std::ostringstream out;
  CsvWriter csv(out);
  csv.header({"a", "b"}, 0xabcdULL);
  csv.row({"plain", "with,comma"});
  csv.row({CsvWriter::field(0.5), "quote\"inside"});
  const std::string text = out.str();
  CHECK(text ==
        "a,b,config_hash=000000000000abcd\r\n"
        "plain,\"with,comma\"\r\n"
        "0.5,\"quote\"\"inside\"\r\n");
  CHECK(CsvWriter::field(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("gate and ramsey sections parse targets") {
  const RunConfig cfg = parse_run_config(R"({
    "gate": { "target": "g_tilde_plus", "angle_rad": 1.5707963267948966,
              "omega_s_hz": 660 },
    "ramsey": { "target": "g_bare", "bare_m": 1, "delays_s": [0.001, 0.002],
                "shots": 10, "pulse_omega_s_hz": 1000 }
  })");
  CHECK(cfg.gate.target == GateTarget::g_tilde_plus);
  CHECK(cfg.gate_omega_s == doctest::Approx(kTwoPi * 660.0));
  CHECK(cfg.ramsey.target.target == GateTarget::g_bare);
  CHECK(cfg.ramsey.target.bare_m == 1);
  CHECK(cfg.ramsey.delays.size() == 2);
  CHECK_THROWS_AS((void)parse_run_config(R"({"gate": {"target": "nope"}})"),
                  std::exception);
}

}  // TEST_SUITE
