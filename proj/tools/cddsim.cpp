// Command-line front end: configuration-driven dressed-state tables,
// pulse compilation, virtual spectroscopy/Ramsey experiments and noise
// trace previews, all reproducible from one config file and seed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cdd/config.hpp"

namespace {

using namespace cdd;

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

int effective_workers(const RunConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  std::cerr << "writing " << path.string() << "\n";
  return out;
}

int cmd_eigen(const RunConfig& cfg) {
  if (!cfg.dressing) {
    std::printf("no dressing configured; bare level energies relative to |0>\n");
    std::printf("%-8s %16s\n", "level", "energy_hz");
    std::printf("%-8s %16.6f\n", "g", 0.0);
    for (int m = -1; m <= 1; ++m) {
      std::printf("|%+d>     %16.6f\n", m, rad_to_hz(cfg.zeeman.level_energy(m)));
    }
    return 0;
  }
  const DressedBasis basis = dressed_basis(*cfg.dressing);
  std::printf("%-8s %16s %34s\n", "state", "eigenvalue_hz",
              "components (|-1>, |0>, |+1>)");
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3cd v = basis.vectors.col(k);
    std::printf("%-8s %16.6f ", to_string(basis.labels[k]).c_str(),
                rad_to_hz(basis.values(k)));
    for (int j = 0; j < 3; ++j) {
      std::printf(" %+.4f%+.4fi", v(j).real(), v(j).imag());
    }
    std::printf("\n");
  }
  const HierarchyReport report = hierarchy_check(*cfg.dressing, cfg.zeeman);
  if (report.status != HierarchyStatus::pass) {
    std::printf("hierarchy check: %s (Omega/bound = %.3f)\n",
                report.status == HierarchyStatus::warn ? "WARN" : "FAIL",
                report.ratio_omega_to_bound);
  }
  return 0;
}

int cmd_compile(const RunConfig& cfg) {
  if (cfg.gate_omega_s <= 0.0) {
    throw ConfigError("gate.omega_s_hz must be set for compile");
  }
  const CompiledPulse pulse =
      compile_single_qudit(cfg.gate, cfg.dressing, cfg.gate_omega_s, cfg.zeeman);
  auto out = open_output(cfg, "compile.csv");
  CsvWriter csv(out);
  csv.header({"coupling", "frequency_offset_hz", "relative_amplitude",
              "phase_rad", "duration_s"},
             cfg.hash);
  for (const Tone& tone : pulse.field.tones) {
    csv.row({to_string(tone.lower) + "->" + to_string(tone.upper),
             CsvWriter::field(rad_to_hz(tone.detuning)),
             CsvWriter::field(tone.rabi / pulse.effective_rabi),
             CsvWriter::field(tone.phase), CsvWriter::field(pulse.duration)});
  }
  return 0;
}

int cmd_spectroscopy(const RunConfig& cfg) {
  if (!cfg.dressing) throw ConfigError("spectroscopy requires a dressing section");
  const SpectroscopyResult result =
      run_spectroscopy(cfg.spectroscopy, *cfg.dressing, cfg.noise, cfg.scheme,
                       cfg.zeeman, cfg.seed, effective_workers(cfg));
  auto out = open_output(cfg, "spectroscopy.csv");
  CsvWriter csv(out);
  csv.header({"target", "detuning_hz", "p_ground",
              "p_" + to_string(result.dressed_labels[0]),
              "p_" + to_string(result.dressed_labels[1]),
              "p_" + to_string(result.dressed_labels[2]), "p_leakage"},
             cfg.hash);
  for (const auto& [target, rows] : result.scans) {
    for (const SpectroscopyRow& r : rows) {
      csv.row({to_string(target), CsvWriter::field(rad_to_hz(r.detuning)),
               CsvWriter::field(r.ground), CsvWriter::field(r.dressed[0]),
               CsvWriter::field(r.dressed[1]), CsvWriter::field(r.dressed[2]),
               CsvWriter::field(r.leakage)});
    }
  }
  return 0;
}

int cmd_ramsey(const RunConfig& cfg) {
  const RamseyResult result =
      run_ramsey(cfg.ramsey, cfg.dressing, cfg.noise, cfg.scheme, cfg.zeeman,
                 cfg.seed, effective_workers(cfg));
  {
    auto out = open_output(cfg, "ramsey.csv");
    CsvWriter csv(out);
    csv.header({"delay_s", "contrast", "mean_excitation", "fit_overlay", "valid"},
               cfg.hash);
    for (const FringePoint& p : result.curve.points) {
      const double overlay =
          result.fit.decaying
              ? result.fit.amplitude * std::exp(-p.delay / result.fit.tau)
              : result.fit.amplitude;
      csv.row({CsvWriter::field(p.delay), CsvWriter::field(p.contrast),
               CsvWriter::field(p.mean_excitation), CsvWriter::field(overlay),
               p.valid ? "1" : "0"});
    }
  }
  {
    auto out = open_output(cfg, "ramsey_fit.csv");
    CsvWriter csv(out);
    csv.header({"state", "a", "tau_s", "residual_norm"}, cfg.hash);
    csv.row({to_string(cfg.ramsey.target.target),
             CsvWriter::field(result.fit.amplitude),
             result.fit.decaying ? CsvWriter::field(result.fit.tau)
                                 : std::string("inf"),
             CsvWriter::field(result.fit.residual_norm)});
  }
  return 0;
}

int cmd_noise_preview(const RunConfig& cfg) {
  const NoiseTrace trace =
      sample_trace(cfg.noise, cfg.preview_duration, cfg.preview_dt, cfg.seed);
  auto out = open_output(cfg, "noise_preview.csv");
  CsvWriter csv(out);
  csv.header({"t_s", "delta_b_gauss", "drive_amp_factor", "laser_detuning_hz"},
             cfg.hash);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    csv.row({CsvWriter::field(k * trace.dt),
             CsvWriter::field(trace.delta_b[k]),
             CsvWriter::field(trace.drive_amp_factor[k]),
             CsvWriter::field(rad_to_hz(trace.laser_detuning[k]))});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous dynamical decoupling simulator and pulse compiler"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "run configuration file (JSON)")
      ->required();
  std::optional<uint64_t> seed;
  app.add_option("--seed", seed, "override the config seed");
  std::optional<int> shots;
  app.add_option("--shots", shots, "override shots per point");
  std::optional<int> workers;
  app.add_option("--workers", workers, "worker threads (0 = available cores)");
  std::optional<std::string> out_dir;
  app.add_option("--out", out_dir, "output directory for CSV files");

  auto* sub_eigen = app.add_subcommand("eigen", "print the dressed basis table");
  auto* sub_compile = app.add_subcommand("compile", "emit a tone-table CSV");
  auto* sub_spectroscopy =
      app.add_subcommand("spectroscopy", "dressed-state spectroscopy scan");
  auto* sub_ramsey = app.add_subcommand("ramsey", "Ramsey contrast decay");
  auto* sub_noise = app.add_subcommand("noise-preview", "emit one noise trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    RunConfig cfg = load_run_config(config_path);
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (out_dir) cfg.out_dir = *out_dir;
    if (shots) {
      cfg.spectroscopy.shots = *shots;
      cfg.ramsey.shots = *shots;
    }

    if (*sub_eigen) return cmd_eigen(cfg);
    if (*sub_compile) return cmd_compile(cfg);
    if (*sub_spectroscopy) return cmd_spectroscopy(cfg);
    if (*sub_ramsey) return cmd_ramsey(cfg);
    if (*sub_noise) return cmd_noise_preview(cfg);
    return kExitConfigError;
  } catch (const cdd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalError;
  }
}
