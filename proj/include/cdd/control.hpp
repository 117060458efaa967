#pragma once

#include "cdd/dressing.hpp"
#include "cdd/dynamics.hpp"

namespace cdd {

enum class GateTarget {
  g_plus,
  g_minus,
  g_tilde_plus,
  g_tilde_minus,
  g_tilde_zero,
  g_bare,
};

std::string to_string(GateTarget target);
GateTarget gate_target_from_string(const std::string& name);

struct GateRequest {
  GateTarget target = GateTarget::g_bare;
  int bare_m = 0;           // used by g_bare only
  double angle = std::numbers::pi;
  double axis_phase = 0.0;  // phi_S
};

struct CompiledPulse {
  DriveField field;         // optical tones
  double duration = 0.0;    // s
  double effective_rabi = 0.0;
  GateRequest request;
};

// Builds the multichromatic addressing field for one dressed (or bare)
// target.  Tone amplitudes and phases follow the target eigenvector
// (Omega_j = Omega_S |c_j|, phi_j = phi_S - arg c_j); tone detunings are
// set by resonance with the target's dressed eigenvalue, which also
// carries the |0> Stark shift in the monochromatic scheme.
CompiledPulse compile_single_qudit(const GateRequest& req,
                                   const std::optional<DressingConfig>& config,
                                   double omega_s, const ZeemanParams& params);

struct MsToneSpec {
  DriveField field;     // relative amplitudes
  std::string note;
};

// Tone table for the Molmer-Sorensen entangling field.  Bichromatic
// dressing: four tones around the red/blue secular sidebands of
// g -> |-1| and g -> |1>.  Monochromatic dressing: the standard two-tone
// field on g -> |0> (Stark corrected), with a note.
MsToneSpec compile_ms_tones(const DressingConfig& config, double secular_frequency,
                            double gate_detuning, const ZeemanParams& params);

struct CrosstalkReport {
  std::array<DressedLabel, 3> labels{};
  std::array<double, 3> peak_population{};  // peak over the pulse
  double target_final_population = 0.0;
  double target_peak_population = 0.0;
};

// Simulates the pulse noiselessly (rotating frame) from |g> and reports
// the peak population reached in each non-target dressed state.
CrosstalkReport crosstalk_audit(const CompiledPulse& pulse,
                                const std::optional<DressingConfig>& config,
                                const LevelScheme& scheme, const ZeemanParams& params);

struct PulseOptimizationResult {
  CompiledPulse pulse;
  double objective = 0.0;  // residual leakage + angle error
  int evaluations = 0;
};

// Spectroscopic re-optimization loop: derivative-free (Nelder-Mead)
// search over tone phases and amplitudes minimizing non-target
// excitation while preserving the target rotation angle.
PulseOptimizationResult optimize_pulse(const CompiledPulse& seed_pulse,
                                       const std::optional<DressingConfig>& config,
                                       const LevelScheme& scheme,
                                       const ZeemanParams& params,
                                       int max_evaluations = 400);

}  // namespace cdd
