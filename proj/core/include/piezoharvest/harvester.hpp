#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "piezoharvest/kinematics.hpp"
#include "piezoharvest/vibration_profile.hpp"
#include "piezoharvest/waveform.hpp"

namespace piezoharvest::harvester {

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

/// Lumped single-mode model of a base-excited piezoelectric cantilever.
/// Voltage is taken proportional to the relative tip displacement, then
/// softly saturated: v = v_sat * tanh(gain * z / v_sat).
struct HarvesterParams {
    double f_unloaded_hz = 178.0;     // bare-beam resonance
    double m_eff_kg = 0.0;            // effective modal mass of the bare beam
    double m_tip_kg = 0.0;
    double zeta = 0.05;
    double gain_v_per_m = 0.0;        // open-circuit V per m of relative tip motion
    double v_sat = kUnlimited;        // V; +inf disables saturation
    double c_piezo_f = 190e-9;
    double v_rating = 120.0;          // V, absolute

    std::vector<std::string> violations() const;
    /// Throws ValidationError listing every violation.
    void validate() const;
};

/// Bare-beam modal mass that puts the loaded resonance at `target` for the
/// given tip mass.
double effective_mass_for_resonance(double f_unloaded_hz, double m_tip_kg, double target_hz);

/// PPA-2011-class harvester: 178 Hz bare, 190 nF, +-120 V, 17 g tip mass tuned
/// to 23.5 Hz, gain and saturation fitted to the scope-measured open-circuit
/// voltages of the two reference drive levels.
HarvesterParams ppa2011_tuned();

/// f_unloaded * sqrt(m_eff / (m_eff + m_tip)).
kinematics::Frequency loaded_resonance(const HarvesterParams& p);

/// Steady-state relative tip displacement (amplitude) under base excitation:
/// |Z| = r^2 Y / sqrt((1 - r^2)^2 + (2 zeta r)^2), r = f / f_loaded.
kinematics::Displacement steady_state_tip_displacement(const HarvesterParams& p,
                                                       const VibrationProfile& base);

/// Instantaneous open-circuit voltage for a relative tip displacement,
/// saturated and clipped to +-v_rating.
double voltage_from_tip_displacement(const HarvesterParams& p, double z) noexcept;

struct OpenCircuitOutput {
    double vpp = 0.0;
    double amplitude_linear = 0.0;  // gain * |Z|, before saturation
    bool clipped = false;           // hit the absolute voltage rating
};

OpenCircuitOutput open_circuit_output(const HarvesterParams& p, const VibrationProfile& base);
double open_circuit_vpp(const HarvesterParams& p, const VibrationProfile& base);

// ---------------------------------------------------------------------------
// Time domain
// ---------------------------------------------------------------------------

/// Default step: 200 samples per drive period.
double default_step(const VibrationProfile& base) noexcept;

/// Time for the free transient to decay by e^-20: 20 / (zeta * omega_n).
double settling_time(const HarvesterParams& p);

/// Integrates z'' + 2 zeta wn z' + wn^2 z = -y_base'' from rest with classical
/// RK4. Returns the relative tip displacement in m. Throws ConfigError when
/// dt > 1 / (50 f_drive).
Waveform simulate_tip_motion(const HarvesterParams& p, const VibrationProfile& base,
                             double duration, double dt);

/// Tip motion mapped sample-by-sample through voltage_from_tip_displacement.
Waveform simulate_waveform(const HarvesterParams& p, const VibrationProfile& base,
                           double duration, double dt);

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

struct Observation {
    VibrationProfile base;
    double measured_vpp = 0.0;
};

struct CalibrationOptions {
    bool fit_v_sat = true;
    int max_iterations = 200;
    double step_tolerance = 1e-13;  // relative change in the fitted parameters
};

struct CalibrationResult {
    HarvesterParams params;
    std::vector<double> relative_residuals;  // (model - measured) / measured
    double max_relative_residual = 0.0;
    int iterations = 0;
};

/// Fits gain_v (and v_sat when requested) so open_circuit_vpp reproduces the
/// observations in the relative least-squares sense. Mechanical parameters
/// are taken from p0 unchanged. Deterministic.
CalibrationResult calibrate(const HarvesterParams& p0, std::span<const Observation> observations,
                            const CalibrationOptions& options = {});

}  // namespace piezoharvest::harvester
