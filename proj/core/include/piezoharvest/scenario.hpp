#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "piezoharvest/harvester.hpp"
#include "piezoharvest/power_stage.hpp"
#include "piezoharvest/storage.hpp"
#include "piezoharvest/vibration_profile.hpp"

namespace piezoharvest {

struct ResistorLoad {
    double ohms = 10e3;
};

struct SupercapacitorLoad {
    storage::SupercapState cap;
};

/// Periodic consumer drawing from the supercapacitor while it charges.
struct DutyCycledLoad {
    double active_current = 0.0;  // A
    double idle_current = 0.0;    // A
    double period = 1.0;          // s
    double duty = 0.0;            // fraction of the period spent active
    storage::SupercapState cap;

    /// Draw at time t. Steps longer than a period see the average draw.
    double current_at(double t, double dt) const noexcept;
};

using LoadSpec = std::variant<ResistorLoad, SupercapacitorLoad, DutyCycledLoad>;

struct SimSettings {
    double duration = 5.0 * 3600.0;  // s
    double dt = 1.0;                 // s
    double record_interval = 10.0;   // s
    double v_full = 1.9;             // V, flat level of the charge curve
};

struct Scenario {
    std::string name;
    VibrationProfile profile = VibrationProfile::at_rest(kinematics::Frequency(23.5));
    harvester::HarvesterParams harvester = harvester::ppa2011_tuned();
    power_stage::PowerStageParams power_stage;
    LoadSpec load = SupercapacitorLoad{};
    SimSettings sim;

    std::vector<std::string> violations() const;
    void validate() const;
};

// ---------------------------------------------------------------------------
// Built-in reference scenarios
// ---------------------------------------------------------------------------

enum class BuiltinId { A, B };

std::optional<BuiltinId> parse_builtin_id(std::string_view text) noexcept;
std::string_view to_string(BuiltinId id) noexcept;

/// Measured values that accompany a built-in scenario.
struct ScenarioReference {
    double drive_vpp = 0.0;              // signal-generator setting, V
    double measured_accel_pp_g = 0.0;    // IMU reading
    double target_piezo_vpp = 0.0;       // scope-measured open-circuit Vpp
    double stable_load_ohms = 0.0;       // potentiometer setting
    double stable_current_lo = 0.0;      // A
    double stable_current_hi = 0.0;      // A
    double full_charge_min = 0.0;        // "slightly more than"
    double half_capacity_min = 0.0;      // "approximately"
};

Scenario builtin_scenario(BuiltinId id);
ScenarioReference builtin_reference(BuiltinId id);

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

struct ChargeRow {
    double t = 0.0;      // s
    double v_cap = 0.0;  // V
    double i_out = 0.0;  // A
    double p_out = 0.0;  // W
};

struct ChargeSummary {
    std::optional<double> t_half_capacity;  // s, unset when not reached
    std::optional<double> t_full;           // s, time the charge cutoff is reached
    double final_v = 0.0;
    double avg_current = 0.0;   // mean regulator output current while charging, A
    double output_power = 0.0;  // regulated output power at avg_current, W
    double input_vpp = 0.0;     // harvester open-circuit Vpp driving the stage
    double harvest_scale = 0.0;
    bool input_clipped = false;
};

struct ChargeCurve {
    std::vector<ChargeRow> rows;
    ChargeSummary summary;
};

/// Profile -> harvester steady-state Vpp -> charging law -> storage.
/// Throws ValidationError listing every violated invariant.
ChargeCurve run(const Scenario& s);

struct CompareThresholds {
    double v_half = 0.95;
    double v_full = 1.89;
};

struct CurveComparison {
    double rmse_v = 0.0;
    std::optional<double> dt_half;  // curve crossing minus reference crossing, s
    std::optional<double> dt_full;
};

/// First time the curve reaches `level`, linearly interpolated between rows.
std::optional<double> crossing_time(const std::vector<ChargeRow>& rows, double level);

/// RMSE of v_cap over the overlapping span with the reference interpolated
/// onto the curve's timestamps, plus signed threshold-crossing differences.
CurveComparison compare(const ChargeCurve& curve, const ChargeCurve& reference,
                        const CompareThresholds& thresholds = {});

}  // namespace piezoharvest
