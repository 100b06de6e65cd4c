#pragma once

#include <string>
#include <variant>
#include <vector>

#include "piezoharvest/waveform.hpp"

namespace piezoharvest::power_stage {

/// Fixed current into storage while below the cutoff.
struct ConstantCurrent {
    double i_cc = 0.0;  // A
};

/// Fixed input power, delivered as efficiency * p_in / max(v_cap, v_floor).
struct ConstantPower {
    double p_in = 0.0;  // W
    double efficiency = 1.0;
    double v_floor = 0.3;  // V
};

using ChargingModel = std::variant<ConstantCurrent, ConstantPower>;

/// Rectifier / regulator board: diode bridge with an input shunt clamp and a
/// regulated output band.
struct PowerStageParams {
    double v_shunt_clamp = 20.0;
    double v_out_setpoint = 1.8;
    double v_out_lo = 1.71;
    double v_out_hi = 1.89;
    double diode_drop = 0.3;  // per bridge leg
    ChargingModel charging = ConstantCurrent{};
    /// Open-circuit input Vpp at which `charging` was characterised. When
    /// positive, harvest_scale() scales the law by rectified input power.
    double nominal_input_vpp = 0.0;

    std::vector<std::string> violations() const;
    void validate() const;
};

/// Per-sample full-bridge rectification: max(|v| - 2 drop, 0), then clamped
/// to the shunt threshold.
double rectify_sample(double v, double diode_drop, double v_shunt_clamp) noexcept;
Waveform rectify(const Waveform& w, double diode_drop, double v_shunt_clamp);

/// Regulated output current into a resistor (Ohm's law).
double stable_output_current(double v_out, double r_load);
/// v_out^2 / r_load.
double output_power(double v_out, double r_load);

/// Current the regulator pushes into storage at `v_cap`. Zero at or above
/// `cutoff`. Non-increasing in v_cap.
double charging_current(double v_cap, const ChargingModel& model, double cutoff);
/// Same, with the cutoff at the upper edge of the output band.
double charging_current(double v_cap, const PowerStageParams& params);

/// Multiplier on the charging law for a given open-circuit input Vpp:
/// 0 when the rectified peak cannot reach the setpoint; otherwise the ratio
/// of rectified peak power to the nominal operating point (1 if no nominal).
double harvest_scale(const PowerStageParams& params, double input_vpp) noexcept;

std::string describe(const ChargingModel& model);

}  // namespace piezoharvest::power_stage
