#include "piezoharvest/power_stage.hpp"

#include <algorithm>
#include <cmath>

#include "piezoharvest/errors.hpp"

namespace piezoharvest::power_stage {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_load(double r_load) {
    if (!(std::isfinite(r_load) && r_load > 0.0))
        throw DomainError("load resistance must be positive, got " + std::to_string(r_load));
}

}  // namespace

std::vector<std::string> PowerStageParams::violations() const {
    std::vector<std::string> out;
    if (!(std::isfinite(v_out_lo) && std::isfinite(v_out_hi) && v_out_lo <= v_out_setpoint &&
          v_out_setpoint <= v_out_hi))
        out.emplace_back("power_stage: output band must satisfy lo <= setpoint <= hi");
    if (!(v_out_setpoint > 0.0)) out.emplace_back("power_stage.v_out_setpoint must be positive");
    if (!(v_shunt_clamp > v_out_setpoint) || !std::isfinite(v_shunt_clamp))
        out.emplace_back("power_stage.v_shunt_clamp must exceed the output setpoint");
    if (!finite_nonneg(diode_drop)) out.emplace_back("power_stage.diode_drop must be non-negative");
    if (!finite_nonneg(nominal_input_vpp))
        out.emplace_back("power_stage.nominal_input_vpp must be non-negative");
    std::visit(overloaded{
                   [&](const ConstantCurrent& cc) {
                       if (!(std::isfinite(cc.i_cc) && cc.i_cc > 0.0))
                           out.emplace_back("power_stage.charging.i_cc must be positive");
                   },
                   [&](const ConstantPower& cp) {
                       if (!(std::isfinite(cp.p_in) && cp.p_in > 0.0))
                           out.emplace_back("power_stage.charging.p_in must be positive");
                       if (!(cp.efficiency > 0.0 && cp.efficiency <= 1.0))
                           out.emplace_back("power_stage.charging.efficiency must lie in (0, 1]");
                       if (!(std::isfinite(cp.v_floor) && cp.v_floor > 0.0))
                           out.emplace_back("power_stage.charging.v_floor must be positive");
                   },
               },
               charging);
    return out;
}

void PowerStageParams::validate() const {
    if (auto v = violations(); !v.empty()) throw ValidationError(std::move(v));
}

double rectify_sample(double v, double diode_drop, double v_shunt_clamp) noexcept {
    return std::min(std::max(std::abs(v) - 2.0 * diode_drop, 0.0), v_shunt_clamp);
}

Waveform rectify(const Waveform& w, double diode_drop, double v_shunt_clamp) {
    if (!(w.dt > 0.0)) throw DomainError("waveform step must be positive");
    Waveform out;
    out.dt = w.dt;
    out.samples.reserve(w.samples.size());
    for (double v : w.samples) out.samples.push_back(rectify_sample(v, diode_drop, v_shunt_clamp));
    return out;
}

double stable_output_current(double v_out, double r_load) {
    require_load(r_load);
    return v_out / r_load;
}

double output_power(double v_out, double r_load) {
    require_load(r_load);
    return v_out * v_out / r_load;
}

double charging_current(double v_cap, const ChargingModel& model, double cutoff) {
    if (v_cap >= cutoff) return 0.0;
    return std::visit(overloaded{
                          [](const ConstantCurrent& cc) { return cc.i_cc; },
                          [&](const ConstantPower& cp) {
                              return cp.efficiency * cp.p_in / std::max(v_cap, cp.v_floor);
                          },
                      },
                      model);
}

double charging_current(double v_cap, const PowerStageParams& params) {
    return charging_current(v_cap, params.charging, params.v_out_hi);
}

double harvest_scale(const PowerStageParams& params, double input_vpp) noexcept {
    const double peak = rectify_sample(0.5 * input_vpp, params.diode_drop, params.v_shunt_clamp);
    if (peak < params.v_out_setpoint) return 0.0;
    if (!(params.nominal_input_vpp > 0.0)) return 1.0;
    const double nominal =
        rectify_sample(0.5 * params.nominal_input_vpp, params.diode_drop, params.v_shunt_clamp);
    if (!(nominal > 0.0)) return 1.0;
    const double ratio = peak / nominal;
    return ratio * ratio;
}

std::string describe(const ChargingModel& model) {
    return std::visit(overloaded{
                          [](const ConstantCurrent&) { return std::string("constant_current"); },
                          [](const ConstantPower&) { return std::string("constant_power"); },
                      },
                      model);
}

}  // namespace piezoharvest::power_stage
