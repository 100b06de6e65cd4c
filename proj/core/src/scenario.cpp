#include "piezoharvest/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "piezoharvest/errors.hpp"

namespace piezoharvest {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const storage::SupercapState* storage_of(const LoadSpec& load) {
    if (const auto* s = std::get_if<SupercapacitorLoad>(&load)) return &s->cap;
    if (const auto* d = std::get_if<DutyCycledLoad>(&load)) return &d->cap;
    return nullptr;
}

double interpolate(const std::vector<ChargeRow>& rows, double t) {
    const auto it = std::lower_bound(rows.begin(), rows.end(), t,
                                     [](const ChargeRow& r, double x) { return r.t < x; });
    if (it == rows.begin()) return it->v_cap;
    if (it == rows.end()) return rows.back().v_cap;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    return lo.v_cap + w * (hi.v_cap - lo.v_cap);
}

}  // namespace

double DutyCycledLoad::current_at(double t, double dt) const noexcept {
    if (dt >= period) return idle_current + duty * (active_current - idle_current);
    const double phase = std::fmod(t, period) / period;
    return phase < duty ? active_current : idle_current;
}

std::vector<std::string> Scenario::violations() const {
    std::vector<std::string> out = harvester.violations();
    for (auto& v : power_stage.violations()) out.push_back(std::move(v));

    std::visit(overloaded{
                   [&](const ResistorLoad& r) {
                       if (!(std::isfinite(r.ohms) && r.ohms > 0.0))
                           out.emplace_back("load.r must be positive");
                   },
                   [&](const SupercapacitorLoad& s) {
                       for (auto& v : s.cap.violations()) out.push_back(std::move(v));
                   },
                   [&](const DutyCycledLoad& d) {
                       for (auto& v : d.cap.violations()) out.push_back(std::move(v));
                       if (!(d.active_current >= 0.0 && std::isfinite(d.active_current)))
                           out.emplace_back("load.active_current must be non-negative");
                       if (!(d.idle_current >= 0.0 && std::isfinite(d.idle_current)))
                           out.emplace_back("load.idle_current must be non-negative");
                       if (!(d.period > 0.0 && std::isfinite(d.period)))
                           out.emplace_back("load.period must be positive");
                       if (!(d.duty >= 0.0 && d.duty <= 1.0)) out.emplace_back("load.duty must lie in [0, 1]");
                   },
               },
               load);

    if (!(std::isfinite(sim.duration) && sim.duration >= 0.0))
        out.emplace_back("sim.duration must be non-negative");
    if (!(std::isfinite(sim.dt) && sim.dt > 0.0)) out.emplace_back("sim.dt must be positive");
    if (!(std::isfinite(sim.record_interval) && sim.record_interval >= sim.dt))
        out.emplace_back("sim.record_interval must be at least sim.dt");
    if (!(std::isfinite(sim.v_full) && sim.v_full > 0.0)) out.emplace_back("sim.v_full must be positive");
    if (const auto* cap = storage_of(load); cap && sim.v_full > cap->v_rating)
        out.emplace_back("sim.v_full exceeds the supercapacitor rating");
    return out;
}

void Scenario::validate() const {
    if (auto v = violations(); !v.empty()) throw ValidationError(std::move(v));
}

// ---------------------------------------------------------------------------

std::optional<BuiltinId> parse_builtin_id(std::string_view text) noexcept {
    if (text == "A" || text == "a") return BuiltinId::A;
    if (text == "B" || text == "b") return BuiltinId::B;
    return std::nullopt;
}

std::string_view to_string(BuiltinId id) noexcept { return id == BuiltinId::A ? "A" : "B"; }

ScenarioReference builtin_reference(BuiltinId id) {
    if (id == BuiltinId::A) {
        return {.drive_vpp = 10.0,
                .measured_accel_pp_g = 0.52,
                .target_piezo_vpp = 22.66,
                .stable_load_ohms = 10.7e3,
                .stable_current_lo = 165e-6,
                .stable_current_hi = 169e-6,
                .full_charge_min = 210.0,
                .half_capacity_min = 100.0};
    }
    return {.drive_vpp = 16.0,
            .measured_accel_pp_g = 0.98,
            .target_piezo_vpp = 26.56,
            .stable_load_ohms = 8.5e3,
            .stable_current_lo = 209e-6,
            .stable_current_hi = 213e-6,
            .full_charge_min = 160.0,
            .half_capacity_min = 72.0};
}

Scenario builtin_scenario(BuiltinId id) {
    using kinematics::Convention;
    const ScenarioReference ref = builtin_reference(id);
    const double dpp = id == BuiltinId::A ? 0.210e-3 : 0.405e-3;

    Scenario s;
    s.name = std::string(to_string(id));
    s.profile = VibrationProfile::from_displacement(kinematics::Frequency(23.5),
                                                    {dpp, Convention::peak_to_peak});
    s.harvester = harvester::ppa2011_tuned();
    s.power_stage.charging = power_stage::ConstantCurrent{
        power_stage::stable_output_current(s.power_stage.v_out_setpoint, ref.stable_load_ohms)};
    s.power_stage.nominal_input_vpp = ref.target_piezo_vpp;
    s.load = SupercapacitorLoad{storage::SupercapState{}};
    return s;
}

// ---------------------------------------------------------------------------

ChargeCurve run(const Scenario& s) {
    s.validate();

    ChargeCurve curve;
    const auto oc = harvester::open_circuit_output(s.harvester, s.profile);
    const double scale = power_stage::harvest_scale(s.power_stage, oc.vpp);
    curve.summary.input_vpp = oc.vpp;
    curve.summary.input_clipped = oc.clipped;
    curve.summary.harvest_scale = scale;

    const auto steps = static_cast<std::size_t>(std::llround(s.sim.duration / s.sim.dt));
    const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(s.sim.record_interval / s.sim.dt)));
    const double dt = s.sim.dt;

    if (const auto* r = std::get_if<ResistorLoad>(&s.load)) {
        const double v_out = scale > 0.0 ? s.power_stage.v_out_setpoint : 0.0;
        const double i = power_stage::stable_output_current(v_out, r->ohms);
        const double p = power_stage::output_power(v_out, r->ohms);
        for (std::size_t n = 0; n <= steps; n += every)
            curve.rows.push_back({static_cast<double>(n) * dt, v_out, i, p});
        curve.summary.final_v = v_out;
        curve.summary.avg_current = i;
        curve.summary.output_power = p;
        return curve;
    }

    const auto* duty = std::get_if<DutyCycledLoad>(&s.load);
    storage::SupercapState cap = *storage_of(s.load);
    const double cutoff = std::min(s.power_stage.v_out_hi, cap.v_rating);
    const double v_half = 0.5 * s.sim.v_full;

    auto& sum = curve.summary;
    if (cap.v_now >= v_half) sum.t_half_capacity = 0.0;
    if (cap.v_now >= cutoff) sum.t_full = 0.0;

    double charge = 0.0;
    double charging_time = 0.0;
    curve.rows.reserve(steps / every + 1);

    for (std::size_t n = 0;; ++n) {
        const double t = static_cast<double>(n) * dt;
        const double i = scale * power_stage::charging_current(cap.v_now, s.power_stage.charging, cutoff);
        if (n % every == 0) curve.rows.push_back({t, cap.v_now, i, cap.v_now * i});
        if (n == steps) break;

        const double draw = duty ? duty->current_at(t, dt) : 0.0;
        const double v0 = cap.v_now;
        const double raw = v0 + (i - cap.leakage_current - draw) * dt / cap.capacitance;

        double active = i > 0.0 ? dt : 0.0;
        if (i > 0.0 && v0 < cutoff && raw >= cutoff) {
            // Regulator stops at the cutoff part-way through the step.
            const double frac = (cutoff - v0) / (raw - v0);
            active = frac * dt;
            cap.v_now = cutoff;
            if (!sum.t_full) sum.t_full = t + active;
        } else {
            cap = storage::step_charge(cap, i, dt, draw);
        }
        charge += i * active;
        charging_time += active;

        if (!sum.t_half_capacity && v0 < v_half && cap.v_now >= v_half)
            sum.t_half_capacity = t + (v_half - v0) / (cap.v_now - v0) * dt;
    }

    sum.final_v = cap.v_now;
    sum.avg_current = charging_time > 0.0 ? charge / charging_time : 0.0;
    sum.output_power = s.power_stage.v_out_setpoint * sum.avg_current;
    return curve;
}

// ---------------------------------------------------------------------------

std::optional<double> crossing_time(const std::vector<ChargeRow>& rows, double level) {
    if (rows.empty()) return std::nullopt;
    if (rows.front().v_cap >= level) return rows.front().t;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& a = rows[k - 1];
        const auto& b = rows[k];
        if (b.v_cap >= level) return a.t + (level - a.v_cap) / (b.v_cap - a.v_cap) * (b.t - a.t);
    }
    return std::nullopt;
}

CurveComparison compare(const ChargeCurve& curve, const ChargeCurve& reference,
                        const CompareThresholds& thresholds) {
    if (curve.rows.empty() || reference.rows.empty()) throw ComparisonError("cannot compare an empty curve");
    const double lo = std::max(curve.rows.front().t, reference.rows.front().t);
    const double hi = std::min(curve.rows.back().t, reference.rows.back().t);
    if (lo > hi) throw ComparisonError("curves have disjoint time spans");

    double sq = 0.0;
    std::size_t count = 0;
    for (const auto& row : curve.rows) {
        if (row.t < lo || row.t > hi) continue;
        const double d = row.v_cap - interpolate(reference.rows, row.t);
        sq += d * d;
        ++count;
    }

    CurveComparison out;
    out.rmse_v = count > 0 ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
    const auto diff = [&](double level) -> std::optional<double> {
        const auto a = crossing_time(curve.rows, level);
        const auto b = crossing_time(reference.rows, level);
        if (!a || !b) return std::nullopt;
        return *a - *b;
    };
    out.dt_half = diff(thresholds.v_half);
    out.dt_full = diff(thresholds.v_full);
    return out;
}

}  // namespace piezoharvest
