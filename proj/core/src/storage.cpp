#include "piezoharvest/storage.hpp"

#include <algorithm>
#include <cmath>

#include "piezoharvest/errors.hpp"

namespace piezoharvest::storage {

std::vector<std::string> SupercapState::violations() const {
    std::vector<std::string> out;
    if (!(std::isfinite(capacitance) && capacitance > 0.0))
        out.emplace_back("storage.capacitance must be positive");
    if (!(std::isfinite(v_rating) && v_rating > 0.0)) out.emplace_back("storage.v_rating must be positive");
    if (!(std::isfinite(v_now) && v_now >= 0.0 && v_now <= v_rating))
        out.emplace_back("storage.v_initial must lie in [0, v_rating]");
    if (!(std::isfinite(leakage_current) && leakage_current >= 0.0))
        out.emplace_back("storage.leakage must be non-negative");
    if (!(std::isfinite(esr) && esr >= 0.0)) out.emplace_back("storage.esr must be non-negative");
    return out;
}

void SupercapState::validate() const {
    if (auto v = violations(); !v.empty()) throw ValidationError(std::move(v));
}

SupercapState step_charge(SupercapState s, double i_in, double dt, double i_load) {
    if (!(dt > 0.0)) throw DomainError("charge step must be positive");
    if (!(i_in >= 0.0) || !(i_load >= 0.0)) throw DomainError("charge currents must be non-negative");
    const double dv = (i_in - s.leakage_current - i_load) * dt / s.capacitance;
    s.v_now = std::clamp(s.v_now + dv, 0.0, s.v_rating);
    return s;
}

double time_to_voltage(const SupercapState& s, const power_stage::ChargingModel& law, double v_target,
                       double cutoff, double dt) {
    s.validate();
    if (!(v_target >= s.v_now)) throw DomainError("target voltage is below the present voltage");
    const double ceiling = std::min(s.v_rating, cutoff);
    if (v_target > ceiling)
        throw DomainError("target " + std::to_string(v_target) + " V is above the reachable " +
                          std::to_string(ceiling) + " V");
    if (v_target == s.v_now) return 0.0;

    if (const auto* cc = std::get_if<power_stage::ConstantCurrent>(&law)) {
        const double net = cc->i_cc - s.leakage_current;
        if (!(net > 0.0)) return kNever;
        return s.capacitance * (v_target - s.v_now) / net;
    }

    if (!(dt > 0.0)) throw DomainError("integration step must be positive");
    constexpr std::size_t kMaxSteps = 1'000'000'000;
    SupercapState cur = s;
    for (std::size_t n = 0; n < kMaxSteps; ++n) {
        const double i = power_stage::charging_current(cur.v_now, law, cutoff);
        if (!(i > cur.leakage_current)) return kNever;
        const SupercapState next = step_charge(cur, i, dt);
        if (next.v_now >= v_target) {
            const double frac = (v_target - cur.v_now) / (next.v_now - cur.v_now);
            return (static_cast<double>(n) + frac) * dt;
        }
        cur = next;
    }
    return kNever;
}

double half_capacity_time(const SupercapState& s, const power_stage::ChargingModel& law, double v_full,
                          double cutoff, double dt) {
    if (s.v_now != 0.0) throw DomainError("half-capacity time is defined from an empty capacitor");
    if (!(v_full > 0.0 && v_full <= s.v_rating))
        throw DomainError("full voltage must lie in (0, v_rating]");
    return time_to_voltage(s, law, 0.5 * v_full, cutoff, dt);
}

}  // namespace piezoharvest::storage
