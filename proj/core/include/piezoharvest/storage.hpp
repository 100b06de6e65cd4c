#pragma once

#include <limits>
#include <string>
#include <vector>

#include "piezoharvest/power_stage.hpp"

namespace piezoharvest::storage {

/// Supercapacitor as a value. Q = C V; leakage is a constant drain.
struct SupercapState {
    double capacitance = 1.2;  // F
    double v_rating = 2.7;     // V
    double v_now = 0.0;        // V
    double leakage_current = 0.0;  // A
    double esr = 0.0;          // ohm, carried but not used by the charge law

    std::vector<std::string> violations() const;
    void validate() const;
};

/// v_next = clamp(v + (i_in - leakage - i_load) dt / C, 0, v_rating).
/// Requires dt > 0 and i_in, i_load >= 0.
SupercapState step_charge(SupercapState s, double i_in, double dt, double i_load = 0.0);

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// Seconds to charge from s.v_now to v_target under `law`, stopping the law
/// at `cutoff`. Constant current uses the closed form; other laws are
/// integrated with step_charge at `dt`. Returns kNever when the net current
/// cannot lift the voltage. Throws DomainError when v_target is below v_now
/// or above min(v_rating, cutoff).
double time_to_voltage(const SupercapState& s, const power_stage::ChargingModel& law, double v_target,
                       double cutoff = kNever, double dt = 1.0);

/// Half of the charge held at v_full: with Q linear in V that is v_full / 2.
/// Requires an empty capacitor.
double half_capacity_time(const SupercapState& s, const power_stage::ChargingModel& law,
                          double v_full = 1.9, double cutoff = kNever, double dt = 1.0);

}  // namespace piezoharvest::storage
