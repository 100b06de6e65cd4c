#pragma once

#include "piezoharvest/kinematics.hpp"

namespace piezoharvest {

/// Sinusoidal base excitation. Frequency and peak-to-peak base displacement
/// are stored; acceleration is always derived from them, so the two
/// magnitudes can never disagree.
class VibrationProfile {
public:
    static VibrationProfile from_displacement(kinematics::Frequency f, kinematics::Displacement d);
    static VibrationProfile from_acceleration(kinematics::Frequency f, kinematics::Acceleration a);
    static VibrationProfile at_rest(kinematics::Frequency f);

    kinematics::Frequency frequency() const noexcept { return frequency_; }

    /// Base displacement, peak-to-peak, m.
    double displacement_pp() const noexcept { return displacement_pp_; }
    /// Base displacement, zero-to-peak, m.
    double displacement_amplitude() const noexcept { return 0.5 * displacement_pp_; }
    /// Base acceleration, peak-to-peak, m/s^2.
    double acceleration_pp() const;

    kinematics::Displacement displacement() const noexcept {
        return {displacement_pp_, kinematics::Convention::peak_to_peak};
    }

    VibrationProfile with_frequency(kinematics::Frequency f) const noexcept {
        return VibrationProfile(f, displacement_pp_);
    }

private:
    VibrationProfile(kinematics::Frequency f, double displacement_pp) noexcept
        : frequency_(f), displacement_pp_(displacement_pp) {}

    kinematics::Frequency frequency_;
    double displacement_pp_;
};

}  // namespace piezoharvest
