#include "piezoharvest/vibration_profile.hpp"

namespace piezoharvest {

using kinematics::Convention;

VibrationProfile VibrationProfile::from_displacement(kinematics::Frequency f,
                                                     kinematics::Displacement d) {
    // Validates the magnitude.
    (void)kinematics::acceleration_from_displacement(d, f);
    return VibrationProfile(f, kinematics::convert_convention(d, Convention::peak_to_peak).value);
}

VibrationProfile VibrationProfile::from_acceleration(kinematics::Frequency f,
                                                     kinematics::Acceleration a) {
    const auto d = kinematics::displacement_from_acceleration(a, f);
    return VibrationProfile(f, kinematics::convert_convention(d, Convention::peak_to_peak).value);
}

VibrationProfile VibrationProfile::at_rest(kinematics::Frequency f) { return VibrationProfile(f, 0.0); }

double VibrationProfile::acceleration_pp() const {
    return kinematics::acceleration_from_displacement(displacement(), frequency_).value;
}

}  // namespace piezoharvest
