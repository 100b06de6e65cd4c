#pragma once

#include <string_view>

#include "piezoharvest/errors.hpp"

namespace piezoharvest::kinematics {

/// Standard gravity, m/s^2.
inline constexpr double kStandardGravity = 9.80665;

/// How a sinusoid magnitude is quoted. Peak-to-peak is always twice the
/// zero-to-peak amplitude of the same motion.
enum class Convention { amplitude, peak_to_peak };

std::string_view to_string(Convention c) noexcept;

/// Strictly positive, finite frequency in Hz. Construction throws DomainError
/// otherwise, so every operation taking a Frequency can rely on it.
class Frequency {
public:
    explicit Frequency(double hertz);

    double hertz() const noexcept { return hertz_; }
    double angular() const noexcept;

    friend bool operator==(const Frequency&, const Frequency&) = default;

private:
    double hertz_;
};

/// Acceleration magnitude in m/s^2 with an explicit convention.
struct Acceleration {
    double value = 0.0;
    Convention convention = Convention::peak_to_peak;
};

/// Displacement magnitude in m with an explicit convention.
struct Displacement {
    double value = 0.0;
    Convention convention = Convention::peak_to_peak;
};

/// Velocity magnitude in m/s with an explicit convention.
struct Velocity {
    double value = 0.0;
    Convention convention = Convention::peak_to_peak;
};

double g_to_ms2(double g_value) noexcept;
double ms2_to_g(double ms2_value) noexcept;

/// D = A / (2 pi F)^2, convention preserved.
Displacement displacement_from_acceleration(Acceleration a, Frequency f);

/// A = D (2 pi F)^2, convention preserved.
Acceleration acceleration_from_displacement(Displacement d, Frequency f);

/// V = A / (2 pi F), convention preserved.
Velocity velocity_from_acceleration(Acceleration a, Frequency f);

/// V = D (2 pi F), convention preserved.
Velocity velocity_from_displacement(Displacement d, Frequency f);

Acceleration convert_convention(Acceleration x, Convention target) noexcept;
Displacement convert_convention(Displacement x, Convention target) noexcept;
Velocity convert_convention(Velocity x, Convention target) noexcept;

// ---------------------------------------------------------------------------
// Shipboard environmental vibration limits (single amplitude per band)
// ---------------------------------------------------------------------------

enum class Band { band_4_15, band_16_25, band_26_33, out_of_range };

std::string_view to_string(Band b) noexcept;

struct ComplianceVerdict {
    Band band = Band::out_of_range;
    double limit_single_amplitude = 0.0;  // m; 0 when out of range
    double single_amplitude = 0.0;        // m, the measured value compared
    bool compliant = false;
};

/// Band limits are contiguous: [4, 15] -> 0.762 mm, (15, 25] -> 0.508 mm,
/// (25, 33] -> 0.254 mm. Anything outside [4, 33] Hz is out_of_range.
Band band_for(Frequency f) noexcept;
double band_limit(Band b) noexcept;

ComplianceVerdict mil_std_check(Frequency f, Displacement d);

}  // namespace piezoharvest::kinematics
