#include "piezoharvest/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace piezoharvest::kinematics {

namespace {

void require_magnitude(double value, const char* what) {
    if (!std::isfinite(value) || value < 0.0) {
        throw DomainError(std::string(what) + " magnitude must be finite and non-negative, got " +
                          std::to_string(value));
    }
}

constexpr double factor_to(Convention from, Convention to) noexcept {
    if (from == to) return 1.0;
    return to == Convention::peak_to_peak ? 2.0 : 0.5;
}

}  // namespace

std::string_view to_string(Convention c) noexcept {
    return c == Convention::amplitude ? "amp" : "pp";
}

Frequency::Frequency(double hertz) : hertz_(hertz) {
    if (!std::isfinite(hertz) || hertz <= 0.0) {
        throw DomainError("frequency must be positive and finite, got " + std::to_string(hertz));
    }
}

double Frequency::angular() const noexcept { return 2.0 * std::numbers::pi * hertz_; }

double g_to_ms2(double g_value) noexcept { return g_value * kStandardGravity; }

double ms2_to_g(double ms2_value) noexcept { return ms2_value / kStandardGravity; }

Displacement displacement_from_acceleration(Acceleration a, Frequency f) {
    require_magnitude(a.value, "acceleration");
    const double w = f.angular();
    return {a.value / (w * w), a.convention};
}

Acceleration acceleration_from_displacement(Displacement d, Frequency f) {
    require_magnitude(d.value, "displacement");
    const double w = f.angular();
    return {d.value * (w * w), d.convention};
}

Velocity velocity_from_acceleration(Acceleration a, Frequency f) {
    require_magnitude(a.value, "acceleration");
    return {a.value / f.angular(), a.convention};
}

Velocity velocity_from_displacement(Displacement d, Frequency f) {
    require_magnitude(d.value, "displacement");
    return {d.value * f.angular(), d.convention};
}

Acceleration convert_convention(Acceleration x, Convention target) noexcept {
    return {x.value * factor_to(x.convention, target), target};
}

Displacement convert_convention(Displacement x, Convention target) noexcept {
    return {x.value * factor_to(x.convention, target), target};
}

Velocity convert_convention(Velocity x, Convention target) noexcept {
    return {x.value * factor_to(x.convention, target), target};
}

std::string_view to_string(Band b) noexcept {
    switch (b) {
        case Band::band_4_15: return "4-15 Hz";
        case Band::band_16_25: return "16-25 Hz";
        case Band::band_26_33: return "26-33 Hz";
        case Band::out_of_range: break;
    }
    return "out of range";
}

Band band_for(Frequency f) noexcept {
    const double hz = f.hertz();
    if (hz < 4.0 || hz > 33.0) return Band::out_of_range;
    if (hz <= 15.0) return Band::band_4_15;
    if (hz <= 25.0) return Band::band_16_25;
    return Band::band_26_33;
}

double band_limit(Band b) noexcept {
    switch (b) {
        case Band::band_4_15: return 0.762e-3;
        case Band::band_16_25: return 0.508e-3;
        case Band::band_26_33: return 0.254e-3;
        case Band::out_of_range: break;
    }
    return 0.0;
}

ComplianceVerdict mil_std_check(Frequency f, Displacement d) {
    require_magnitude(d.value, "displacement");
    ComplianceVerdict v;
    v.band = band_for(f);
    v.limit_single_amplitude = band_limit(v.band);
    v.single_amplitude = convert_convention(d, Convention::amplitude).value;
    v.compliant = v.band != Band::out_of_range && v.single_amplitude <= v.limit_single_amplitude;
    return v;
}

}  // namespace piezoharvest::kinematics
