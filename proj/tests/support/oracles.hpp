#pragma once

// Reference computations used by the tests. Everything here is written
// directly from the governing relations and shares no code with the library.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracles {

inline constexpr long double kG = 9.80665L;
inline constexpr long double kPi = std::numbers::pi_v<long double>;

/// D = A / (2 pi f)^2 in long double.
inline double eq1_displacement(double accel, double hz) {
    const long double w = 2.0L * kPi * hz;
    return static_cast<double>(accel / (w * w));
}

/// Plain bisection on a sign change in [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Modal mass that tunes f_unloaded down to target with m_tip, by bisection
/// on f_unloaded * sqrt(m / (m + m_tip)) - target.
inline double tuned_mass_by_root_find(double f_unloaded, double m_tip, double target) {
    return bisect([&](double m) { return f_unloaded * std::sqrt(m / (m + m_tip)) - target; }, 1e-9, 10.0);
}

/// Two-point fit of amp = v_sat tanh(gain z / v_sat) for two tip amplitudes,
/// via bisection on x = gain z1 / v_sat using the amplitude ratio.
struct TanhFit {
    double gain;
    double v_sat;
};

inline TanhFit two_point_tanh_fit(double z1, double amp1, double z2, double amp2) {
    const double k = z2 / z1;
    const double ratio = amp2 / amp1;
    const double x = bisect([&](double x) { return std::tanh(k * x) / std::tanh(x) - ratio; }, 1e-6, 50.0);
    const double v_sat = amp1 / std::tanh(x);
    return {x * v_sat / z1, v_sat};
}

/// Brute-force steady-state amplitude: explicit semi-implicit Euler with a
/// very fine step, amplitude measured over the last few periods.
inline double brute_force_tip_amplitude(double f_n, double zeta, double f_drive, double y_amp) {
    const double wn = 2.0 * std::numbers::pi * f_n;
    const double w = 2.0 * std::numbers::pi * f_drive;
    const double dt = 1.0 / (f_drive * 20000.0);
    const double t_settle = 25.0 / (zeta * wn);
    const double t_end = t_settle + 3.0 / f_drive;
    double z = 0.0, v = 0.0, peak = 0.0;
    for (double t = 0.0; t < t_end; t += dt) {
        const double a = y_amp * w * w * std::sin(w * t) - 2.0 * zeta * wn * v - wn * wn * z;
        v += a * dt;
        z += v * dt;
        if (t > t_settle) peak = std::max(peak, std::abs(z));
    }
    return peak;
}

}  // namespace oracles
