#include "piezoharvest/harvester.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace piezoharvest::harvester {

namespace {

using kinematics::Convention;
using kinematics::Displacement;
using kinematics::Frequency;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

double saturate(double v_linear, double v_sat) noexcept {
    if (std::isinf(v_sat)) return v_linear;
    return v_sat * std::tanh(v_linear / v_sat);
}

/// Response amplitude ratio |Z| / Y of a base-excited SDOF oscillator.
double transmissibility_relative(double r, double zeta) noexcept {
    const double r2 = r * r;
    const double a = 1.0 - r2;
    const double b = 2.0 * zeta * r;
    return r2 / std::sqrt(a * a + b * b);
}

}  // namespace

std::vector<std::string> HarvesterParams::violations() const {
    std::vector<std::string> out;
    if (!positive(f_unloaded_hz)) out.emplace_back("harvester.f_unloaded_hz must be positive");
    if (!positive(m_eff_kg)) out.emplace_back("harvester.m_eff must be positive");
    if (!(std::isfinite(m_tip_kg) && m_tip_kg >= 0.0))
        out.emplace_back("harvester.m_tip must be non-negative");
    if (!(std::isfinite(zeta) && zeta > 0.0 && zeta < 1.0))
        out.emplace_back("harvester.zeta must lie in (0, 1)");
    if (!(std::isfinite(gain_v_per_m) && gain_v_per_m >= 0.0))
        out.emplace_back("harvester.gain_v_per_m must be non-negative");
    if (!(v_sat > 0.0) || std::isnan(v_sat)) out.emplace_back("harvester.v_sat must be positive or inf");
    if (!positive(c_piezo_f)) out.emplace_back("harvester.c_piezo must be positive");
    if (!positive(v_rating)) out.emplace_back("harvester.v_rating must be positive");
    return out;
}

void HarvesterParams::validate() const {
    if (auto v = violations(); !v.empty()) throw ValidationError(std::move(v));
}

double effective_mass_for_resonance(double f_unloaded_hz, double m_tip_kg, double target_hz) {
    if (!positive(f_unloaded_hz) || !positive(target_hz) || !positive(m_tip_kg))
        throw DomainError("resonance tuning needs positive frequencies and tip mass");
    if (target_hz >= f_unloaded_hz)
        throw DomainError("a tip mass can only lower the resonance");
    const double fl2 = target_hz * target_hz;
    return m_tip_kg * fl2 / (f_unloaded_hz * f_unloaded_hz - fl2);
}

HarvesterParams ppa2011_tuned() {
    HarvesterParams p;
    p.f_unloaded_hz = 178.0;
    p.m_tip_kg = 17e-3;
    p.m_eff_kg = effective_mass_for_resonance(p.f_unloaded_hz, p.m_tip_kg, 23.5);
    p.zeta = 0.05;
    // Fitted to 22.66 / 26.56 Vpp at 0.210 / 0.405 mm pp base motion, 23.5 Hz.
    p.gain_v_per_m = 15623.296619654928;
    p.v_sat = 13.529578160784826;
    p.c_piezo_f = 190e-9;
    p.v_rating = 120.0;
    return p;
}

Frequency loaded_resonance(const HarvesterParams& p) {
    if (!positive(p.m_eff_kg) || !(p.m_tip_kg >= 0.0))
        throw DomainError("loaded resonance needs m_eff > 0 and m_tip >= 0");
    return Frequency(p.f_unloaded_hz * std::sqrt(p.m_eff_kg / (p.m_eff_kg + p.m_tip_kg)));
}

Displacement steady_state_tip_displacement(const HarvesterParams& p, const VibrationProfile& base) {
    const double r = base.frequency().hertz() / loaded_resonance(p).hertz();
    return {transmissibility_relative(r, p.zeta) * base.displacement_amplitude(), Convention::amplitude};
}

double voltage_from_tip_displacement(const HarvesterParams& p, double z) noexcept {
    const double v = saturate(p.gain_v_per_m * z, p.v_sat);
    return std::clamp(v, -p.v_rating, p.v_rating);
}

OpenCircuitOutput open_circuit_output(const HarvesterParams& p, const VibrationProfile& base) {
    OpenCircuitOutput out;
    out.amplitude_linear = p.gain_v_per_m * steady_state_tip_displacement(p, base).value;
    const double amp = saturate(out.amplitude_linear, p.v_sat);
    out.clipped = amp > p.v_rating;
    out.vpp = 2.0 * std::min(amp, p.v_rating);
    return out;
}

double open_circuit_vpp(const HarvesterParams& p, const VibrationProfile& base) {
    return open_circuit_output(p, base).vpp;
}

double default_step(const VibrationProfile& base) noexcept {
    return 1.0 / (200.0 * base.frequency().hertz());
}

double settling_time(const HarvesterParams& p) {
    return 20.0 / (p.zeta * loaded_resonance(p).angular());
}

Waveform simulate_tip_motion(const HarvesterParams& p, const VibrationProfile& base, double duration,
                             double dt) {
    p.validate();
    const double f = base.frequency().hertz();
    if (!positive(dt)) throw ConfigError("integration step must be positive");
    if (dt > 1.0 / (50.0 * f))
        throw ConfigError("integration step " + std::to_string(dt) + " s exceeds 1/(50 f) = " +
                          std::to_string(1.0 / (50.0 * f)) + " s");
    if (!(std::isfinite(duration) && duration >= 0.0))
        throw ConfigError("duration must be finite and non-negative");

    const double wn = loaded_resonance(p).angular();
    const double w = base.frequency().angular();
    const double c = 2.0 * p.zeta * wn;
    const double k = wn * wn;
    const double drive = base.displacement_amplitude() * w * w;  // peak of -y''

    // y = Y sin(w t) => -y'' = Y w^2 sin(w t)
    auto accel = [&](double t, double z, double v) { return drive * std::sin(w * t) - c * v - k * z; };

    const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
    Waveform out;
    out.dt = dt;
    out.samples.reserve(steps + 1);

    double z = 0.0;
    double v = 0.0;
    out.samples.push_back(z);
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        const double h2 = 0.5 * dt;

        const double k1z = v;
        const double k1v = accel(t, z, v);
        const double k2z = v + h2 * k1v;
        const double k2v = accel(t + h2, z + h2 * k1z, v + h2 * k1v);
        const double k3z = v + h2 * k2v;
        const double k3v = accel(t + h2, z + h2 * k2z, v + h2 * k2v);
        const double k4z = v + dt * k3v;
        const double k4v = accel(t + dt, z + dt * k3z, v + dt * k3v);

        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        out.samples.push_back(z);
    }
    return out;
}

Waveform simulate_waveform(const HarvesterParams& p, const VibrationProfile& base, double duration,
                           double dt) {
    Waveform w = simulate_tip_motion(p, base, duration, dt);
    for (double& s : w.samples) s = voltage_from_tip_displacement(p, s);
    return w;
}

// ---------------------------------------------------------------------------
// Calibration: Levenberg-Marquardt on log(gain) [, log(v_sat)] with relative
// residuals. At most two unknowns, so the normal equations are solved by hand.
// ---------------------------------------------------------------------------

namespace {

struct FitPoint {
    double tip;       // |Z|, m
    double measured;  // measured amplitude, V
};

struct Evaluation {
    std::vector<double> residuals;
    std::vector<std::array<double, 2>> jacobian;
    double cost = 0.0;
};

Evaluation evaluate(const std::vector<FitPoint>& pts, double gain, double v_sat, bool fit_v_sat) {
    Evaluation e;
    e.residuals.reserve(pts.size());
    e.jacobian.reserve(pts.size());
    for (const auto& pt : pts) {
        const double lin = gain * pt.tip;
        double model = lin;
        double d_gain = lin;  // d model / d log(gain)
        double d_sat = 0.0;   // d model / d log(v_sat)
        if (!std::isinf(v_sat)) {
            const double u = lin / v_sat;
            const double th = std::tanh(u);
            const double sech2 = 1.0 - th * th;
            model = v_sat * th;
            d_gain = lin * sech2;
            d_sat = v_sat * th - lin * sech2;
        }
        const double r = (model - pt.measured) / pt.measured;
        e.residuals.push_back(r);
        e.jacobian.push_back({d_gain / pt.measured, fit_v_sat ? d_sat / pt.measured : 0.0});
        e.cost += r * r;
    }
    return e;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

CalibrationResult calibrate(const HarvesterParams& p0, std::span<const Observation> observations,
                            const CalibrationOptions& options) {
    const std::size_t needed = options.fit_v_sat ? 2 : 1;
    if (observations.size() < needed)
        throw ConfigError("calibration needs at least " + std::to_string(needed) + " observation(s), got " +
                          std::to_string(observations.size()));

    HarvesterParams seed = p0;
    if (seed.gain_v_per_m <= 0.0) seed.gain_v_per_m = 1.0;
    seed.validate();

    std::vector<FitPoint> pts;
    pts.reserve(observations.size());
    for (const auto& obs : observations) {
        const double tip = steady_state_tip_displacement(seed, obs.base).value;
        if (!(obs.measured_vpp > 0.0) || !std::isfinite(obs.measured_vpp))
            throw ConfigError("measured Vpp must be positive");
        if (!(tip > 0.0)) throw ConfigError("observation has zero base motion");
        pts.push_back({tip, 0.5 * obs.measured_vpp});
    }

    // Seed gain from the least-excited point (closest to the linear regime).
    const auto least = std::min_element(pts.begin(), pts.end(),
                                        [](const FitPoint& a, const FitPoint& b) { return a.tip < b.tip; });
    double log_gain = std::log(least->measured / least->tip);
    double log_sat = 0.0;
    double fixed_sat = p0.v_sat;
    if (options.fit_v_sat) {
        double peak = 0.0;
        for (const auto& pt : pts) peak = std::max(peak, pt.measured);
        log_sat = std::log(1.5 * peak);
    }

    auto sat_of = [&](double ls) { return options.fit_v_sat ? std::exp(ls) : fixed_sat; };

    Evaluation cur = evaluate(pts, std::exp(log_gain), sat_of(log_sat), options.fit_v_sat);
    double lambda = 1e-3;
    int iter = 0;
    bool converged = cur.cost < 1e-28;

    while (!converged && iter < options.max_iterations) {
        ++iter;
        // Normal equations (J^T J + lambda diag) delta = -J^T r
        double a00 = 0, a01 = 0, a11 = 0, g0 = 0, g1 = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& j = cur.jacobian[i];
            a00 += j[0] * j[0];
            a01 += j[0] * j[1];
            a11 += j[1] * j[1];
            g0 += j[0] * cur.residuals[i];
            g1 += j[1] * cur.residuals[i];
        }

        bool accepted = false;
        for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
            double d0 = 0.0;
            double d1 = 0.0;
            const double m00 = a00 * (1.0 + lambda);
            if (options.fit_v_sat) {
                const double m11 = a11 * (1.0 + lambda) + 1e-300;
                const double det = m00 * m11 - a01 * a01;
                if (det == 0.0) {
                    lambda *= 10.0;
                    continue;
                }
                d0 = (-g0 * m11 + g1 * a01) / det;
                d1 = (-g1 * m00 + g0 * a01) / det;
            } else {
                d0 = -g0 / m00;
            }
            const double trial_gain = log_gain + d0;
            const double trial_sat = log_sat + d1;
            Evaluation next = evaluate(pts, std::exp(trial_gain), sat_of(trial_sat), options.fit_v_sat);
            if (next.cost < cur.cost) {
                const double step = std::max(std::abs(d0), std::abs(d1));
                const double improvement = cur.cost - next.cost;
                log_gain = trial_gain;
                log_sat = trial_sat;
                cur = std::move(next);
                lambda = std::max(lambda * 0.1, 1e-15);
                accepted = true;
                if (cur.cost < 1e-28 || step < options.step_tolerance ||
                    improvement <= 1e-16 * cur.cost) {
                    converged = true;
                }
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) {
            // No descent direction left: stationary point.
            converged = true;
        }
        // Saturation pushed to the linear limit: the data carry no compression.
        if (options.fit_v_sat && log_sat > std::log(1e12)) {
            converged = true;
        }
    }

    if (!converged) {
        throw CalibrationError("calibration did not converge after " + std::to_string(iter) +
                                   " iterations",
                               max_abs(cur.residuals));
    }

    CalibrationResult result;
    result.params = p0;
    result.params.gain_v_per_m = std::exp(log_gain);
    result.params.v_sat = options.fit_v_sat ? std::exp(log_sat) : p0.v_sat;
    result.iterations = iter;
    result.relative_residuals.reserve(observations.size());
    for (const auto& obs : observations) {
        const double model = open_circuit_vpp(result.params, obs.base);
        result.relative_residuals.push_back((model - obs.measured_vpp) / obs.measured_vpp);
    }
    result.max_relative_residual = max_abs(result.relative_residuals);
    return result;
}

}  // namespace piezoharvest::harvester
