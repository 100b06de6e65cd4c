#include <catch_amalgamated.hpp>

#include <array>

#include "oracles.hpp"
#include "piezoharvest/harvester.hpp"

using namespace piezoharvest;
using namespace piezoharvest::harvester;
using kinematics::Convention;
using kinematics::Frequency;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

namespace {

VibrationProfile base_pp(double hz, double dpp_m) {
    return VibrationProfile::from_displacement(Frequency(hz), {dpp_m, Convention::peak_to_peak});
}

HarvesterParams linear_unit_gain(double f_loaded, double zeta) {
    HarvesterParams p;
    p.f_unloaded_hz = 178.0;
    p.m_tip_kg = 17e-3;
    p.m_eff_kg = effective_mass_for_resonance(178.0, 17e-3, f_loaded);
    p.zeta = zeta;
    p.gain_v_per_m = 1.0;
    p.v_sat = kUnlimited;
    return p;
}

}  // namespace

TEST_CASE("loaded resonance", "[harvester]") {
    HarvesterParams p = ppa2011_tuned();

    SECTION("no tip mass keeps the datasheet resonance") {
        p.m_tip_kg = 0.0;
        CHECK(loaded_resonance(p).hertz() == 178.0);
    }
    SECTION("equal masses divide by sqrt 2") {
        p.m_tip_kg = p.m_eff_kg;
        CHECK_THAT(loaded_resonance(p).hertz(), WithinRel(178.0 / std::sqrt(2.0), 1e-14));
    }
    SECTION("17 g tuned to 23.5 Hz") {
        const double oracle = oracles::tuned_mass_by_root_find(178.0, 17e-3, 23.5);
        CHECK_THAT(oracle * 1e3, WithinAbs(0.30157, 1e-5));
        CHECK_THAT(p.m_eff_kg, WithinRel(oracle, 1e-10));
        CHECK_THAT(loaded_resonance(p).hertz(), WithinRel(23.5, 1e-13));
    }
    SECTION("bad masses") {
        p.m_eff_kg = 0.0;
        CHECK_THROWS_AS(loaded_resonance(p), DomainError);
    }
}

TEST_CASE("steady-state tip displacement", "[harvester]") {
    const auto p = linear_unit_gain(23.5, 0.05);

    SECTION("quasi-static drive barely moves the tip") {
        const double z = steady_state_tip_displacement(p, base_pp(0.01, 0.21e-3)).value;
        const double r = 0.01 / 23.5;
        CHECK_THAT(z, WithinRel(r * r * 0.105e-3, 1e-6));
    }
    SECTION("at resonance |Z| = Y / (2 zeta)") {
        const auto z = steady_state_tip_displacement(p, base_pp(23.5, 0.210e-3));
        CHECK(z.convention == Convention::amplitude);
        CHECK_THAT(z.value, WithinRel(1.05e-3, 1e-12));
    }
    SECTION("r = sqrt 2 with vanishing damping gives 2Y") {
        auto q = linear_unit_gain(23.5, 1e-9);
        const auto z = steady_state_tip_displacement(q, base_pp(23.5 * std::sqrt(2.0), 0.2e-3));
        CHECK_THAT(z.value, WithinRel(0.2e-3, 1e-8));
    }
    SECTION("agrees with a brute-force time integration") {
        const double z = steady_state_tip_displacement(p, base_pp(21.0, 0.3e-3)).value;
        CHECK_THAT(z, WithinRel(oracles::brute_force_tip_amplitude(23.5, 0.05, 21.0, 0.15e-3), 2e-3));
    }
}

TEST_CASE("open-circuit voltage", "[harvester]") {
    const auto p = ppa2011_tuned();
    CHECK(open_circuit_vpp(p, VibrationProfile::at_rest(Frequency(23.5))) == 0.0);
    CHECK_THAT(open_circuit_vpp(p, base_pp(23.5, 0.210e-3)), WithinRel(22.66, 0.02));
    CHECK_THAT(open_circuit_vpp(p, base_pp(23.5, 0.405e-3)), WithinRel(26.56, 0.02));

    SECTION("rating clips and is flagged") {
        HarvesterParams q = p;
        q.v_sat = kUnlimited;
        q.gain_v_per_m = 1e6;
        const auto out = open_circuit_output(q, base_pp(23.5, 0.405e-3));
        CHECK(out.clipped);
        CHECK(out.vpp == 240.0);
    }
    SECTION("saturation never exceeds 2 v_sat") {
        const auto out = open_circuit_output(p, base_pp(23.5, 5e-3));
        CHECK_FALSE(out.clipped);
        CHECK(out.vpp <= 2.0 * p.v_sat);
    }
}

TEST_CASE("time-domain waveform", "[harvester][ode]") {
    const auto p = ppa2011_tuned();
    const auto base = base_pp(23.5, 0.210e-3);
    const double dt = default_step(base);
    const double settle = settling_time(p);
    const double duration = settle + 2.0 / 23.5;

    SECTION("zero base motion stays at rest") {
        const auto w = simulate_waveform(p, VibrationProfile::at_rest(Frequency(23.5)), 0.5, dt);
        CHECK(w.max_abs() == 0.0);
    }
    SECTION("post-settling Vpp matches the closed form") {
        const auto w = simulate_waveform(p, base, duration, dt);
        const auto from = static_cast<std::size_t>(settle / dt);
        CHECK_THAT(w.peak_to_peak(from), WithinRel(open_circuit_vpp(p, base), 0.01));
        CHECK(w.max_abs() <= p.v_rating);
    }
    SECTION("halving the step changes Vpp by less than 0.1%") {
        const auto w1 = simulate_waveform(p, base, duration, dt);
        const auto w2 = simulate_waveform(p, base, duration, dt / 2);
        const double v1 = w1.peak_to_peak(static_cast<std::size_t>(settle / dt));
        const double v2 = w2.peak_to_peak(static_cast<std::size_t>(settle / (dt / 2)));
        CHECK_THAT(v2, WithinRel(v1, 1e-3));
    }
    SECTION("coarse step is a configuration error") {
        CHECK_THROWS_AS(simulate_waveform(p, base, 1.0, 1.0 / (49.0 * 23.5)), ConfigError);
        CHECK_NOTHROW(simulate_waveform(p, base, 0.01, 1.0 / (50.0 * 23.5)));
    }
}

TEST_CASE("calibration", "[harvester][calibration]") {
    const auto mech = ppa2011_tuned();

    SECTION("single observation, linear model, exact") {
        HarvesterParams p0 = mech;
        p0.v_sat = kUnlimited;
        const std::array obs{Observation{base_pp(23.5, 0.210e-3), 22.66}};
        const auto r = calibrate(p0, obs, {.fit_v_sat = false});
        const double z = steady_state_tip_displacement(p0, obs[0].base).value;
        CHECK_THAT(r.params.gain_v_per_m, WithinRel(11.33 / z, 1e-12));
        CHECK(r.max_relative_residual < 1e-12);
    }
    SECTION("both reference points against the two-point root-find oracle") {
        const std::array obs{Observation{base_pp(23.5, 0.210e-3), 22.66},
                             Observation{base_pp(23.5, 0.405e-3), 26.56}};
        const auto r = calibrate(mech, obs);
        const double z1 = steady_state_tip_displacement(mech, obs[0].base).value;
        const double z2 = steady_state_tip_displacement(mech, obs[1].base).value;
        const auto fit = oracles::two_point_tanh_fit(z1, 11.33, z2, 13.28);
        CHECK_THAT(r.params.gain_v_per_m, WithinRel(fit.gain, 1e-9));
        CHECK_THAT(r.params.v_sat, WithinRel(fit.v_sat, 1e-9));
        CHECK(r.max_relative_residual < 0.02);
        // Frozen fixture used by ppa2011_tuned()
        CHECK_THAT(r.params.gain_v_per_m, WithinRel(15623.296619654928, 1e-9));
        CHECK_THAT(r.params.v_sat, WithinRel(13.529578160784826, 1e-9));
    }
    SECTION("round trip from known parameters") {
        HarvesterParams truth = mech;
        truth.gain_v_per_m = 9000.0;
        truth.v_sat = 20.0;
        std::vector<Observation> obs;
        for (double d : {0.1e-3, 0.2e-3, 0.35e-3, 0.5e-3})
            obs.push_back({base_pp(23.5, d), open_circuit_vpp(truth, base_pp(23.5, d))});
        const auto r = calibrate(mech, obs);
        CHECK_THAT(r.params.gain_v_per_m, WithinRel(9000.0, 1e-3));
        CHECK_THAT(r.params.v_sat, WithinRel(20.0, 1e-3));
    }
    SECTION("deterministic") {
        const std::array obs{Observation{base_pp(23.5, 0.210e-3), 22.66},
                             Observation{base_pp(23.5, 0.405e-3), 26.56}};
        const auto a = calibrate(mech, obs);
        const auto b = calibrate(mech, obs);
        CHECK(a.params.gain_v_per_m == b.params.gain_v_per_m);
        CHECK(a.params.v_sat == b.params.v_sat);
    }
    SECTION("too few observations") {
        const std::array obs{Observation{base_pp(23.5, 0.210e-3), 22.66}};
        CHECK_THROWS_AS(calibrate(mech, obs), ConfigError);
    }
    SECTION("iteration budget exhausted") {
        const std::array obs{Observation{base_pp(23.5, 0.210e-3), 22.66},
                             Observation{base_pp(23.5, 0.405e-3), 26.56}};
        try {
            (void)calibrate(mech, obs, {.max_iterations = 1});
            FAIL("expected CalibrationError");
        } catch (const CalibrationError& e) {
            CHECK(e.best_residual() > 0.0);
        }
    }
}

TEST_CASE("ODE steady state matches the closed form over the (r, zeta) grid", "[harvester][ode]") {
    for (double zeta : {0.02, 0.05, 0.1}) {
        const auto p = linear_unit_gain(23.5, zeta);
        for (double r : {0.5, 0.9, 1.0, 1.1, 2.0}) {
            const auto base = base_pp(23.5 * r, 0.2e-3);
            const double dt = default_step(base);
            const double settle = settling_time(p);
            const auto w = simulate_tip_motion(p, base, settle + 3.0 / base.frequency().hertz(), dt);
            const double ode_amp = 0.5 * w.peak_to_peak(static_cast<std::size_t>(settle / dt));
            const double closed = steady_state_tip_displacement(p, base).value;
            INFO("zeta=" << zeta << " r=" << r);
            CHECK_THAT(ode_amp, WithinRel(closed, 0.01));
        }
    }
}
