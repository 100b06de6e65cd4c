#include <catch_amalgamated.hpp>

#include "piezoharvest/errors.hpp"
#include "piezoharvest/scenario.hpp"

using namespace piezoharvest;
using kinematics::Convention;
using kinematics::Frequency;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("built-in scenarios", "[scenario]") {
    const auto a = builtin_scenario(BuiltinId::A);
    const auto b = builtin_scenario(BuiltinId::B);
    CHECK(a.profile.frequency().hertz() == 23.5);
    CHECK(b.profile.displacement_pp() == 0.405e-3);
    CHECK(a.profile.displacement_pp() == 0.210e-3);
    CHECK_THAT(std::get<power_stage::ConstantCurrent>(a.power_stage.charging).i_cc * 1e6, WithinAbs(168.2, 0.05));
    CHECK_THAT(std::get<power_stage::ConstantCurrent>(b.power_stage.charging).i_cc * 1e6, WithinAbs(211.8, 0.05));
    for (const auto& s : {a, b}) {
        CHECK(kinematics::mil_std_check(s.profile.frequency(), s.profile.displacement()).compliant);
        CHECK(std::get<SupercapacitorLoad>(s.load).cap.capacitance == 1.2);
        CHECK(std::get<SupercapacitorLoad>(s.load).cap.v_rating == 2.7);
        CHECK(s.power_stage.v_out_setpoint == 1.8);
        CHECK(s.power_stage.v_out_lo == 1.71);
        CHECK(s.power_stage.v_out_hi == 1.89);
        CHECK(s.power_stage.v_shunt_clamp == 20.0);
        CHECK(s.violations().empty());
    }
    CHECK(parse_builtin_id("B") == BuiltinId::B);
    CHECK_FALSE(parse_builtin_id("C"));
}

TEST_CASE("run scenario B", "[scenario]") {
    const auto curve = run(builtin_scenario(BuiltinId::B));
    const double i = 1.8 / 8.5e3;

    REQUIRE(curve.summary.t_half_capacity);
    CHECK_THAT(*curve.summary.t_half_capacity, WithinRel(1.2 * 0.95 / i, 1e-3));
    CHECK_THAT(*curve.summary.t_half_capacity, WithinRel(5382.0, 1e-3));
    REQUIRE(curve.summary.t_full);
    CHECK_THAT(*curve.summary.t_full, WithinRel(1.2 * 1.89 / i, 1e-9));
    CHECK(curve.summary.final_v == 1.89);
    CHECK_THAT(curve.summary.avg_current, WithinRel(i, 1e-9));
    CHECK_THAT(curve.summary.output_power * 1e3, WithinAbs(0.381, 5e-4));
    CHECK_THAT(curve.summary.harvest_scale, WithinRel(1.0, 1e-9));
    CHECK_FALSE(curve.summary.input_clipped);

    SECTION("rows every record interval, time increasing, voltage nondecreasing") {
        REQUIRE(curve.rows.size() == 1801);
        for (std::size_t k = 1; k < curve.rows.size(); ++k) {
            CHECK(curve.rows[k].t > curve.rows[k - 1].t);
            CHECK(curve.rows[k].v_cap >= curve.rows[k - 1].v_cap);
        }
        CHECK(curve.rows[1].t == 10.0);
        CHECK(curve.rows.back().i_out == 0.0);
    }
}

TEST_CASE("run edge cases", "[scenario]") {
    SECTION("zero excitation leaves the capacitor where it started") {
        auto s = builtin_scenario(BuiltinId::A);
        s.profile = VibrationProfile::at_rest(Frequency(23.5));
        std::get<SupercapacitorLoad>(s.load).cap.v_now = 0.4;
        const auto c = run(s);
        for (const auto& r : c.rows) {
            CHECK(r.v_cap == 0.4);
            CHECK(r.i_out == 0.0);
        }
        CHECK_FALSE(c.summary.t_half_capacity);
        CHECK_FALSE(c.summary.t_full);
        CHECK(c.summary.avg_current == 0.0);
    }
    SECTION("scenario A stops charging at the band top") {
        const auto c = run(builtin_scenario(BuiltinId::A));
        CHECK(c.summary.final_v == 1.89);
        CHECK(c.summary.final_v >= 1.71);
        REQUIRE(c.summary.t_full);
        CHECK_THAT(*c.summary.t_full / 60.0, WithinAbs(224.7, 0.05));
    }
    SECTION("short runs flag unreached thresholds") {
        auto s = builtin_scenario(BuiltinId::B);
        s.sim.duration = 600.0;
        const auto c = run(s);
        CHECK_FALSE(c.summary.t_half_capacity);
        CHECK_FALSE(c.summary.t_full);
    }
    SECTION("resistor load reproduces the stable current on every row") {
        auto s = builtin_scenario(BuiltinId::B);
        s.load = ResistorLoad{8.5e3};
        const auto c = run(s);
        for (const auto& r : c.rows) {
            CHECK(r.i_out == power_stage::stable_output_current(1.8, 8.5e3));
            CHECK(r.p_out == power_stage::output_power(1.8, 8.5e3));
        }
    }
    SECTION("duty-cycled consumer slows charging") {
        auto s = builtin_scenario(BuiltinId::B);
        s.load = DutyCycledLoad{.active_current = 5e-3, .idle_current = 1e-6, .period = 60.0, .duty = 0.01,
                                .cap = storage::SupercapState{}};
        const auto c = run(s);
        const auto ref = run(builtin_scenario(BuiltinId::B));
        REQUIRE(c.summary.t_half_capacity);
        CHECK(*c.summary.t_half_capacity > *ref.summary.t_half_capacity);
    }
    SECTION("invalid scenario lists every violation") {
        auto s = builtin_scenario(BuiltinId::A);
        s.sim.dt = -1.0;
        s.harvester.zeta = 2.0;
        s.power_stage.charging = power_stage::ConstantCurrent{0.0};
        try {
            (void)run(s);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.violations().size() >= 3);
        }
    }
}

TEST_CASE("step-size robustness", "[scenario]") {
    for (auto id : {BuiltinId::A, BuiltinId::B}) {
        auto s = builtin_scenario(id);
        s.power_stage.charging = power_stage::ConstantPower{0.381e-3, 1.0, 0.3};
        const auto coarse = run(s);
        s.sim.dt = 0.5;
        const auto fine = run(s);
        CHECK_THAT(*fine.summary.t_half_capacity, WithinRel(*coarse.summary.t_half_capacity, 2e-3));
    }
}

TEST_CASE("compare curves", "[scenario]") {
    const auto c = run(builtin_scenario(BuiltinId::B));

    SECTION("self comparison") {
        const auto m = compare(c, c);
        CHECK(m.rmse_v == 0.0);
        CHECK(m.dt_half == 0.0);
        CHECK(m.dt_full == 0.0);
    }
    SECTION("time-shifted copy") {
        ChargeCurve shifted = c;
        for (auto& r : shifted.rows) r.t += 60.0;
        const auto m = compare(shifted, c);
        CHECK_THAT(*m.dt_half, WithinAbs(60.0, 1e-9));
        CHECK_THAT(*m.dt_full, WithinAbs(60.0, 1e-9));
        CHECK(m.rmse_v > 0.0);
    }
    SECTION("constant current lags constant power") {
        auto s = builtin_scenario(BuiltinId::B);
        s.power_stage.charging = power_stage::ConstantPower{0.381e-3, 1.0, 0.3};
        const auto cp = run(s);
        const auto m = compare(c, cp);
        REQUIRE(m.dt_half);
        CHECK(*m.dt_half > 0.0);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(compare(ChargeCurve{}, c), ComparisonError);
        ChargeCurve late = c;
        for (auto& r : late.rows) r.t += 1e6;
        CHECK_THROWS_AS(compare(late, c), ComparisonError);
    }
}

TEST_CASE("determinism", "[scenario]") {
    const auto a = run(builtin_scenario(BuiltinId::A));
    const auto b = run(builtin_scenario(BuiltinId::A));
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].t == b.rows[k].t);
        CHECK(a.rows[k].v_cap == b.rows[k].v_cap);
        CHECK(a.rows[k].i_out == b.rows[k].i_out);
        CHECK(a.rows[k].p_out == b.rows[k].p_out);
    }
}
