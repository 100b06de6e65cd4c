#include <catch_amalgamated.hpp>

#include <vector>

#include "piezoharvest/errors.hpp"
#include "piezoharvest/sweep.hpp"

using namespace piezoharvest;
using Catch::Matchers::WithinRel;

TEST_CASE("sweep over charging current reproduces both full-charge times", "[sweep]") {
    const std::vector<double> values{168.2, 211.8};
    const auto rows = sweep(builtin_scenario(BuiltinId::A), "power_stage.charging.i_cc_ua", values);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].value == 168.2);
    CHECK_THAT(*rows[0].summary.t_full, WithinRel(1.2 * 1.89 / 168.2e-6, 1e-9));
    CHECK_THAT(*rows[1].summary.t_full, WithinRel(1.2 * 1.89 / 211.8e-6, 1e-9));
}

TEST_CASE("empty sweep", "[sweep]") {
    CHECK(sweep(builtin_scenario(BuiltinId::A), "profile.frequency_hz", std::vector<double>{}).empty());
}

TEST_CASE("unknown parameter path", "[sweep]") {
    const std::vector<double> values{1.0};
    CHECK_THROWS_AS(sweep(builtin_scenario(BuiltinId::A), "profile.nope", values), ConfigError);
}

TEST_CASE("frequency sweep is fastest at the loaded resonance", "[sweep]") {
    std::vector<double> freqs;
    for (double f = 4.0; f <= 33.0 + 1e-9; f += 0.5) freqs.push_back(f);
    const auto rows = sweep(builtin_scenario(BuiltinId::B), "profile.frequency_hz", freqs);

    double best_f = 0.0;
    double best_t = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (r.summary.t_half_capacity && *r.summary.t_half_capacity < best_t) {
            best_t = *r.summary.t_half_capacity;
            best_f = r.value;
        }
    }
    CHECK(best_f == 23.5);
    // Far from resonance the harvester cannot reach the regulator setpoint.
    CHECK_FALSE(rows.front().summary.t_half_capacity);
}

TEST_CASE("parallel and serial sweeps agree", "[sweep]") {
    const std::vector<double> values{0.1, 0.2, 0.3, 0.405, 0.5};
    const auto base = builtin_scenario(BuiltinId::B);
    const auto serial = sweep(base, "profile.displacement_pp_mm", values, 1);
    const auto parallel = sweep(base, "profile.displacement_pp_mm", values, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
        CHECK(serial[k].value == parallel[k].value);
        CHECK(serial[k].summary.t_half_capacity == parallel[k].summary.t_half_capacity);
        CHECK(serial[k].summary.avg_current == parallel[k].summary.avg_current);
    }
}
