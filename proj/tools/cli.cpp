#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "piezoharvest/errors.hpp"
#include "piezoharvest/format.hpp"
#include "piezoharvest/kinematics.hpp"
#include "piezoharvest/scenario.hpp"
#include "piezoharvest/scenario_io.hpp"
#include "piezoharvest/sweep.hpp"

namespace piezoharvest::cli {

namespace {

using kinematics::Convention;
using piezoharvest::fmt::significant;

/// Malformed command-line input; maps to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_number(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw UsageError("malformed number for " + std::string(what) + ": '" + std::string(text) + "'");
    return v;
}

/// Strips a case-sensitive unit suffix if present.
bool strip_suffix(std::string_view& text, std::string_view suffix) {
    if (text.size() > suffix.size() && text.substr(text.size() - suffix.size()) == suffix) {
        text.remove_suffix(suffix.size());
        return true;
    }
    return false;
}

Convention parse_convention(const std::string& text) {
    if (text == "pp") return Convention::peak_to_peak;
    if (text == "amp") return Convention::amplitude;
    throw UsageError("convention must be 'pp' or 'amp', got '" + text + "'");
}

std::string minutes(const std::optional<double>& seconds) {
    if (!seconds) return "not reached";
    return significant(*seconds / 60.0) + " min";
}

// ---------------------------------------------------------------------------

struct ScenarioSource {
    std::string builtin;
    std::string path;

    void add_to(CLI::App* app) {
        auto* b = app->add_option("--builtin", builtin, "Built-in scenario (A or B)");
        auto* s = app->add_option("--scenario", path, "Scenario JSON file");
        b->excludes(s);
    }

    Scenario load() const {
        if (!builtin.empty()) {
            const auto id = parse_builtin_id(builtin);
            if (!id) throw UsageError("unknown built-in scenario '" + builtin + "' (expected A or B)");
            return builtin_scenario(*id);
        }
        if (path.empty()) throw UsageError("one of --builtin or --scenario is required");
        return io::load_scenario(path);
    }
};

Scenario apply_model_override(Scenario s, const std::string& model) {
    if (model.empty()) return s;
    const auto* cc = std::get_if<power_stage::ConstantCurrent>(&s.power_stage.charging);
    if (model == "constant_current") {
        if (!cc) throw UsageError("scenario has no constant-current law to fall back to");
        return s;
    }
    if (model == "constant_power") {
        if (cc) {
            s.power_stage.charging =
                power_stage::ConstantPower{s.power_stage.v_out_setpoint * cc->i_cc, 1.0, 0.3};
        }
        return s;
    }
    throw UsageError("--model must be constant_current or constant_power");
}

void print_summary(std::ostream& out, const Scenario& s, const ChargeSummary& sum) {
    out << "scenario: " << (s.name.empty() ? "(unnamed)" : s.name) << '\n'
        << "model: " << power_stage::describe(s.power_stage.charging) << '\n'
        << "input_vpp: " << significant(sum.input_vpp) << " V pp" << (sum.input_clipped ? " (clipped)" : "")
        << '\n'
        << "t_half_capacity: " << minutes(sum.t_half_capacity) << '\n'
        << "t_full: " << minutes(sum.t_full) << '\n'
        << "final_v: " << significant(sum.final_v) << " V\n"
        << "avg_current: " << significant(sum.avg_current * 1e6) << " uA\n"
        << "output_power: " << significant(sum.output_power * 1e3) << " mW\n";
}

int cmd_simulate(const ScenarioSource& src, const std::string& out_csv, const std::string& model,
                 std::ostream& out) {
    const Scenario s = apply_model_override(src.load(), model);
    const ChargeCurve curve = run(s);
    if (!out_csv.empty()) io::write_file_atomic(out_csv, io::curve_csv(curve));
    print_summary(out, s, curve.summary);
    return kOk;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::string_view rest = list;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        auto item = rest.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        values.push_back(parse_number(item, "--values"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return values;
}

int cmd_sweep(const ScenarioSource& src, const std::string& param, const std::string& values_text,
              const std::string& out_csv, std::ostream& out) {
    const Scenario s = src.load();
    const auto values = parse_values(values_text);
    const auto rows = sweep(s, param, values);

    std::ostringstream csv;
    csv << "value,t_half_s,t_full_s,final_v_V,avg_current_A,output_power_W\n";
    auto opt = [](const std::optional<double>& v) { return v ? piezoharvest::fmt::shortest(*v) : std::string(); };
    for (const auto& r : rows) {
        csv << piezoharvest::fmt::shortest(r.value) << ',' << opt(r.summary.t_half_capacity) << ','
            << opt(r.summary.t_full) << ',' << piezoharvest::fmt::shortest(r.summary.final_v) << ','
            << piezoharvest::fmt::shortest(r.summary.avg_current) << ','
            << piezoharvest::fmt::shortest(r.summary.output_power) << '\n';
    }
    if (!out_csv.empty()) io::write_file_atomic(out_csv, csv.str());

    out << "parameter: " << param << '\n';
    for (const auto& r : rows) {
        out << significant(r.value) << ": t_half_capacity " << minutes(r.summary.t_half_capacity) << ", t_full "
            << minutes(r.summary.t_full) << ", avg_current " << significant(r.summary.avg_current * 1e6)
            << " uA\n";
    }
    return kOk;
}

int cmd_comply(const std::string& freq_text, const std::string& disp_text, const std::string& conv_text,
               std::ostream& out) {
    const double hz = parse_number(freq_text, "--freq");
    std::string_view disp = disp_text;
    strip_suffix(disp, "mm");
    const double mm = parse_number(disp, "--disp");
    if (hz <= 0.0) throw UsageError("--freq must be positive");
    if (mm < 0.0) throw UsageError("--disp must be non-negative");

    const auto verdict =
        kinematics::mil_std_check(kinematics::Frequency(hz), {mm * 1e-3, parse_convention(conv_text)});
    out << "frequency: " << significant(hz) << " Hz\n"
        << "single_amplitude: " << significant(verdict.single_amplitude * 1e3) << " mm amp\n"
        << "band: " << kinematics::to_string(verdict.band) << '\n';
    if (verdict.band == kinematics::Band::out_of_range) {
        out << "verdict: out of range\n";
        return kOutOfRange;
    }
    out << "limit: " << significant(verdict.limit_single_amplitude * 1e3) << " mm amp\n"
        << "verdict: " << (verdict.compliant ? "compliant" : "non-compliant") << '\n';
    return verdict.compliant ? kOk : kNonCompliant;
}

int cmd_convert(const std::string& accel_text, const std::string& disp_text, const std::string& freq_text,
                const std::string& to, const std::string& conv_text, std::ostream& out) {
    if (accel_text.empty() == disp_text.empty())
        throw UsageError("exactly one of --accel or --disp is required");
    const Convention conv = parse_convention(conv_text);
    const double hz = parse_number(freq_text, "--freq");
    if (hz <= 0.0) throw UsageError("--freq must be positive");
    const kinematics::Frequency f(hz);

    kinematics::Acceleration a;
    if (!accel_text.empty()) {
        std::string_view t = accel_text;
        double scale = 0.0;
        if (strip_suffix(t, "ms2") || strip_suffix(t, "m/s2")) {
            scale = 1.0;
        } else if (strip_suffix(t, "g")) {
            scale = kinematics::kStandardGravity;
        } else {
            throw UsageError("--accel needs a unit suffix: g or ms2 (e.g. 0.52g)");
        }
        const double v = parse_number(t, "--accel");
        if (v < 0.0) throw UsageError("--accel must be non-negative");
        a = {v * scale, conv};
    } else {
        std::string_view t = disp_text;
        strip_suffix(t, "mm");
        const double v = parse_number(t, "--disp");
        if (v < 0.0) throw UsageError("--disp must be non-negative");
        a = kinematics::acceleration_from_displacement({v * 1e-3, conv}, f);
    }

    const std::string suffix = std::string(" ") + std::string(kinematics::to_string(conv));
    if (to == "disp") {
        out << significant(kinematics::displacement_from_acceleration(a, f).value * 1e3) << " mm" << suffix << '\n';
    } else if (to == "accel") {
        out << significant(a.value) << " m/s^2" << suffix << " (" << significant(kinematics::ms2_to_g(a.value))
            << " g" << suffix << ")\n";
    } else if (to == "vel") {
        out << significant(kinematics::velocity_from_acceleration(a, f).value) << " m/s" << suffix << '\n';
    } else {
        throw UsageError("--to must be accel, disp or vel");
    }
    return kOk;
}

int cmd_calibrate(const std::string& obs_path, const std::string& init_path, const std::string& out_path,
                  bool fixed_v_sat, std::ostream& out, std::ostream& err) {
    const std::string text = io::read_text_file(obs_path);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw UsageError("observation file '" + obs_path + "' is empty");
    auto set = io::parse_observations(text);
    if (set.observations.empty()) throw UsageError("observation file has no observations");
    if (!init_path.empty()) set.initial = io::parse_harvester(io::read_text_file(init_path));

    harvester::CalibrationOptions opts;
    opts.fit_v_sat = fixed_v_sat ? false : set.fit_v_sat.value_or(set.observations.size() >= 2);

    harvester::CalibrationResult result;
    try {
        result = harvester::calibrate(set.initial, set.observations, opts);
    } catch (const CalibrationError& e) {
        err << "error: " << e.what() << " (best residual " << significant(e.best_residual() * 100.0) << " %)\n";
        return kFailure;
    }

    if (!out_path.empty()) io::write_file_atomic(out_path, io::dump_harvester(result.params));
    out << "gain_v_per_m: " << significant(result.params.gain_v_per_m, 8) << " V/m\n"
        << "v_sat: " << significant(result.params.v_sat, 8) << " V\n";
    for (std::size_t i = 0; i < set.observations.size(); ++i) {
        const auto& o = set.observations[i];
        out << "observation " << i << ": " << significant(o.base.frequency().hertz()) << " Hz, "
            << significant(o.base.displacement_pp() * 1e3) << " mm pp, measured " << significant(o.measured_vpp)
            << " V pp, residual " << significant(result.relative_residuals[i] * 100.0) << " %\n";
    }
    out << "max_residual: " << significant(result.max_relative_residual * 100.0) << " %\n";
    return kOk;
}

int cmd_scenarios(const std::string& dump, bool paths, std::ostream& out) {
    if (paths) {
        for (const auto& p : io::parameter_paths()) out << p << '\n';
        return kOk;
    }
    if (!dump.empty()) {
        const auto id = parse_builtin_id(dump);
        if (!id) throw UsageError("unknown built-in scenario '" + dump + "'");
        out << io::dump_scenario(builtin_scenario(*id));
        return kOk;
    }
    for (const auto id : {BuiltinId::A, BuiltinId::B}) {
        const auto s = builtin_scenario(id);
        const auto ref = builtin_reference(id);
        const auto& cc = std::get<power_stage::ConstantCurrent>(s.power_stage.charging);
        out << to_string(id) << ": " << significant(s.profile.frequency().hertz()) << " Hz, "
            << significant(s.profile.displacement_pp() * 1e3) << " mm pp base motion ("
            << significant(ref.measured_accel_pp_g) << " g pp measured), i_cc " << significant(cc.i_cc * 1e6)
            << " uA, target " << significant(ref.target_piezo_vpp) << " V pp\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vibration energy harvesting chain simulator", "piezoharvest"};
    app.require_subcommand(1);

    ScenarioSource sim_src;
    std::string sim_out, sim_model;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario and write its charge curve");
    sim_src.add_to(simulate);
    simulate->add_option("--out", sim_out, "CSV output path");
    simulate->add_option("--model", sim_model, "Charging law override: constant_current | constant_power");

    ScenarioSource sw_src;
    std::string sw_param, sw_values, sw_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario once per parameter value");
    sw_src.add_to(sweep_cmd);
    sweep_cmd->add_option("--param", sw_param, "Dotted parameter path, e.g. profile.frequency_hz")->required();
    sweep_cmd->add_option("--values", sw_values, "Comma-separated values")->required();
    sweep_cmd->add_option("--out", sw_out, "CSV output path");

    std::string c_freq, c_disp, c_conv = "pp";
    auto* comply = app.add_subcommand("comply", "Check a vibratory displacement against the shipboard limits");
    comply->add_option("--freq", c_freq, "Frequency, Hz")->required();
    comply->add_option("--disp", c_disp, "Displacement, mm")->required();
    comply->add_option("--convention", c_conv, "pp | amp");

    std::string v_accel, v_disp, v_freq, v_to, v_conv = "pp";
    auto* convert = app.add_subcommand("convert", "Harmonic motion conversions");
    convert->add_option("--accel", v_accel, "Acceleration with unit suffix (0.52g, 5.1ms2)");
    convert->add_option("--disp", v_disp, "Displacement, mm");
    convert->add_option("--freq", v_freq, "Frequency, Hz")->required();
    convert->add_option("--to", v_to, "accel | disp | vel")->required();
    convert->add_option("--convention", v_conv, "pp | amp");

    std::string k_obs, k_init, k_out;
    bool k_fixed = false;
    auto* calibrate = app.add_subcommand("calibrate", "Fit harvester gain and saturation to measured Vpp");
    calibrate->add_option("--observations", k_obs, "Observation JSON file")->required();
    calibrate->add_option("--init", k_init, "Initial harvester parameters JSON");
    calibrate->add_option("--out", k_out, "Fitted harvester parameters JSON");
    calibrate->add_flag("--fixed-v-sat", k_fixed, "Fit the gain only");

    std::string s_dump;
    bool s_paths = false;
    auto* scenarios = app.add_subcommand("scenarios", "List built-in scenarios");
    scenarios->add_option("--dump", s_dump, "Print a built-in scenario as JSON");
    scenarios->add_flag("--paths", s_paths, "List parameter paths accepted by sweep");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim_src, sim_out, sim_model, out);
        if (sweep_cmd->parsed()) return cmd_sweep(sw_src, sw_param, sw_values, sw_out, out);
        if (comply->parsed()) return cmd_comply(c_freq, c_disp, c_conv, out);
        if (convert->parsed()) return cmd_convert(v_accel, v_disp, v_freq, v_to, v_conv, out);
        if (calibrate->parsed()) return cmd_calibrate(k_obs, k_init, k_out, k_fixed, out, err);
        if (scenarios->parsed()) return cmd_scenarios(s_dump, s_paths, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace piezoharvest::cli
