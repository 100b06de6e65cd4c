#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "piezoharvest/harvester.hpp"
#include "piezoharvest/scenario.hpp"

namespace piezoharvest::io {

/// Scenario documents are JSON objects with the sections `profile`,
/// `harvester`, `power_stage` (with a nested `charging`), `load` and `sim`.
/// Every numeric key names its unit (`frequency_hz`, `displacement_pp_mm`,
/// `acceleration_pp_g`, `i_cc_ua`, `r_kohm`, ...). At most one key per
/// quantity; unknown keys are rejected. Omitted quantities take the
/// defaults of Scenario. Throws ValidationError carrying every problem.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical SI form; parse_scenario(dump_scenario(s)) reproduces s.
std::string dump_scenario(const Scenario& s);

/// Copy of `s` with the numeric parameter at `path` (e.g.
/// "profile.frequency_hz", "power_stage.charging.i_cc_ua") set to `value`.
/// Throws ConfigError for an unknown path.
Scenario with_parameter(const Scenario& s, std::string_view path, double value);

/// All dotted parameter paths with_parameter accepts.
std::vector<std::string> parameter_paths();

harvester::HarvesterParams parse_harvester(std::string_view text);
std::string dump_harvester(const harvester::HarvesterParams& p);

/// Calibration input: {"harvester": {...}, "fit_v_sat": bool,
/// "observations": [{"frequency_hz", "displacement_pp_mm" | ..., "measured_vpp_v"}]}.
struct ObservationSet {
    harvester::HarvesterParams initial = harvester::ppa2011_tuned();
    std::optional<bool> fit_v_sat;
    std::vector<harvester::Observation> observations;
};

ObservationSet parse_observations(std::string_view text);

// ---------------------------------------------------------------------------
// Charge curve CSV: header `t_s,v_cap_V,i_out_A,p_out_W`
// ---------------------------------------------------------------------------

inline constexpr std::string_view kCurveHeader = "t_s,v_cap_V,i_out_A,p_out_W";

void write_curve_csv(std::ostream& out, const ChargeCurve& curve);
std::string curve_csv(const ChargeCurve& curve);
/// Rows only; the summary is left empty.
ChargeCurve read_curve_csv(std::istream& in);

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place, so a
/// failure never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace piezoharvest::io
