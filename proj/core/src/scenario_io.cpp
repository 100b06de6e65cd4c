#include "piezoharvest/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "piezoharvest/errors.hpp"
#include "piezoharvest/format.hpp"

namespace piezoharvest::io {

namespace {

using json = nlohmann::json;
using kinematics::kStandardGravity;

// A quantity may be spelled with any one of several unit-suffixed keys.
// `variant` separates mutually exclusive spellings of different physical
// kinds (displacement vs acceleration, modal mass vs tuned resonance).
struct KeyUnit {
    std::string_view key;
    double scale;
    int variant = 0;
};

struct Quantity {
    std::string_view name;
    std::vector<KeyUnit> keys;
};

using Schema = std::vector<Quantity>;

const Schema& profile_schema() {
    static const Schema s = {
        {"frequency", {{"frequency_hz", 1.0}}},
        {"magnitude",
         {{"displacement_pp_m", 1.0, 0},
          {"displacement_pp_mm", 1e-3, 0},
          {"displacement_amp_m", 2.0, 0},
          {"displacement_amp_mm", 2e-3, 0},
          {"acceleration_pp_ms2", 1.0, 1},
          {"acceleration_pp_g", kStandardGravity, 1},
          {"acceleration_amp_ms2", 2.0, 1},
          {"acceleration_amp_g", 2.0 * kStandardGravity, 1}}},
    };
    return s;
}

const Schema& harvester_schema() {
    static const Schema s = {
        {"f_unloaded", {{"f_unloaded_hz", 1.0}}},
        {"m_eff", {{"m_eff_kg", 1.0, 0}, {"m_eff_g", 1e-3, 0}, {"tuned_resonance_hz", 1.0, 1}}},
        {"m_tip", {{"m_tip_kg", 1.0}, {"m_tip_g", 1e-3}}},
        {"zeta", {{"zeta", 1.0}}},
        {"gain", {{"gain_v_per_m", 1.0}, {"gain_v_per_mm", 1e3}}},
        {"v_sat", {{"v_sat_v", 1.0}}},
        {"c_piezo", {{"c_piezo_f", 1.0}, {"c_piezo_nf", 1e-9}}},
        {"v_rating", {{"v_rating_v", 1.0}}},
    };
    return s;
}

const Schema& power_stage_schema() {
    static const Schema s = {
        {"v_shunt_clamp", {{"v_shunt_clamp_v", 1.0}}},
        {"v_out_setpoint", {{"v_out_setpoint_v", 1.0}}},
        {"v_out_lo", {{"v_out_lo_v", 1.0}}},
        {"v_out_hi", {{"v_out_hi_v", 1.0}}},
        {"diode_drop", {{"diode_drop_v", 1.0}}},
        {"nominal_input_vpp", {{"nominal_input_vpp", 1.0}}},
    };
    return s;
}

const Quantity kICc{"i_cc", {{"i_cc_a", 1.0}, {"i_cc_ma", 1e-3}, {"i_cc_ua", 1e-6}}};
const Quantity kPIn{"p_in", {{"p_in_w", 1.0}, {"p_in_mw", 1e-3}, {"p_in_uw", 1e-6}}};
const Quantity kEfficiency{"efficiency", {{"efficiency", 1.0}}};
const Quantity kVFloor{"v_floor", {{"v_floor_v", 1.0}}};

const Schema& charging_schema() {
    static const Schema s = {kICc, kPIn, kEfficiency, kVFloor};
    return s;
}

const Quantity kCapacitance{"capacitance", {{"capacitance_f", 1.0}, {"capacitance_mf", 1e-3}}};
const Quantity kCapRating{"v_rating", {{"v_rating_v", 1.0}}};
const Quantity kCapInitial{"v_initial", {{"v_initial_v", 1.0}}};
const Quantity kLeakage{"leakage", {{"leakage_a", 1.0}, {"leakage_ua", 1e-6}}};
const Quantity kEsr{"esr", {{"esr_ohm", 1.0}}};
const Quantity kResistance{"r", {{"r_ohm", 1.0}, {"r_kohm", 1e3}}};
const Quantity kActive{"active_current", {{"active_current_a", 1.0}, {"active_current_ma", 1e-3}, {"active_current_ua", 1e-6}}};
const Quantity kIdle{"idle_current", {{"idle_current_a", 1.0}, {"idle_current_ma", 1e-3}, {"idle_current_ua", 1e-6}}};
const Quantity kPeriod{"period", {{"period_s", 1.0}}};
const Quantity kDuty{"duty", {{"duty", 1.0}}};

const Schema& load_schema() {
    static const Schema s = {kCapacitance, kCapRating, kCapInitial, kLeakage, kEsr,
                             kResistance,  kActive,    kIdle,       kPeriod,  kDuty};
    return s;
}

const Schema& sim_schema() {
    static const Schema s = {
        {"duration", {{"duration_s", 1.0}, {"duration_min", 60.0}, {"duration_h", 3600.0}}},
        {"dt", {{"dt_s", 1.0}}},
        {"record_interval", {{"record_interval_s", 1.0}}},
        {"v_full", {{"v_full_v", 1.0}}},
    };
    return s;
}

const Schema* schema_for_section(std::string_view path) {
    if (path == "profile") return &profile_schema();
    if (path == "harvester") return &harvester_schema();
    if (path == "power_stage") return &power_stage_schema();
    if (path == "power_stage.charging") return &charging_schema();
    if (path == "load") return &load_schema();
    if (path == "sim") return &sim_schema();
    return nullptr;
}

struct Found {
    double value;
    int variant;
};

/// Reads one JSON object section, recording every problem instead of
/// stopping at the first.
class SectionReader {
public:
    SectionReader(const json* obj, std::string path, std::vector<std::string>& errors)
        : obj_(obj), path_(std::move(path)), errors_(errors) {
        if (obj_ && !obj_->is_object()) {
            errors_.push_back(path_ + ": expected an object");
            obj_ = nullptr;
        }
    }

    std::optional<Found> quantity(const Quantity& q) {
        if (!obj_) return std::nullopt;
        std::optional<Found> found;
        std::string first_key;
        for (const auto& ku : q.keys) {
            const auto it = obj_->find(std::string(ku.key));
            if (it == obj_->end()) continue;
            used_.insert(std::string(ku.key));
            if (found) {
                errors_.push_back(path_ + ": '" + first_key + "' and '" + std::string(ku.key) +
                                  "' both set " + std::string(q.name));
                continue;
            }
            const auto raw = number(*it, std::string(ku.key));
            if (!raw) continue;
            found = Found{*raw * ku.scale, ku.variant};
            first_key = std::string(ku.key);
        }
        return found;
    }

    std::optional<double> value(const Quantity& q) {
        const auto f = quantity(q);
        return f ? std::optional<double>(f->value) : std::nullopt;
    }

    void assign(const Quantity& q, double& target) {
        if (const auto v = value(q)) target = *v;
    }

    std::optional<std::string> text(std::string_view key) {
        if (!obj_) return std::nullopt;
        const auto it = obj_->find(std::string(key));
        if (it == obj_->end()) return std::nullopt;
        used_.insert(std::string(key));
        if (!it->is_string()) {
            errors_.push_back(path_ + "." + std::string(key) + ": expected a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<bool> boolean(std::string_view key) {
        if (!obj_) return std::nullopt;
        const auto it = obj_->find(std::string(key));
        if (it == obj_->end()) return std::nullopt;
        used_.insert(std::string(key));
        if (!it->is_boolean()) {
            errors_.push_back(path_ + "." + std::string(key) + ": expected true or false");
            return std::nullopt;
        }
        return it->get<bool>();
    }

    const json* child(std::string_view key) {
        if (!obj_) return nullptr;
        const auto it = obj_->find(std::string(key));
        if (it == obj_->end()) return nullptr;
        used_.insert(std::string(key));
        return &*it;
    }

    std::string child_path(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    void finish() {
        if (!obj_) return;
        for (const auto& [key, _] : obj_->items()) {
            if (!used_.count(key)) errors_.push_back(child_path(key) + ": unknown key");
        }
    }

private:
    std::optional<double> number(const json& j, const std::string& key) {
        if (j.is_number()) {
            const double v = j.get<double>();
            if (std::isfinite(v)) return v;
        } else if (j.is_string()) {
            const auto s = j.get<std::string>();
            if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        }
        errors_.push_back(child_path(key) + ": expected a finite number");
        return std::nullopt;
    }

    const json* obj_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> used_;
};

const Quantity& quantity(const Schema& s, std::string_view name) {
    for (const auto& q : s)
        if (q.name == name) return q;
    throw std::logic_error("schema has no quantity " + std::string(name));
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError({std::string("malformed JSON: ") + e.what()});
    }
}

std::optional<VibrationProfile> read_profile(SectionReader& r, std::vector<std::string>& errors,
                                             const std::string& path) {
    const auto& sc = profile_schema();
    const auto f = r.value(quantity(sc, "frequency"));
    const auto m = r.quantity(quantity(sc, "magnitude"));
    if (!f) errors.push_back(path + ": frequency_hz is required");
    if (!m) errors.push_back(path + ": one base displacement or acceleration key is required");
    if (!f || !m) return std::nullopt;
    try {
        const kinematics::Frequency freq(*f);
        if (m->variant == 0)
            return VibrationProfile::from_displacement(freq, {m->value, kinematics::Convention::peak_to_peak});
        return VibrationProfile::from_acceleration(freq, {m->value, kinematics::Convention::peak_to_peak});
    } catch (const DomainError& e) {
        errors.push_back(path + ": " + e.what());
        return std::nullopt;
    }
}

harvester::HarvesterParams read_harvester(SectionReader& r, std::vector<std::string>& errors,
                                          const std::string& path) {
    const auto& sc = harvester_schema();
    harvester::HarvesterParams p = harvester::ppa2011_tuned();
    r.assign(quantity(sc, "f_unloaded"), p.f_unloaded_hz);
    const auto m_eff = r.quantity(quantity(sc, "m_eff"));
    r.assign(quantity(sc, "m_tip"), p.m_tip_kg);
    r.assign(quantity(sc, "zeta"), p.zeta);
    r.assign(quantity(sc, "gain"), p.gain_v_per_m);
    r.assign(quantity(sc, "v_sat"), p.v_sat);
    r.assign(quantity(sc, "c_piezo"), p.c_piezo_f);
    r.assign(quantity(sc, "v_rating"), p.v_rating);
    if (m_eff) {
        if (m_eff->variant == 0) {
            p.m_eff_kg = m_eff->value;
        } else {
            try {
                p.m_eff_kg = harvester::effective_mass_for_resonance(p.f_unloaded_hz, p.m_tip_kg, m_eff->value);
            } catch (const DomainError& e) {
                errors.push_back(path + ".tuned_resonance_hz: " + e.what());
            }
        }
    }
    return p;
}

power_stage::PowerStageParams read_power_stage(SectionReader& r, std::vector<std::string>& errors) {
    const auto& sc = power_stage_schema();
    power_stage::PowerStageParams p;
    r.assign(quantity(sc, "v_shunt_clamp"), p.v_shunt_clamp);
    r.assign(quantity(sc, "v_out_setpoint"), p.v_out_setpoint);
    r.assign(quantity(sc, "v_out_lo"), p.v_out_lo);
    r.assign(quantity(sc, "v_out_hi"), p.v_out_hi);
    r.assign(quantity(sc, "diode_drop"), p.diode_drop);
    r.assign(quantity(sc, "nominal_input_vpp"), p.nominal_input_vpp);

    const std::string cpath = r.child_path("charging");
    SectionReader c(r.child("charging"), cpath, errors);
    const auto model = c.text("model").value_or("constant_current");
    if (model == "constant_current") {
        power_stage::ConstantCurrent cc;
        c.assign(kICc, cc.i_cc);
        p.charging = cc;
    } else if (model == "constant_power") {
        power_stage::ConstantPower cp;
        c.assign(kPIn, cp.p_in);
        c.assign(kEfficiency, cp.efficiency);
        c.assign(kVFloor, cp.v_floor);
        p.charging = cp;
    } else {
        errors.push_back(cpath + ".model: unknown charging model '" + model + "'");
    }
    c.finish();
    return p;
}

storage::SupercapState read_cap(SectionReader& r) {
    storage::SupercapState s;
    r.assign(kCapacitance, s.capacitance);
    r.assign(kCapRating, s.v_rating);
    r.assign(kCapInitial, s.v_now);
    r.assign(kLeakage, s.leakage_current);
    r.assign(kEsr, s.esr);
    return s;
}

LoadSpec read_load(SectionReader& r, std::vector<std::string>& errors, const std::string& path) {
    const auto kind = r.text("kind").value_or("supercapacitor");
    if (kind == "supercapacitor") return SupercapacitorLoad{read_cap(r)};
    if (kind == "resistor") {
        ResistorLoad load;
        if (const auto v = r.value(kResistance)) {
            load.ohms = *v;
        } else {
            errors.push_back(path + ": resistor load needs r_ohm or r_kohm");
        }
        return load;
    }
    if (kind == "duty_cycled") {
        DutyCycledLoad load;
        load.cap = read_cap(r);
        r.assign(kActive, load.active_current);
        r.assign(kIdle, load.idle_current);
        r.assign(kPeriod, load.period);
        r.assign(kDuty, load.duty);
        return load;
    }
    errors.push_back(path + ".kind: unknown load kind '" + kind + "'");
    return SupercapacitorLoad{};
}

SimSettings read_sim(SectionReader& r) {
    const auto& sc = sim_schema();
    SimSettings s;
    r.assign(quantity(sc, "duration"), s.duration);
    r.assign(quantity(sc, "dt"), s.dt);
    r.assign(quantity(sc, "record_interval"), s.record_interval);
    r.assign(quantity(sc, "v_full"), s.v_full);
    return s;
}

json number_or_inf(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

json harvester_json(const harvester::HarvesterParams& p) {
    return {{"f_unloaded_hz", p.f_unloaded_hz},  {"m_eff_kg", p.m_eff_kg},
            {"m_tip_kg", p.m_tip_kg},            {"zeta", p.zeta},
            {"gain_v_per_m", p.gain_v_per_m},    {"v_sat_v", number_or_inf(p.v_sat)},
            {"c_piezo_f", p.c_piezo_f},          {"v_rating_v", p.v_rating}};
}

json cap_json(const storage::SupercapState& s) {
    return {{"capacitance_f", s.capacitance},
            {"v_rating_v", s.v_rating},
            {"v_initial_v", s.v_now},
            {"leakage_a", s.leakage_current},
            {"esr_ohm", s.esr}};
}

json scenario_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["profile"] = {{"frequency_hz", s.profile.frequency().hertz()},
                    {"displacement_pp_m", s.profile.displacement_pp()}};
    j["harvester"] = harvester_json(s.harvester);

    const auto& ps = s.power_stage;
    json charging;
    if (const auto* cc = std::get_if<power_stage::ConstantCurrent>(&ps.charging)) {
        charging = {{"model", "constant_current"}, {"i_cc_a", cc->i_cc}};
    } else {
        const auto& cp = std::get<power_stage::ConstantPower>(ps.charging);
        charging = {{"model", "constant_power"},
                    {"p_in_w", cp.p_in},
                    {"efficiency", cp.efficiency},
                    {"v_floor_v", cp.v_floor}};
    }
    j["power_stage"] = {{"v_shunt_clamp_v", ps.v_shunt_clamp}, {"v_out_setpoint_v", ps.v_out_setpoint},
                        {"v_out_lo_v", ps.v_out_lo},           {"v_out_hi_v", ps.v_out_hi},
                        {"diode_drop_v", ps.diode_drop},       {"nominal_input_vpp", ps.nominal_input_vpp},
                        {"charging", charging}};

    if (const auto* r = std::get_if<ResistorLoad>(&s.load)) {
        j["load"] = {{"kind", "resistor"}, {"r_ohm", r->ohms}};
    } else if (const auto* c = std::get_if<SupercapacitorLoad>(&s.load)) {
        json l = cap_json(c->cap);
        l["kind"] = "supercapacitor";
        j["load"] = l;
    } else {
        const auto& d = std::get<DutyCycledLoad>(s.load);
        json l = cap_json(d.cap);
        l["kind"] = "duty_cycled";
        l["active_current_a"] = d.active_current;
        l["idle_current_a"] = d.idle_current;
        l["period_s"] = d.period;
        l["duty"] = d.duty;
        j["load"] = l;
    }

    j["sim"] = {{"duration_s", s.sim.duration},
                {"dt_s", s.sim.dt},
                {"record_interval_s", s.sim.record_interval},
                {"v_full_v", s.sim.v_full}};
    return j;
}

Scenario scenario_from_json(const json& root) {
    std::vector<std::string> errors;
    SectionReader top(&root, "", errors);

    Scenario s;
    s.name = top.text("name").value_or("");

    SectionReader profile(top.child("profile"), "profile", errors);
    if (const auto p = read_profile(profile, errors, "profile")) s.profile = *p;
    profile.finish();

    SectionReader harv(top.child("harvester"), "harvester", errors);
    s.harvester = read_harvester(harv, errors, "harvester");
    harv.finish();

    SectionReader ps(top.child("power_stage"), "power_stage", errors);
    s.power_stage = read_power_stage(ps, errors);
    ps.finish();

    SectionReader load(top.child("load"), "load", errors);
    s.load = read_load(load, errors, "load");
    load.finish();

    SectionReader sim(top.child("sim"), "sim", errors);
    s.sim = read_sim(sim);
    sim.finish();

    top.finish();

    for (auto& v : s.violations()) errors.push_back(std::move(v));
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return s;
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        const auto dot = path.find('.', start);
        const auto end = dot == std::string_view::npos ? path.size() : dot;
        parts.emplace_back(path.substr(start, end - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return parts;
}

}  // namespace

Scenario parse_scenario(std::string_view text) { return scenario_from_json(parse_json(text)); }

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_text_file(path)); }

std::string dump_scenario(const Scenario& s) { return scenario_json(s).dump(2) + "\n"; }

Scenario with_parameter(const Scenario& s, std::string_view path, double value) {
    auto parts = split_path(path);
    if (parts.size() < 2) throw ConfigError("unknown parameter path '" + std::string(path) + "'");
    const std::string key = parts.back();
    parts.pop_back();

    std::string section;
    for (const auto& p : parts) section += (section.empty() ? "" : ".") + p;
    const Schema* schema = schema_for_section(section);
    if (!schema) throw ConfigError("unknown parameter path '" + std::string(path) + "'");

    const Quantity* target = nullptr;
    for (const auto& q : *schema)
        for (const auto& ku : q.keys)
            if (ku.key == key) target = &q;
    if (!target) throw ConfigError("unknown parameter path '" + std::string(path) + "'");

    json root = scenario_json(s);
    json* obj = &root;
    for (const auto& p : parts) obj = &(*obj)[p];
    for (const auto& ku : target->keys) obj->erase(std::string(ku.key));
    (*obj)[key] = value;

    try {
        return scenario_from_json(root);
    } catch (const ValidationError& e) {
        throw ConfigError("setting '" + std::string(path) + "' = " + fmt::shortest(value) +
                          " gives an invalid scenario: " + e.what());
    }
}

std::vector<std::string> parameter_paths() {
    std::vector<std::string> out;
    for (const char* section : {"profile", "harvester", "power_stage", "power_stage.charging", "load", "sim"}) {
        for (const auto& q : *schema_for_section(section))
            for (const auto& ku : q.keys) out.push_back(std::string(section) + "." + std::string(ku.key));
    }
    return out;
}

harvester::HarvesterParams parse_harvester(std::string_view text) {
    const json root = parse_json(text);
    std::vector<std::string> errors;
    SectionReader r(&root, "harvester", errors);
    auto p = read_harvester(r, errors, "harvester");
    r.finish();
    for (auto& v : p.violations()) errors.push_back(std::move(v));
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return p;
}

std::string dump_harvester(const harvester::HarvesterParams& p) { return harvester_json(p).dump(2) + "\n"; }

ObservationSet parse_observations(std::string_view text) {
    const json root = parse_json(text);
    std::vector<std::string> errors;
    SectionReader top(&root, "", errors);
    ObservationSet set;

    if (const json* h = top.child("harvester")) {
        SectionReader r(h, "harvester", errors);
        set.initial = read_harvester(r, errors, "harvester");
        r.finish();
    }
    set.fit_v_sat = top.boolean("fit_v_sat");

    const Quantity measured{"measured_vpp", {{"measured_vpp_v", 1.0}}};
    if (const json* list = top.child("observations"); list && list->is_array()) {
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string path = "observations[" + std::to_string(i) + "]";
            SectionReader r(&(*list)[i], path, errors);
            const auto profile = read_profile(r, errors, path);
            const auto vpp = r.value(measured);
            if (!vpp) errors.push_back(path + ": measured_vpp_v is required");
            r.finish();
            if (profile && vpp) set.observations.push_back({*profile, *vpp});
        }
    } else if (list) {
        errors.push_back("observations: expected an array");
    }
    top.finish();

    if (!errors.empty()) throw ValidationError(std::move(errors));
    return set;
}

// ---------------------------------------------------------------------------

void write_curve_csv(std::ostream& out, const ChargeCurve& curve) {
    out << kCurveHeader << '\n';
    for (const auto& r : curve.rows) {
        out << fmt::shortest(r.t) << ',' << fmt::shortest(r.v_cap) << ',' << fmt::shortest(r.i_out) << ','
            << fmt::shortest(r.p_out) << '\n';
    }
}

std::string curve_csv(const ChargeCurve& curve) {
    std::ostringstream os;
    write_curve_csv(os, curve);
    return os.str();
}

ChargeCurve read_curve_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty curve file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCurveHeader) throw ConfigError("curve header must be '" + std::string(kCurveHeader) + "'");

    ChargeCurve curve;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double fields[4];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 4; ++k) {
            const auto res = std::from_chars(p, end, fields[k]);
            if (res.ec != std::errc{}) throw ConfigError("bad number on curve line " + std::to_string(lineno));
            p = res.ptr;
            if (k < 3) {
                if (p == end || *p != ',') throw ConfigError("expected 4 fields on curve line " + std::to_string(lineno));
                ++p;
            }
        }
        if (p != end) throw ConfigError("trailing data on curve line " + std::to_string(lineno));
        if (!curve.rows.empty() && !(fields[0] > curve.rows.back().t))
            throw ConfigError("curve time must increase strictly (line " + std::to_string(lineno) + ")");
        curve.rows.push_back({fields[0], fields[1], fields[2], fields[3]});
    }
    return curve;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw ConfigError("write failed for '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ConfigError("cannot move output into '" + path.string() + "': " + ec.message());
    }
}

}  // namespace piezoharvest::io
