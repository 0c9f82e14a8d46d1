#include "tmoctl/config.hpp"

#include <cctype>
#include <numbers>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tmoctl/errors.hpp"

namespace tmoctl {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Removes a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

ConfigValue parse_scalar(const std::string& tok, int line) {
    if (tok.empty()) fail(line, "empty value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') fail(line, "unterminated string");
        return tok.substr(1, tok.size() - 2);
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') fail(line, "cannot parse value '" + tok + "'");
    return v;
}

ConfigValue parse_value(const std::string& raw, int line) {
    const std::string v = strip(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') fail(line, "unterminated array");
        std::vector<double> arr;
        std::string inner = v.substr(1, v.size() - 2);
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = strip(item);
            if (item.empty()) continue;
            const ConfigValue cv = parse_scalar(item, line);
            if (!std::holds_alternative<double>(cv)) fail(line, "arrays must be numeric");
            arr.push_back(std::get<double>(cv));
        }
        return arr;
    }
    return parse_scalar(v, line);
}

double get_num(const ConfigTable& t, const std::string& key, double fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (!std::holds_alternative<double>(it->second)) throw ConfigError("key '" + key + "' must be a number");
    return std::get<double>(it->second);
}

std::string get_str(const ConfigTable& t, const std::string& key, const std::string& fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (!std::holds_alternative<std::string>(it->second))
        throw ConfigError("key '" + key + "' must be a string");
    return std::get<std::string>(it->second);
}

bool get_bool(const ConfigTable& t, const std::string& key, bool fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (!std::holds_alternative<bool>(it->second))
        throw ConfigError("key '" + key + "' must be a boolean");
    return std::get<bool>(it->second);
}

std::vector<double> get_arr(const ConfigTable& t, const std::string& key,
                            const std::vector<double>& fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (std::holds_alternative<std::vector<double>>(it->second))
        return std::get<std::vector<double>>(it->second);
    if (std::holds_alternative<double>(it->second)) return {std::get<double>(it->second)};
    throw ConfigError("key '" + key + "' must be an array");
}

}  // namespace

ConfigDoc ConfigDoc::parse(const std::string& text) {
    ConfigDoc doc;
    ConfigTable* current = &doc.root;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = strip(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.size() >= 4 && s[1] == '[') {
                if (s.substr(s.size() - 2) != "]]") fail(line, "bad [[table]] header");
                const std::string name = strip(s.substr(2, s.size() - 4));
                if (name != "scenario") fail(line, "only [[scenario]] arrays are supported");
                doc.scenarios.emplace_back();
                current = &doc.scenarios.back();
            } else {
                if (s.back() != ']') fail(line, "bad [table] header");
                const std::string name = strip(s.substr(1, s.size() - 2));
                if (name.empty()) fail(line, "empty table name");
                current = &doc.tables[name];
            }
            continue;
        }
        const size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = strip(s.substr(0, eq));
        if (key.empty()) fail(line, "empty key");
        (*current)[key] = parse_value(s.substr(eq + 1), line);
    }
    return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

RunConfig RunConfig::from_doc(const ConfigDoc& doc) {
    RunConfig rc;
    rc.seed = static_cast<std::uint32_t>(get_num(doc.root, "seed", 1.0));
    rc.out_dir = get_str(doc.root, "out_dir", "out");

    PlantParams nominal = PlantParams::nominal();
    if (auto it = doc.tables.find("plant"); it != doc.tables.end()) {
        const ConfigTable& t = it->second;
        PlantParams p;
        p.k = get_num(t, "k", nominal.k);
        p.m = get_num(t, "m", nominal.m);
        p.M = get_num(t, "M", nominal.M);
        p.eta = get_num(t, "eta", nominal.eta);
        p.zeta = get_num(t, "zeta", nominal.zeta);
        p.psi = get_num(t, "psi", nominal.psi);
        p.R = get_num(t, "R", nominal.R);
        p.g = get_num(t, "g", nominal.g);
        p.k_m = get_num(t, "k_m", nominal.k_m);
        // tau_n and uss_fit default to the nominal construction for the
        // given constants unless the config pins them.
        PlantParams derived = p;
        derived.tau_n = 1.0;  // placeholder so validate() passes pre-derivation
        derived.uss_fit = {gravity_feedforward(p), 0.0, 0.0};
        const double tau_default = 2.0 * std::numbers::pi / plant_omega0(derived);
        p.tau_n = get_num(t, "tau_n", tau_default);
        const std::vector<double> fit =
            get_arr(t, "uss_fit", {gravity_feedforward(p), 0.0, 0.0});
        if (fit.size() > 3) throw ConfigError("uss_fit takes at most 3 coefficients");
        p.uss_fit = {0.0, 0.0, 0.0};
        for (size_t i = 0; i < fit.size(); ++i) p.uss_fit[i] = fit[i];
        p.validate();
        rc.plant = p;
    }

    for (const ConfigTable& t : doc.scenarios) {
        Scenario sc;
        const std::string ctrl = get_str(t, "controller", "fo");
        if (ctrl == "fo")
            sc.controller = ControllerKind::fo;
        else if (ctrl == "hinf")
            sc.controller = ControllerKind::hinf;
        else
            throw ConfigError("scenario controller must be 'fo' or 'hinf'");
        const std::string exp = get_str(t, "experiment", "tracking");
        if (exp == "tracking")
            sc.experiment = ExperimentKind::tracking;
        else if (exp == "disturbance")
            sc.experiment = ExperimentKind::disturbance;
        else
            throw ConfigError("scenario experiment must be 'tracking' or 'disturbance'");
        sc.tau_factor = get_num(t, "tau_factor", 1.0);
        sc.horizon = get_num(t, "horizon", 20.0);
        sc.t_s = get_num(t, "t_s", 2e-4);
        sc.jitter_on = get_bool(t, "jitter", false);
        sc.ku_nonlinearity_on = get_bool(t, "ku_nonlinearity", false);
        const std::string shift = get_str(t, "ff_shift", "plus_tau_n");
        if (shift == "minus_tau_n")
            sc.ff_shift = FfShift::minus_tau_n;
        else if (shift == "zero")
            sc.ff_shift = FfShift::zero;
        else if (shift == "plus_tau_n")
            sc.ff_shift = FfShift::plus_tau_n;
        else
            throw ConfigError("ff_shift must be minus_tau_n, zero or plus_tau_n");
        const std::vector<double> x0 = get_arr(t, "x0", {});
        if (!x0.empty()) {
            if (x0.size() != 4) throw ConfigError("x0 must have 4 entries");
            sc.x0 = {x0[0], x0[1], x0[2], x0[3]};
        }
        if (sc.experiment == ExperimentKind::tracking) {
            ReferenceSpec ref;
            ref.r0 = get_num(t, "r0", ref.r0);
            ref.r1 = get_num(t, "r1", ref.r1);
            ref.t_transition = get_num(t, "t_transition", ref.t_transition);
            ref.start_times = get_arr(t, "start_times", {1.0, 8.0, 15.0});
            sc.reference = ref;
        } else {
            DisturbanceSpec d;
            const std::vector<double> band = get_arr(t, "band", {d.band_lo, d.band_hi});
            if (band.size() != 2) throw ConfigError("band must be [lo, hi]");
            d.band_lo = band[0];
            d.band_hi = band[1];
            d.amplitude_peak = get_num(t, "amplitude_peak", d.amplitude_peak);
            d.start_time = get_num(t, "start_time", d.start_time);
            d.duration = get_num(t, "duration", sc.horizon - d.start_time);
            d.seed = static_cast<std::uint32_t>(get_num(t, "seed", rc.seed));
            sc.disturbance = d;
        }
        sc.label = get_str(t, "label", "");
        rc.scenarios.push_back(sc);
    }
    if (rc.scenarios.empty())
        rc.scenarios = default_scenario_matrix(rc.plant, rc.seed);
    return rc;
}

RunConfig RunConfig::load(const std::string& path) { return from_doc(ConfigDoc::parse_file(path)); }

RunConfig RunConfig::defaults() {
    // No config file: Table-1 plant and the full 12-scenario study matrix.
    return from_doc(ConfigDoc::parse(""));
}

std::string default_config_text() {
    return R"(# tmoctl run configuration
# Physical constants of the two-mass oscillator (SI units).

seed = 1
out_dir = "out"

[plant]
k = 200.0      # N/m
m = 0.6        # kg
M = 0.75       # kg
eta = 200.0    # kg/s
zeta = 0.02    # kg/s
psi = 17.16    # V s/m
R = 5.23       # V/A
g = 9.81       # m/s^2
k_m = 1.3
# tau_n defaults to 2*pi/omega0 for the constants above; uncomment to pin it.
# tau_n = 0.3844
# u_ss(x1) quadratic fit in volts. The default (constant gravity-balance
# voltage) makes k_u(x1) identically 1. The commented alternative below is a
# SYNTHETIC example shape, not measured data.
# uss_fit = [3.6, 60.0, -1500.0]

# Scenario matrix. Delete every [[scenario]] block to fall back to the
# built-in 2 controllers x {0.9, 1.0, 1.1} tau_n x 2 experiments matrix.
# ff_shift = "plus_tau_n" pre-shifts the a-priori known reference so the
# feedforward output meets it after the transport delay; "minus_tau_n" is
# the published formula.

[[scenario]]
controller = "fo"
experiment = "tracking"
tau_factor = 1.0
ff_shift = "plus_tau_n"

[[scenario]]
controller = "hinf"
experiment = "tracking"
tau_factor = 1.0

[[scenario]]
controller = "fo"
experiment = "disturbance"
tau_factor = 1.0
amplitude_peak = 2.0
seed = 1

[[scenario]]
controller = "hinf"
experiment = "disturbance"
tau_factor = 1.0
amplitude_peak = 2.0
seed = 1
)";
}

}  // namespace tmoctl
