#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "phasekit/coupling.hpp"
#include "phasekit/system.hpp"

namespace phasekit {

/// Configuration / validation failure; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
}

inline double num(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

} // namespace detail

/// Parse a coupling specification:
///   {"two_harmonic": {"q":..., "r":..., "alpha":..., "beta":...}}
///   {"harmonics": [[j, q_j, alpha_j], ...], "c0": ...}
///   {"even_cosine": [c0, c1, ...]}
/// Angles in radians.
inline HarmonicCoupling coupling_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("coupling: expected an object");
    detail::reject_unknown(j, {"two_harmonic", "harmonics", "c0", "even_cosine"}, "coupling");
    const int forms = static_cast<int>(j.contains("two_harmonic")) + static_cast<int>(j.contains("harmonics")) +
                      static_cast<int>(j.contains("even_cosine"));
    if (forms != 1) throw ConfigError("coupling: exactly one of two_harmonic / harmonics / even_cosine required");

    if (j.contains("two_harmonic")) {
        const auto& t = j.at("two_harmonic");
        detail::reject_unknown(t, {"q", "r", "alpha", "beta"}, "coupling.two_harmonic");
        TwoHarmonicParams p;
        p.q = t.contains("q") ? detail::num(t.at("q"), "q") : -1.0;
        p.r = t.contains("r") ? detail::num(t.at("r"), "r") : 0.0;
        p.alpha = t.contains("alpha") ? detail::num(t.at("alpha"), "alpha") : 0.0;
        p.beta = t.contains("beta") ? detail::num(t.at("beta"), "beta") : 0.0;
        return p.coupling();
    }
    if (j.contains("even_cosine")) {
        const auto& c = j.at("even_cosine");
        if (!c.is_array() || c.empty()) throw ConfigError("coupling.even_cosine: expected a nonempty array");
        std::vector<double> coeffs;
        for (const auto& v : c) coeffs.push_back(detail::num(v, "coupling.even_cosine"));
        return HarmonicCoupling::even_cosine(coeffs);
    }
    const auto& hs = j.at("harmonics");
    if (!hs.is_array()) throw ConfigError("coupling.harmonics: expected an array of [j, q_j, alpha_j]");
    std::vector<Harmonic> terms;
    for (const auto& h : hs) {
        if (!h.is_array() || h.size() != 3) throw ConfigError("coupling.harmonics: entries are [j, q_j, alpha_j]");
        const double idx = detail::num(h.at(0), "coupling.harmonics[0]");
        if (idx < 1 || idx != static_cast<int>(idx)) throw ConfigError("coupling.harmonics: index must be a positive integer");
        terms.push_back({static_cast<int>(idx), detail::num(h.at(1), "coupling.harmonics[1]"),
                         detail::num(h.at(2), "coupling.harmonics[2]")});
    }
    const double c0 = j.contains("c0") ? detail::num(j.at("c0"), "coupling.c0") : 0.0;
    return HarmonicCoupling(c0, terms);
}

/// Validated run configuration for the CLI commands.
struct RunConfig {
    int n = 3;
    double omega = 0.0;
    HarmonicCoupling g;

    // run
    double T = 10.0;
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    int samples = 400;
    bool backward = false;
    std::vector<PhaseState> seeds;

    // scan
    double beta = 0.0;
    int alpha_points = 120;
    double r_max = 3.0;
    bool count_scan = false;
    int r_steps = 16;
    int grid_per_dim = 32;

    // reversal
    int q_samples = 24;
    int contour_grid = 256;
    int levels = 10;

    // integrability
    int face_grid = 128;

    // output
    std::string directory = "out";
    std::set<std::string> formats{"csv", "svg", "json"};

    SystemParams system() const { return SystemParams(n, omega, g); }
    bool wants(const std::string& fmt) const { return formats.count(fmt) > 0; }
};

inline RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    detail::reject_unknown(j, {"system", "run", "scan", "reversal", "integrability", "output"}, "config");
    RunConfig c;

    if (!j.contains("system")) throw ConfigError("config: missing \"system\" section");
    const auto& sys = j.at("system");
    detail::reject_unknown(sys, {"N", "omega", "coupling"}, "system");
    if (!sys.contains("N")) throw ConfigError("system: missing N");
    const double nval = detail::num(sys.at("N"), "system.N");
    if (nval < 2 || nval != static_cast<int>(nval)) throw ConfigError("system.N: integer >= 2 required");
    c.n = static_cast<int>(nval);
    if (sys.contains("omega")) c.omega = detail::num(sys.at("omega"), "system.omega");
    if (!sys.contains("coupling")) throw ConfigError("system: missing coupling");
    c.g = coupling_from_json(sys.at("coupling"));

    if (j.contains("run")) {
        const auto& run = j.at("run");
        detail::reject_unknown(run, {"T", "rel_tol", "abs_tol", "samples", "backward", "seeds"}, "run");
        if (run.contains("T")) c.T = detail::num(run.at("T"), "run.T");
        if (run.contains("rel_tol")) c.rel_tol = detail::num(run.at("rel_tol"), "run.rel_tol");
        if (run.contains("abs_tol")) c.abs_tol = detail::num(run.at("abs_tol"), "run.abs_tol");
        if (run.contains("samples")) c.samples = static_cast<int>(detail::num(run.at("samples"), "run.samples"));
        if (run.contains("backward")) {
            if (!run.at("backward").is_boolean()) throw ConfigError("run.backward: expected a boolean");
            c.backward = run.at("backward").get<bool>();
        }
        if (run.contains("seeds")) {
            if (!run.at("seeds").is_array()) throw ConfigError("run.seeds: expected an array of phase vectors");
            for (const auto& s : run.at("seeds")) {
                if (!s.is_array() || static_cast<int>(s.size()) != c.n)
                    throw ConfigError("run.seeds: each seed needs exactly N phases");
                PhaseState th;
                for (const auto& v : s) th.push_back(detail::num(v, "run.seeds"));
                c.seeds.push_back(std::move(th));
            }
        }
        if (c.rel_tol <= 0.0 || c.abs_tol <= 0.0) throw ConfigError("run: tolerances must be positive");
        if (c.samples < 2) throw ConfigError("run.samples: need at least 2");
    }

    if (j.contains("scan")) {
        const auto& scan = j.at("scan");
        detail::reject_unknown(scan, {"beta", "alpha_points", "r_max", "count_scan", "r_steps", "grid_per_dim"},
                               "scan");
        if (scan.contains("beta")) c.beta = detail::num(scan.at("beta"), "scan.beta");
        if (scan.contains("alpha_points"))
            c.alpha_points = static_cast<int>(detail::num(scan.at("alpha_points"), "scan.alpha_points"));
        if (scan.contains("r_max")) c.r_max = detail::num(scan.at("r_max"), "scan.r_max");
        if (scan.contains("count_scan")) {
            if (!scan.at("count_scan").is_boolean()) throw ConfigError("scan.count_scan: expected a boolean");
            c.count_scan = scan.at("count_scan").get<bool>();
        }
        if (scan.contains("r_steps")) c.r_steps = static_cast<int>(detail::num(scan.at("r_steps"), "scan.r_steps"));
        if (scan.contains("grid_per_dim"))
            c.grid_per_dim = static_cast<int>(detail::num(scan.at("grid_per_dim"), "scan.grid_per_dim"));
        if (c.alpha_points < 8) throw ConfigError("scan.alpha_points: need at least 8");
        if (c.r_max <= 0.0) throw ConfigError("scan.r_max: must be positive");
    }

    if (j.contains("reversal")) {
        const auto& rev = j.at("reversal");
        detail::reject_unknown(rev, {"q_samples", "contour_grid", "levels"}, "reversal");
        if (rev.contains("q_samples")) c.q_samples = static_cast<int>(detail::num(rev.at("q_samples"), "reversal.q_samples"));
        if (rev.contains("contour_grid"))
            c.contour_grid = static_cast<int>(detail::num(rev.at("contour_grid"), "reversal.contour_grid"));
        if (rev.contains("levels")) c.levels = static_cast<int>(detail::num(rev.at("levels"), "reversal.levels"));
        if (c.q_samples < 2) throw ConfigError("reversal.q_samples: need at least 2");
    }

    if (j.contains("integrability")) {
        const auto& integ = j.at("integrability");
        detail::reject_unknown(integ, {"face_grid"}, "integrability");
        if (integ.contains("face_grid"))
            c.face_grid = static_cast<int>(detail::num(integ.at("face_grid"), "integrability.face_grid"));
        if (c.face_grid < 16) throw ConfigError("integrability.face_grid: need at least 16");
    }

    if (j.contains("output")) {
        const auto& outp = j.at("output");
        detail::reject_unknown(outp, {"directory", "formats"}, "output");
        if (outp.contains("directory")) {
            if (!outp.at("directory").is_string()) throw ConfigError("output.directory: expected a string");
            c.directory = outp.at("directory").get<std::string>();
        }
        if (outp.contains("formats")) {
            if (!outp.at("formats").is_array()) throw ConfigError("output.formats: expected an array");
            c.formats.clear();
            for (const auto& f : outp.at("formats")) {
                if (!f.is_string()) throw ConfigError("output.formats: expected strings");
                const std::string s = f.get<std::string>();
                if (s != "csv" && s != "svg" && s != "json") throw ConfigError("output.formats: unknown format \"" + s + "\"");
                c.formats.insert(s);
            }
        }
    }
    return c;
}

/// Apply a dotted-path override like ("system.omega", "0.5") onto raw JSON.
/// The value is parsed as JSON when possible, else taken as a string.
inline void apply_override(nlohmann::json& j, const std::string& path, const std::string& value) {
    nlohmann::json* node = &j;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (key.empty()) throw ConfigError("override: empty key in path \"" + path + "\"");
        if (dot == std::string::npos) {
            nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

} // namespace phasekit
