// phasekit command-line front end: deterministic CSV / JSON / SVG artifacts
// for simulation, stability tables, bifurcation sweeps, reversal-set geometry
// and the N = 4 integrability diagnostic.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "phasekit/bifurcation.hpp"
#include "phasekit/config.hpp"
#include "phasekit/io.hpp"
#include "phasekit/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;
using namespace phasekit;

namespace {

void usage(std::ostream& os) {
    os << "usage: phasekit <command> --config <file.json> [--out <dir>] [--format csv,svg,json]\n"
          "                [--<dotted.key> <value>]...\n"
          "\n"
          "commands:\n"
          "  simulate       integrate seeds; trajectory CSVs and (N = 3, 4) a projected portrait SVG\n"
          "  stability      JSON table: sync / splay eigenvalues, two-cluster states with spectra\n"
          "  scan           bifurcation curves in the (alpha, r) plane at fixed beta (N = 3, 4)\n"
          "  reversal       Q-set samples, even-coupling equilibria, N = 3 level sets (even g)\n"
          "  integrability  N = 4 S2-face equilibrium scan and sink/source report (even g)\n"
          "\n"
          "Dotted keys override config leaves, e.g. --system.omega 0.5 --scan.beta 0.785\n"
          "Exit codes: 0 success, 2 configuration error, 3 numerical failure.\n";
}

std::array<double, 2> to_xy(const std::vector<double>& coords) {
    // N = 3 projects to the plane; N = 4 to R^3, drawn with a fixed oblique map
    if (coords.size() == 2) return {coords[0], coords[1]};
    return {coords[0] - 0.45 * coords[2], coords[1] - 0.28 * coords[2]};
}

std::string class_color(StabilityClass c) {
    switch (c) {
    case StabilityClass::sink: return "#1f3fbf";
    case StabilityClass::source: return "#bf1f1f";
    case StabilityClass::saddle: return "#222222";
    case StabilityClass::centre: return "#1f8f1f";
    default: return "#888888";
    }
}

void draw_equilibrium(SvgDocument& svg, double x, double y, StabilityClass c) {
    // glyph legend: triangles saddles, circles centres, open squares sources,
    // filled squares sinks
    switch (c) {
    case StabilityClass::saddle: svg.triangle(x, y, 5.0, class_color(c)); break;
    case StabilityClass::centre: svg.circle(x, y, 5.0, "white", class_color(c)); break;
    case StabilityClass::source: svg.square(x, y, 4.5, "white", class_color(c)); break;
    case StabilityClass::sink: svg.square(x, y, 4.5, class_color(c)); break;
    default: svg.circle(x, y, 3.0, class_color(c)); break;
    }
}

json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
    return j;
}

ordered_json complex_list(const std::vector<std::complex<double>>& eigs) {
    ordered_json out = ordered_json::array();
    for (const auto& z : eigs) out.push_back({z.real(), z.imag()});
    return out;
}

std::vector<std::string> equilibrium_csv_header(int n) {
    std::vector<std::string> cols;
    for (int k = 1; k < n; ++k) cols.push_back("psi_" + std::to_string(k));
    cols.push_back("isotropy");
    for (int k = 1; k < n; ++k) {
        cols.push_back("re_lambda_" + std::to_string(k));
        cols.push_back("im_lambda_" + std::to_string(k));
    }
    cols.push_back("class");
    cols.push_back("convention");
    return cols;
}

void equilibrium_csv_row(CsvWriter& csv, int n, const EquilibriumReport& rep) {
    std::vector<std::string> cells;
    for (double v : rep.location) cells.push_back(format_g17(v));
    cells.push_back(rep.isotropy.description);
    for (int k = 0; k < n - 1; ++k) {
        if (k < static_cast<int>(rep.eigenvalues.size())) {
            cells.push_back(format_g17(rep.eigenvalues[static_cast<std::size_t>(k)].real()));
            cells.push_back(format_g17(rep.eigenvalues[static_cast<std::size_t>(k)].imag()));
        } else {
            cells.push_back("");
            cells.push_back("");
        }
    }
    cells.push_back(to_string(rep.cls));
    cells.push_back(to_string(rep.convention));
    csv.row(cells);
}

void write_portrait_svg(const fs::path& path, const PortraitData& pd) {
    double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
    auto grow = [&](const std::array<double, 2>& p) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    };
    for (const auto& tr : pd.trajectories)
        for (const auto& pt : tr.points) grow(to_xy(pt));
    for (const auto& ov : pd.q_overlays)
        for (const auto& pt : ov) grow(to_xy(pt));
    for (const auto& rep : pd.equilibria) grow(to_xy(project_phases(lift(rep.location))));
    const double padx = 0.06 * (xmax - xmin), pady = 0.06 * (ymax - ymin);
    SvgDocument svg(xmin - padx, xmax + padx, ymin - pady, ymax + pady);

    for (const auto& seg : pd.level_sets)
        svg.line(seg.a[0], seg.a[1], seg.b[0], seg.b[1], "#9ecbff", 0.8);

    for (const auto& ov : pd.q_overlays)
        for (const auto& pt : ov) {
            const auto p = to_xy(pt);
            svg.circle(p[0], p[1], 1.2, "#b0b0b0");
        }

    static const char* region_colors[4] = {"#2a6fbb", "#bb2a6f", "#6fbb2a", "#bb8d2a"};
    for (const auto& tr : pd.trajectories) {
        std::vector<std::array<double, 2>> run;
        int region = tr.region.empty() ? 0 : tr.region.front();
        for (std::size_t i = 0; i < tr.points.size(); ++i) {
            bool wrap_jump = false;
            if (i > 0)
                for (std::size_t k = 0; k < tr.psi[i].size(); ++k)
                    if (std::fabs(tr.psi[i][k] - tr.psi[i - 1][k]) > pi) wrap_jump = true;
            if ((i > 0 && tr.region[i] != region) || wrap_jump) {
                if (!wrap_jump) run.push_back(to_xy(tr.points[i]));
                svg.polyline(run, region_colors[region & 3], 1.4);
                run.clear();
                region = tr.region[i];
            }
            run.push_back(to_xy(tr.points[i]));
        }
        svg.polyline(run, region_colors[region & 3], 1.4);
    }

    for (const auto& rep : pd.equilibria) {
        const auto p = to_xy(project_phases(lift(rep.location)));
        draw_equilibrium(svg, p[0], p[1], rep.cls);
    }
    svg.save(path);
}

void write_portrait_csv(const fs::path& path, const PortraitData& pd) {
    CsvWriter csv(path);
    csv.header({"kind", "index", "x1", "x2", "x3", "value", "tag"});
    const auto coord = [](const std::vector<double>& v, std::size_t k) {
        return k < v.size() ? format_g17(v[k]) : std::string("");
    };
    int idx = 0;
    for (const auto& tr : pd.trajectories) {
        for (std::size_t i = 0; i < tr.points.size(); ++i)
            csv.row({"trajectory", std::to_string(idx), coord(tr.points[i], 0), coord(tr.points[i], 1),
                     coord(tr.points[i], 2), std::to_string(tr.region[i]), ""});
        ++idx;
    }
    for (std::size_t q = 0; q < pd.q_overlays.size(); ++q)
        for (const auto& pt : pd.q_overlays[q])
            csv.row({"q_set", std::to_string(q), coord(pt, 0), coord(pt, 1), coord(pt, 2), "", ""});
    for (const auto& seg : pd.level_sets) {
        csv.row({"level_segment_a", "", format_g17(seg.a[0]), format_g17(seg.a[1]), "", format_g17(seg.level), ""});
        csv.row({"level_segment_b", "", format_g17(seg.b[0]), format_g17(seg.b[1]), "", format_g17(seg.level), ""});
    }
    for (const auto& rep : pd.equilibria) {
        const auto p = project_phases(lift(rep.location));
        csv.row({"equilibrium", "", coord(p, 0), coord(p, 1), coord(p, 2), "", to_string(rep.cls)});
    }
}

int cmd_simulate(const RunConfig& cfg) {
    if (cfg.seeds.empty()) throw ConfigError("simulate: run.seeds must contain at least one seed");
    const SystemParams sys = cfg.system();
    const fs::path dir(cfg.directory);
    fs::create_directories(dir);

    IntegrateOptions io;
    io.rel_tol = cfg.rel_tol;
    io.abs_tol = cfg.abs_tol;

    if (cfg.wants("csv")) {
        for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
            IntegrateOptions opt = io;
            opt.sample_times = linspace_times(cfg.T, cfg.samples);
            const Trajectory tr = integrate(sys, cfg.seeds[s], cfg.T, opt);
            CsvWriter csv(dir / ("trajectory_" + std::to_string(s) + ".csv"));
            std::vector<std::string> cols{"t"};
            for (int k = 1; k <= cfg.n; ++k) cols.push_back("theta_" + std::to_string(k));
            csv.header(cols);
            for (std::size_t i = 0; i < tr.times.size(); ++i) {
                std::vector<double> row{tr.times[i]};
                for (double th : tr.states[i]) row.push_back(wrap_2pi(th));
                csv.row_numeric(row);
            }
        }
    }

    if (cfg.n == 3 || cfg.n == 4) {
        PortraitOptions popt;
        popt.samples = cfg.samples;
        popt.backward = cfg.backward;
        popt.integ = io;
        popt.find_grid = cfg.grid_per_dim;
        popt.q_samples = cfg.q_samples;
        const PortraitData pd = make_portrait(sys, cfg.seeds, cfg.T, popt);
        if (cfg.wants("svg")) write_portrait_svg(dir / "portrait.svg", pd);
        if (cfg.wants("csv")) write_portrait_csv(dir / "portrait_geometry.csv", pd);
    }
    return 0;
}

int cmd_stability(const RunConfig& cfg) {
    const SystemParams sys = cfg.system();
    const fs::path dir(cfg.directory);
    fs::create_directories(dir);

    ordered_json out;
    const double se = sync_eigenvalue(sys);
    out["sync"] = {{"eigenvalue", se}, {"stable", se < 0.0}, {"at_threshold", std::fabs(se) < 1e-9}};

    const auto splay = splay_eigenvalues(sys);
    bool hopf = false, block = false;
    for (int p = 1; p < sys.n; ++p) {
        const auto& l = splay[static_cast<std::size_t>(p - 1)];
        if (std::fabs(l.real()) < 1e-9 && std::fabs(l.imag()) > 1e-9 && 2 * p != sys.n) hopf = true;
        if (sys.n % 2 == 0 && 2 * p == sys.n && std::fabs(l.real()) < 1e-9) block = true;
    }
    out["splay"] = {{"eigenvalues", complex_list(splay)}, {"hopf_flag", hopf}, {"block_flag", block}};

    ordered_json clusters = ordered_json::array();
    for (int p = 1; p < sys.n; ++p) {
        ordered_json entry;
        entry["p"] = p;
        entry["P"] = static_cast<double>(p) / sys.n;
        ordered_json roots = ordered_json::array();
        auto field = [&](double phi) { return two_cluster_field(sys, {p, phi}); };
        for (double phi : scan_roots(field, 1e-6, two_pi - 1e-6)) {
            ordered_json state{{"phi", phi}, {"t", std::tan(phi / 2.0)}};
            if (sys.n <= 4) {
                // full spectrum from the reduced Jacobian (closed-form eigensolver, N - 1 <= 3)
                PhaseState th(static_cast<std::size_t>(sys.n), 0.0);
                for (int k = 0; k < p; ++k) th[static_cast<std::size_t>(k)] = phi;
                ReducedState psi(static_cast<std::size_t>(sys.n - 1));
                for (int k = 1; k < sys.n; ++k)
                    psi[static_cast<std::size_t>(k - 1)] = wrap_2pi(th[static_cast<std::size_t>(k)] - th[0]);
                const auto eigs = eigenvalues(reduced_jacobian(sys, psi));
                state["eigenvalues"] = complex_list(eigs);
                state["class"] = to_string(classify(eigs));
            } else {
                // the on-manifold eigenvalue: d/dphi of the (time-rescaled) cluster field
                const double h = 1e-6;
                state["on_manifold_eigenvalue"] =
                    (two_cluster_field(sys, {p, phi + h}) - two_cluster_field(sys, {p, phi - h})) /
                    (2.0 * h * sys.n);
                state["spectrum_omitted"] = true;
            }
            roots.push_back(std::move(state));
        }
        entry["states"] = roots;
        clusters.push_back(entry);
    }
    out["two_cluster"] = clusters;

    if (cfg.wants("json")) {
        std::ofstream f(dir / "stability.json");
        f << out.dump(2) << '\n';
    }
    return 0;
}

int cmd_scan(const RunConfig& cfg) {
    if (cfg.n != 3 && cfg.n != 4) throw ConfigError("scan: N must be 3 or 4");
    const fs::path dir(cfg.directory);
    fs::create_directories(dir);

    auto curves = analytic_curves(cfg.n, cfg.beta, cfg.alpha_points, cfg.r_max);

    if (cfg.count_scan) {
        BifurcationCurve detected{CurveKind::scan_detected, cfg.n, cfg.beta, 0, false,
                                  "equilibrium-count changes between adjacent grid cells", {}};
        const int apts = std::max(8, cfg.alpha_points / 4);
        for (int i = 0; i < apts; ++i) {
            const double a = two_pi * i / apts;
            int prev_count = -1;
            for (int jr = 0; jr <= cfg.r_steps; ++jr) {
                const double r = cfg.r_max * jr / cfg.r_steps;
                const SystemParams sys(cfg.n, 0.0, TwoHarmonicParams{-1.0, r, a, cfg.beta}.coupling());
                const int count = static_cast<int>(find_equilibria(sys, cfg.grid_per_dim, 1e-9).size());
                if (prev_count >= 0 && count != prev_count)
                    detected.points.push_back({a, cfg.r_max * (jr - 0.5) / cfg.r_steps});
                prev_count = count;
            }
        }
        curves.push_back(std::move(detected));
    }

    if (cfg.wants("csv")) {
        for (const auto& c : curves) {
            std::string name = std::string("scan_") + to_string(c.kind);
            if (c.kind == CurveKind::two_cluster_sn) name += "_p" + std::to_string(c.p);
            CsvWriter csv(dir / (name + ".csv"));
            csv.header({"kind", "beta", "alpha", "r"});
            for (const auto& pt : c.points)
                csv.row({to_string(c.kind), format_g17(c.beta), format_g17(pt[0]), format_g17(pt[1])});
        }
    }

    if (cfg.wants("json")) {
        ordered_json summary = ordered_json::array();
        for (const auto& c : curves)
            summary.push_back({{"kind", to_string(c.kind)},
                               {"p", c.p},
                               {"beta", c.beta},
                               {"degenerate", c.degenerate},
                               {"note", c.note},
                               {"points", c.points.size()}});
        std::ofstream f(dir / "scan_summary.json");
        f << summary.dump(2) << '\n';
    }

    if (cfg.wants("svg")) {
        SvgDocument svg(-0.2, two_pi + 0.2, -0.1 * cfg.r_max, 1.05 * cfg.r_max);
        const std::map<CurveKind, std::string> colors{
            {CurveKind::sync_steady, "#2040c0"},  {CurveKind::splay_hopf, "#00a0c0"},
            {CurveKind::splay_block, "#c08000"},  {CurveKind::two_cluster_sn, "#c02020"},
            {CurveKind::s2s2, "#a020a0"},         {CurveKind::scan_detected, "#20a020"}};
        svg.line(0.0, 0.0, two_pi, 0.0, "#404040", 1.0);
        svg.line(0.0, 0.0, 0.0, cfg.r_max, "#404040", 1.0);
        for (const auto& c : curves) {
            const auto& color = colors.at(c.kind);
            // scatter rather than joined polyline: several kinds are unions of branches
            for (const auto& pt : c.points) svg.circle(pt[0], pt[1], 1.6, color);
        }
        svg.text(0.2, 1.02 * cfg.r_max, "alpha in [0, 2pi), r in [0, r_max], beta = " + format_g6(cfg.beta));
        svg.save(dir / "scan.svg");
    }
    return 0;
}

int cmd_reversal(const RunConfig& cfg) {
    if (cfg.n != 3 && cfg.n != 4) throw ConfigError("reversal: N must be 3 or 4");
    if (!cfg.g.is_even()) throw ConfigError("reversal: coupling must be even");
    const SystemParams sys = cfg.system();
    const fs::path dir(cfg.directory);
    fs::create_directories(dir);

    if (cfg.wants("csv")) {
        for (int q = 0; q < cfg.n; ++q) {
            CsvWriter csv(dir / ("qset_" + std::to_string(q) + ".csv"));
            std::vector<std::string> cols;
            for (int k = 1; k < cfg.n; ++k) cols.push_back("x" + std::to_string(k));
            cols.push_back("isotropy_tag");
            csv.header(cols);
            for (const auto& pt : sample_q_set(cfg.n, q, cfg.q_samples)) {
                std::vector<std::string> cells;
                for (double x : project(pt)) cells.push_back(format_g17(x));
                cells.push_back(isotropy(pt.theta, 1e-8).description);
                csv.row(cells);
            }
        }

        CsvWriter csv(dir / "equilibria.csv");
        csv.header(equilibrium_csv_header(cfg.n));
        if (cfg.n == 3) {
            for (const auto& rep : even_q30_equilibria(cfg.g)) equilibrium_csv_row(csv, 3, rep);
        } else {
            for (const auto& rep : even_q40_equilibria(cfg.g)) equilibrium_csv_row(csv, 4, rep);
            const auto q43 = even_q43_equilibria(cfg.g);
            for (const auto& rep : q43.l_minus.samples) equilibrium_csv_row(csv, 4, rep);
            for (const auto& rep : q43.l_plus.samples) equilibrium_csv_row(csv, 4, rep);
            for (const auto& rep : q43.extra) equilibrium_csv_row(csv, 4, rep);
        }
    }

    PortraitOptions popt;
    popt.q_samples = cfg.q_samples;
    popt.level_grid = cfg.contour_grid;
    popt.n_levels = cfg.levels;
    popt.find_grid = cfg.grid_per_dim;
    const PortraitData pd = make_portrait(sys, {}, 1.0, popt);
    if (cfg.n == 3 && cfg.wants("csv")) {
        CsvWriter csv(dir / "contours.csv");
        csv.header({"level", "x1", "y1", "x2", "y2"});
        for (const auto& seg : pd.level_sets)
            csv.row_numeric({seg.level, seg.a[0], seg.a[1], seg.b[0], seg.b[1]});
    }
    if (cfg.wants("svg")) write_portrait_svg(dir / "reversal.svg", pd);
    return 0;
}

int cmd_integrability(const RunConfig& cfg) {
    if (cfg.n != 4) throw ConfigError("integrability: N must be 4");
    if (!cfg.g.is_even()) throw ConfigError("integrability: coupling must be even");
    const fs::path dir(cfg.directory);
    fs::create_directories(dir);

    const IntegrabilityReport rep = integrability_report(cfg.g, cfg.face_grid);

    if (cfg.wants("json")) {
        ordered_json out;
        ordered_json eqs = ordered_json::array();
        for (const auto& eq : rep.equilibria) {
            eqs.push_back({{"u", eq.u},
                           {"v", eq.v},
                           {"class", to_string(eq.cls)},
                           {"eigenvalues",
                            ordered_json::array({{eq.eigenvalues[0].real(), eq.eigenvalues[0].imag()},
                                                 {eq.eigenvalues[1].real(), eq.eigenvalues[1].imag()}})},
                           {"in_rc", eq.in_rc},
                           {"rc_residual", eq.rc_residual}});
        }
        out["equilibria"] = eqs;
        out["has_sink"] = rep.has_sink;
        out["has_source"] = rep.has_source;
        out["sink_source_pairs"] = rep.sink_source_pairs;
        ordered_json lp = ordered_json::array();
        for (const auto& s : rep.l_plus) lp.push_back({s[0], s[1]});
        out["l_plus"] = lp;
        out["newton_failures"] = rep.newton_failures;
        std::ofstream f(dir / "report.json");
        f << out.dump(2) << '\n';
    }

    if (cfg.wants("svg")) {
        SvgDocument svg(-0.3, two_pi + 0.3, -0.3, two_pi + 0.3);
        // the S2 face: open triangle 0 < u < v < 2 pi
        svg.line(0.0, 0.0, two_pi, two_pi, "#555555", 1.0, "6,4"); // L+ diagonal (S2xS2)
        svg.line(0.0, 0.0, 0.0, two_pi, "#404040", 1.0);
        svg.line(0.0, two_pi, two_pi, two_pi, "#404040", 1.0);
        // RC trace on the face: v = 2 pi - u
        svg.line(0.0, two_pi, two_pi, 0.0, "#a0a0a0", 1.0);
        for (const auto& eq : rep.equilibria) draw_equilibrium(svg, eq.u, eq.v, eq.cls);
        svg.text(0.2, two_pi + 0.15, "S2 face (0,0,u,v): u right, v up; dashed = L+, gray = Q41 trace");
        svg.save(dir / "face.svg");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        usage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? 2 : 0;
    }

    const std::string command = args[0];
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string out_dir, format_list;

    try {
        for (std::size_t i = 1; i < args.size(); ++i) {
            const std::string& a = args[i];
            auto next = [&]() -> const std::string& {
                if (i + 1 >= args.size()) throw ConfigError("missing value after " + a);
                return args[++i];
            };
            if (a == "--config") config_path = next();
            else if (a == "--out") out_dir = next();
            else if (a == "--format") format_list = next();
            else if (a.rfind("--", 0) == 0 && a.find('.') != std::string::npos)
                overrides.emplace_back(a.substr(2), next());
            else throw ConfigError("unknown argument: " + a);
        }
        if (config_path.empty()) throw ConfigError("--config <file.json> is required");

        json raw = load_json_file(config_path);
        for (const auto& [path, value] : overrides) apply_override(raw, path, value);
        if (!out_dir.empty()) raw["output"]["directory"] = out_dir;
        if (!format_list.empty()) {
            json fmts = json::array();
            std::size_t pos = 0;
            while (pos != std::string::npos) {
                const std::size_t comma = format_list.find(',', pos);
                fmts.push_back(format_list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
                pos = (comma == std::string::npos) ? std::string::npos : comma + 1;
            }
            raw["output"]["formats"] = fmts;
        }

        const RunConfig cfg = parse_config(raw);
        if (command == "simulate") return cmd_simulate(cfg);
        if (command == "stability") return cmd_stability(cfg);
        if (command == "scan") return cmd_scan(cfg);
        if (command == "reversal") return cmd_reversal(cfg);
        if (command == "integrability") return cmd_integrability(cfg);
        throw ConfigError("unknown command: " + command);
    } catch (const ConfigError& e) {
        std::cerr << "phasekit: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "phasekit: " << e.what() << '\n';
        return 2;
    } catch (const StepUnderflow& e) {
        std::cerr << "phasekit: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "phasekit: numerical failure: " << e.what() << '\n';
        return 3;
    }
}
