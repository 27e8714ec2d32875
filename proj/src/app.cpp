#include "burgers/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "CLI11.hpp"

namespace burgers {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Onto witness: T(v / (1+eps)) and v may differ only by rounding.
constexpr double kOntoTol = 1e-15;
constexpr double kExpansiveTol = 1e-12;
constexpr double kIdentityTol = 1e-12;
constexpr double kBoundSlack = 1e-6;

ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

const json& require(const json& doc, const std::string& key) {
    if (!doc.contains(key)) throw ConfigError("missing key '" + key + "'");
    return doc.at(key);
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError("'" + key + "' is out of range");
    return static_cast<int>(x);
}

double as_real(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + key + "' must be finite");
    return x;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string failed_list(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (j_lo > j_hi) throw ConfigError("cells: lower cell exceeds upper cell");
    if (slabs < 1) throw ConfigError("slabs must be >= 1");
    if (nx < 3 || nx % 2 == 0) throw ConfigError("nx must be odd and >= 3");
    if (nt < 3 || nt % 2 == 0) throw ConfigError("nt must be odd and >= 3");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
    if (!(tol > 0.0)) throw ConfigError("tol must be > 0");
    if (!(residual_tol > 0.0)) throw ConfigError("residual_tol must be > 0");
    if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
    if (n_samples < 0) throw ConfigError("n_samples must be >= 0");
    if (!(oracle_bound > 0.0)) throw ConfigError("oracle_bound must be > 0");
    if (!(trace_tol > 0.0 && dt_mismatch_tol > 0.0 && envelope_tol >= 0.0))
        throw ConfigError("check tolerances must be positive");
    if (!bumps.empty() && (bumps.min_cell() < j_lo || bumps.max_cell() > j_hi))
        throw ConfigError("initial data lies outside the configured cells");
}

InitialData initial_data_from_json(const json& doc) {
    InitialData phi;
    try {
        if (doc.is_object() && doc.contains("bumps")) {
            const json& arr = doc.at("bumps");
            if (!arr.is_array()) throw ConfigError("'bumps' must be an array");
            for (const auto& b : arr) {
                if (!b.is_object()) throw ConfigError("each bump must be an object");
                phi.add_bump(as_int(require(b, "cell"), "cell"),
                             as_real(require(b, "amplitude"), "amplitude"));
            }
        }
        if (doc.is_object() && doc.contains("raw")) {
            const json& arr = doc.at("raw");
            if (!arr.is_array()) throw ConfigError("'raw' must be an array");
            for (const auto& r : arr) {
                RawCell cell;
                cell.cell = as_int(require(r, "cell"), "cell");
                const json& vals = require(r, "values");
                if (!vals.is_array()) throw ConfigError("raw 'values' must be an array");
                for (const auto& v : vals) cell.values.push_back(as_real(v, "values"));
                phi.add_raw(std::move(cell));
            }
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return phi;
}

ordered_json initial_data_to_json(const InitialData& phi) {
    ordered_json out;
    out["bumps"] = ordered_json::array();
    for (const auto& b : phi.bumps())
        out["bumps"].push_back({{"cell", b.cell}, {"amplitude", b.amplitude}});
    if (phi.has_raw()) {
        out["raw"] = ordered_json::array();
        for (const auto& [j, raw] : phi.raw_cells())
            out["raw"].push_back({{"cell", j}, {"values", raw.values}});
    }
    return out;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{
        "cells",       "slabs",          "nx",           "nt",           "epsilon",
        "tol",         "residual_tol",   "max_iter",     "bumps",        "raw",
        "seed",        "out_dir",        "n_samples",    "oracle_bound", "oracle_refine",
        "trace_tol",   "dt_mismatch_tol", "envelope_tol"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

    RunConfig cfg;
    if (doc.contains("cells")) {
        const json& c = doc.at("cells");
        if (!c.is_array() || c.size() != 2) throw ConfigError("'cells' must be [lo, hi]");
        cfg.j_lo = as_int(c[0], "cells");
        cfg.j_hi = as_int(c[1], "cells");
    }
    auto get_int = [&](const char* key, int& dst) {
        if (doc.contains(key)) dst = as_int(doc.at(key), key);
    };
    auto get_real = [&](const char* key, double& dst) {
        if (doc.contains(key)) dst = as_real(doc.at(key), key);
    };
    get_int("slabs", cfg.slabs);
    get_int("nx", cfg.nx);
    get_int("nt", cfg.nt);
    get_real("epsilon", cfg.epsilon);
    get_real("tol", cfg.tol);
    get_real("residual_tol", cfg.residual_tol);
    get_int("max_iter", cfg.max_iter);
    get_int("n_samples", cfg.n_samples);
    get_real("oracle_bound", cfg.oracle_bound);
    get_real("trace_tol", cfg.trace_tol);
    get_real("dt_mismatch_tol", cfg.dt_mismatch_tol);
    get_real("envelope_tol", cfg.envelope_tol);
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned())
            throw ConfigError("'seed' must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("out_dir")) {
        if (!doc.at("out_dir").is_string()) throw ConfigError("'out_dir' must be a string");
        cfg.out_dir = doc.at("out_dir").get<std::string>();
    }
    if (doc.contains("oracle_refine")) {
        if (!doc.at("oracle_refine").is_boolean()) throw ConfigError("'oracle_refine' must be a boolean");
        cfg.oracle_refine = doc.at("oracle_refine").get<bool>();
    }
    cfg.bumps = initial_data_from_json(doc);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return parse_config(doc);
}

ordered_json to_json(const RunConfig& cfg) {
    ordered_json out;
    out["cells"] = {cfg.j_lo, cfg.j_hi};
    out["slabs"] = cfg.slabs;
    out["nx"] = cfg.nx;
    out["nt"] = cfg.nt;
    out["epsilon"] = cfg.epsilon;
    out["tol"] = cfg.tol;
    out["residual_tol"] = cfg.residual_tol;
    out["max_iter"] = cfg.max_iter;
    const ordered_json data = initial_data_to_json(cfg.bumps);
    out["bumps"] = data["bumps"];
    if (data.contains("raw")) out["raw"] = data["raw"];
    out["seed"] = cfg.seed;
    out["out_dir"] = cfg.out_dir;
    out["n_samples"] = cfg.n_samples;
    out["oracle_bound"] = cfg.oracle_bound;
    out["oracle_refine"] = cfg.oracle_refine;
    out["trace_tol"] = cfg.trace_tol;
    out["dt_mismatch_tol"] = cfg.dt_mismatch_tol;
    out["envelope_tol"] = cfg.envelope_tol;
    return out;
}

ordered_json to_json(const ValidationReport& rep) {
    ordered_json out;
    out["pass"] = rep.pass();
    out["failed"] = rep.failed();
    out["clauses"] = ordered_json::array();
    for (const auto& c : rep.clauses)
        out["clauses"].push_back(
            {{"name", c.name}, {"pass", c.pass}, {"measured", num(c.measured)}, {"limit", num(c.limit)}});
    out["sup_phi"] = num(rep.sup_phi);
    out["sup_dphi"] = num(rep.sup_dphi);
    out["l2"] = num(rep.l2);
    out["max_endpoint_value"] = num(rep.max_endpoint_value);
    out["max_endpoint_derivative"] = num(rep.max_endpoint_derivative);
    out["cells"] = ordered_json::array();
    for (const auto& c : rep.cells)
        out["cells"].push_back({{"cell", c.cell},
                                {"bound", num(c.bound)},
                                {"sup_phi", num(c.sup_phi)},
                                {"sup_dphi", num(c.sup_dphi)},
                                {"margin_phi", num(c.margin_phi)},
                                {"margin_dphi", num(c.margin_dphi)}});
    return out;
}

ordered_json to_json(const SBoundReport& rep, const ExpansiveReport& exp) {
    ordered_json out;
    out["seed"] = rep.seed;
    out["n_samples"] = rep.n_samples;
    out["h_min"] = num(exp.h_min);
    out["h_max"] = num(exp.h_max);
    out["pairs_used"] = exp.pairs_used;
    out["pairs_skipped"] = exp.pairs_skipped;
    out["onto_defect"] = num(exp.onto_defect);
    out["onto_ball_ratio"] = num(exp.onto_ball_ratio);
    out["ratio_s"] = num(rep.ratio_s);
    out["ratio_st"] = num(rep.ratio_st);
    out["ratio_sx"] = num(rep.ratio_sx);
    out["max_c1_su"] = num(rep.max_c1_su);
    out["worst_s"] = rep.worst_s;
    out["worst_st"] = rep.worst_st;
    out["worst_sx"] = rep.worst_sx;
    out["first_violation"] = rep.first_violation;
    return out;
}

ordered_json to_json(const OracleErrorReport& rep) {
    ordered_json out;
    out["sup_err"] = num(rep.sup_err);
    out["l2_err"] = num(rep.l2_err);
    out["ratio"] = rep.ratio ? num(*rep.ratio) : ordered_json(nullptr);
    out["t_shock"] = num(rep.t_shock);
    out["t_max"] = num(rep.t_max);
    out["nodes"] = rep.nodes;
    return out;
}

ordered_json to_json(const InterfaceReport& rep) {
    ordered_json out;
    out["max_trace"] = num(rep.max_trace);
    out["max_dx"] = num(rep.max_dx);
    out["max_dt_mismatch"] = num(rep.max_dt_mismatch);
    out["max_value_mismatch"] = num(rep.max_value_mismatch);
    out["interfaces"] = ordered_json::array();
    for (const auto& m : rep.interfaces)
        out["interfaces"].push_back({{"x", m.x},
                                     {"left_trace", num(m.left_trace)},
                                     {"right_trace", num(m.right_trace)},
                                     {"left_dx", num(m.left_dx)},
                                     {"right_dx", num(m.right_dx)},
                                     {"dt_mismatch", num(m.dt_mismatch)},
                                     {"value_mismatch", num(m.value_mismatch)}});
    return out;
}

ordered_json to_json(const EnvelopeReport& rep) {
    ordered_json out;
    out["slab"] = rep.slab_k;
    out["extrapolated"] = rep.extrapolated;
    out["min_margin_u"] = num(rep.min_margin_u);
    out["min_margin_ut"] = num(rep.min_margin_ut);
    out["min_margin_ux"] = num(rep.min_margin_ux);
    out["cells"] = ordered_json::array();
    for (const auto& c : rep.cells)
        out["cells"].push_back({{"cell", c.cell},
                                {"bound", num(c.bound)},
                                {"sup_u", num(c.sup_u)},
                                {"sup_ut", num(c.sup_ut)},
                                {"sup_ux", num(c.sup_ux)},
                                {"margin_u", num(c.margin_u)},
                                {"margin_ut", num(c.margin_ut)},
                                {"margin_ux", num(c.margin_ux)}});
    return out;
}

void write_snapshots(std::ostream& out, const GlobalSolution& sol) {
    out << "k,j,t,x,u,ut,ux\n";
    char line[256];
    for (const auto& slab : sol.slabs) {
        for (const auto& [j, tile_sol] : slab.tiles) {
            const GridFn& u = tile_sol.u;
            const GridFn ut = diff_t(u);
            const GridFn ux = diff_x(u);
            const TileSpec& tile = u.tile();
            for (int n = 0; n < u.rows(); ++n) {
                for (int i = 0; i < u.cols(); ++i) {
                    std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                                  slab.slab_k, j, tile.t(n), tile.x(i), u(n, i), ut(n, i),
                                  ux(n, i));
                    out << line;
                }
            }
        }
    }
}

void write_text(const fs::path& dir, const std::string& name, const std::string& text) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const ValidationReport rep = validate(cfg.bumps, cfg.j_lo, cfg.j_hi, ValidateOptions{cfg.nx});
    ordered_json out;
    out["config"] = to_json(cfg);
    out["validation"] = to_json(rep);
    write_text(cfg.out_dir, "validation.json", out.dump(2) + "\n");
    write_text(cfg.out_dir, "timings.json", ordered_json{{"validate_s", seconds_since(start)}}.dump(2) + "\n");
    if (rep.pass()) {
        log << "validation passed\n";
        return kExitPass;
    }
    log << "validation failed: " << failed_list(rep.failed()) << "\n";
    return kExitCheckFailed;
}

namespace {

std::string shock_diagnostic(const InitialData& phi, int slabs) {
    const double ts = shock_time(phi);
    std::ostringstream msg;
    msg.precision(4);
    if (std::isfinite(ts)) {
        msg << "shock time T* = " << ts << " (3 sqrt(3) / (16 a_max), a_max = " << phi.max_amplitude()
            << ")";
        if (ts <= slabs) msg << "; requested t range [0, " << slabs << "] reaches past T*";
    } else {
        msg << "no shock: phi' >= 0 everywhere";
    }
    return msg.str();
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    ordered_json timings;
    auto start = std::chrono::steady_clock::now();
    const ValidationReport vrep = validate(cfg.bumps, cfg.j_lo, cfg.j_hi, ValidateOptions{cfg.nx});
    timings["validate_s"] = seconds_since(start);

    ordered_json report;
    report["config"] = to_json(cfg);
    report["validation"] = to_json(vrep);
    std::vector<std::string> failed;
    if (!vrep.pass()) {
        failed.push_back("validation");
        log << "initial data fails validation: " << failed_list(vrep.failed()) << "\n";
    }

    // Data outside the hypothesis still runs, up to its first solver fault.
    start = std::chrono::steady_clock::now();
    GlobalSolution sol;
    try {
        sol = advance_unchecked(cfg.bumps, cfg.slabs, cfg.j_lo, cfg.j_hi, cfg.solver(), cfg.slab_options());
    } catch (const std::invalid_argument& e) {
        if (vrep.pass()) throw;
        report["pass"] = false;
        report["failed_checks"] = failed;
        report["error"] = e.what();
        write_text(cfg.out_dir, "validation.json", report["validation"].dump(2) + "\n");
        write_text(cfg.out_dir, "report.json", report.dump(2) + "\n");
        write_text(cfg.out_dir, "timings.json", timings.dump(2) + "\n");
        log << "cannot solve: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    timings["solve_s"] = seconds_since(start);

    const double ts = shock_time(cfg.bumps);
    report["t_shock"] = num(ts);

    start = std::chrono::steady_clock::now();
    report["slabs"] = ordered_json::array();
    for (const auto& slab : sol.slabs) {
        ordered_json s;
        s["slab"] = slab.slab_k;
        s["cells"] = ordered_json::array();
        double worst_residual = 0.0;
        for (const auto& [j, t] : slab.tiles) {
            const ConservationReport cons = conservation(t.u);
            const double nbr = slab.neighbor_trace_residual.at(j);
            worst_residual = std::max({worst_residual, t.residual_sup, nbr});
            s["cells"].push_back({{"cell", j},
                                  {"epsilon", slab.params.at(j).epsilon},
                                  {"iterations", t.iterations},
                                  {"final_update", num(t.final_update)},
                                  {"residual_sup", num(t.residual_sup)},
                                  {"neighbor_trace_residual", num(nbr)},
                                  {"pde_residual_sup", num(t.pde_residual_sup)},
                                  {"correction_shift", num(t.correction_shift)},
                                  {"mass_drift", num(cons.mass_drift)},
                                  {"energy_drift", num(cons.energy_drift)}});
        }
        const EnvelopeReport env = check_envelope(slab);
        const InterfaceReport itf = check_interfaces(slab);
        s["envelope"] = to_json(env);
        s["interfaces"] = to_json(itf);

        const bool res_ok = worst_residual <= cfg.residual_tol;
        const bool itf_ok = itf.pass(cfg.trace_tol, cfg.dt_mismatch_tol);
        s["checks"] = {{"residual", res_ok},
                       {"envelope_u", env.pass_u(cfg.envelope_tol)},
                       {"envelope_ut", env.pass_ut(cfg.envelope_tol)},
                       {"envelope_ux", env.pass_ux(cfg.envelope_tol)},
                       {"interfaces", itf_ok}};
        for (const auto& [name, ok] : s["checks"].items())
            if (!ok.get<bool>()) {
                const std::string tag = name + "@slab" + std::to_string(slab.slab_k);
                failed.push_back(tag);
            }
        report["slabs"].push_back(std::move(s));
    }

    if (sol.failure) {
        const SlabFailure& f = *sol.failure;
        report["failure"] = {{"slab", f.slab_k},
                             {"cell", f.cell_j},
                             {"kind", to_string(f.kind)},
                             {"iterations", f.iterations},
                             {"last_update", num(f.last_update)},
                             {"message", f.message},
                             {"diagnostic", shock_diagnostic(cfg.bumps, cfg.slabs)}};
    } else if (ts > cfg.slabs) {
        report["oracle"] = to_json(compare(sol, cfg.bumps));
    } else {
        report["oracle"] = {{"skipped", "requested t range reaches the shock time"}};
    }

    if (!sol.slabs.empty() && cfg.n_samples > 0) {
        const int j0 = std::clamp(0, cfg.j_lo, cfg.j_hi);
        const OperatorParams& p = sol.slabs.front().params.at(j0);
        ordered_json op = to_json(check_S_bounds(p, cfg.n_samples, cfg.seed),
                                  check_expansive(p, cfg.n_samples, cfg.seed));
        op["cell"] = j0;
        op["epsilon"] = p.epsilon;
        op["identity_defect"] = num(check_fixed_point_identity(p, cfg.n_samples, cfg.seed).max_defect);
        report["operators"] = std::move(op);
    }
    timings["checks_s"] = seconds_since(start);

    report["pass"] = !sol.failure && failed.empty();
    report["failed_checks"] = failed;

    start = std::chrono::steady_clock::now();
    std::ostringstream csv;
    write_snapshots(csv, sol);
    write_text(cfg.out_dir, "snapshots.csv", csv.str());
    write_text(cfg.out_dir, "validation.json", report["validation"].dump(2) + "\n");
    write_text(cfg.out_dir, "report.json", report.dump(2) + "\n");
    timings["write_s"] = seconds_since(start);
    write_text(cfg.out_dir, "timings.json", timings.dump(2) + "\n");

    if (sol.failure) {
        log << "convergence fault: " << sol.failure->message << "\n"
            << shock_diagnostic(cfg.bumps, cfg.slabs) << "\n";
        return kExitFault;
    }
    if (!failed.empty()) {
        log << "checks failed: " << failed_list(failed) << "\n";
        return kExitCheckFailed;
    }
    log << "solve passed: " << sol.slabs.size() << " slab(s), cells [" << cfg.j_lo << ", "
        << cfg.j_hi << "]\n";
    return kExitPass;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& log) {
    ordered_json timings;
    ordered_json out;
    out["config"] = to_json(cfg);
    out["bound"] = cfg.oracle_bound;
    const double ts = shock_time(cfg.bumps);
    out["t_shock"] = num(ts);

    auto finish = [&](bool pass, int code, const std::string& msg) {
        out["pass"] = pass;
        write_text(cfg.out_dir, "oracle.json", out.dump(2) + "\n");
        write_text(cfg.out_dir, "timings.json", timings.dump(2) + "\n");
        log << msg << "\n";
        return code;
    };

    if (ts <= cfg.slabs) {
        out["error"] = "past shock";
        return finish(false, kExitCheckFailed, "oracle undefined: " + shock_diagnostic(cfg.bumps, cfg.slabs));
    }
    const ValidationReport vrep = validate(cfg.bumps, cfg.j_lo, cfg.j_hi, ValidateOptions{cfg.nx});
    if (!vrep.pass()) {
        out["error"] = "initial data fails validation";
        out["failed_clauses"] = vrep.failed();
        return finish(false, kExitCheckFailed, "initial data fails validation: " + failed_list(vrep.failed()));
    }

    auto run = [&](int nt, int nx, const char* timing_key) {
        SlabOptions opts = cfg.slab_options();
        opts.nt = nt;
        opts.nx = nx;
        const auto start = std::chrono::steady_clock::now();
        GlobalSolution sol = advance(cfg.bumps, cfg.slabs, cfg.j_lo, cfg.j_hi, cfg.solver(), opts);
        timings[timing_key] = seconds_since(start);
        return sol;
    };

    const GlobalSolution coarse = run(cfg.nt, cfg.nx, "solve_s");
    if (coarse.failure) {
        out["error"] = coarse.failure->message;
        return finish(false, kExitFault, "convergence fault: " + coarse.failure->message);
    }
    auto start = std::chrono::steady_clock::now();
    OracleErrorReport rep = compare(coarse, cfg.bumps);
    timings["compare_s"] = seconds_since(start);

    if (cfg.oracle_refine) {
        const GlobalSolution fine = run(2 * cfg.nt - 1, 2 * cfg.nx - 1, "refined_solve_s");
        if (fine.failure) {
            out["error"] = fine.failure->message;
            return finish(false, kExitFault, "convergence fault on the refined grid: " + fine.failure->message);
        }
        start = std::chrono::steady_clock::now();
        const OracleErrorReport fine_rep = compare(fine, cfg.bumps);
        timings["refined_compare_s"] = seconds_since(start);
        out["refined"] = to_json(fine_rep);
        rep = with_refinement(rep, fine_rep);
    }
    out["oracle"] = to_json(rep);

    std::ostringstream msg;
    msg << "oracle sup error " << rep.sup_err << " (bound " << cfg.oracle_bound << ")";
    if (rep.ratio) msg << ", refinement ratio " << *rep.ratio;
    if (rep.sup_err <= cfg.oracle_bound) return finish(true, kExitPass, msg.str());
    return finish(false, kExitCheckFailed, msg.str() + " exceeds the bound");
}

int cmd_opcheck(const RunConfig& cfg, std::ostream& log) {
    if (cfg.n_samples < 1) {
        log << "opcheck needs n_samples >= 1\n";
        return kExitFault;
    }
    const auto start = std::chrono::steady_clock::now();
    ordered_json out;
    out["config"] = to_json(cfg);
    out["bounds"] = {{"s", kBoundS}, {"st", kBoundSt}, {"sx", kBoundSx}, {"slack", kBoundSlack}};
    out["cells"] = ordered_json::array();
    ordered_json violations = ordered_json::array();

    for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
        const TileSpec tile{0, j, cfg.nt, cfg.nx};
        const OperatorParams p =
            OperatorParams::with_data(tile, sample_bottom(cfg.bumps, tile), epsilon_for_cell(j, cfg.epsilon));
        const ExpansiveReport exp = check_expansive(p, cfg.n_samples, cfg.seed);
        const SBoundReport sb = check_S_bounds(p, cfg.n_samples, cfg.seed);
        const FixedPointIdentityReport id = check_fixed_point_identity(p, cfg.n_samples, cfg.seed);

        ordered_json c = to_json(sb, exp);
        c["cell"] = j;
        c["epsilon"] = p.epsilon;
        c["identity_defect"] = num(id.max_defect);

        auto violate = [&](const char* check, int sample, double measured, double limit) {
            violations.push_back({{"cell", j},
                                  {"check", check},
                                  {"seed", cfg.seed},
                                  {"sample", sample},
                                  {"measured", num(measured)},
                                  {"limit", num(limit)}});
        };
        const double h = 1.0 + p.epsilon;
        if (exp.pairs_used == 0) violate("expansive_pairs", -1, 0.0, 1.0);
        if (std::abs(exp.h_min - h) > kExpansiveTol) violate("expansive_h_min", -1, exp.h_min, h);
        if (std::abs(exp.h_max - h) > kExpansiveTol) violate("expansive_h_max", -1, exp.h_max, h);
        if (exp.onto_defect > kOntoTol) violate("onto_witness", -1, exp.onto_defect, kOntoTol);
        if (exp.onto_ball_ratio > 1.0) violate("onto_ball", -1, exp.onto_ball_ratio, 1.0);
        if (sb.ratio_s > kBoundS + kBoundSlack) violate("S_bound", sb.worst_s, sb.ratio_s, kBoundS);
        if (sb.ratio_st > kBoundSt + kBoundSlack) violate("St_bound", sb.worst_st, sb.ratio_st, kBoundSt);
        if (sb.ratio_sx > kBoundSx + kBoundSlack) violate("Sx_bound", sb.worst_sx, sb.ratio_sx, kBoundSx);
        if (sb.max_c1_su > kBallRadius + kBoundSlack) violate("S_ball", -1, sb.max_c1_su, kBallRadius);
        if (id.max_defect > kIdentityTol)
            violate("fixed_point_identity", id.worst_sample, id.max_defect, kIdentityTol);
        out["cells"].push_back(std::move(c));
    }
    out["violations"] = violations;
    out["pass"] = violations.empty();
    const double elapsed = seconds_since(start);
    write_text(cfg.out_dir, "opcheck.json", out.dump(2) + "\n");
    write_text(cfg.out_dir, "timings.json", ordered_json{{"opcheck_s", elapsed}}.dump(2) + "\n");

    if (violations.empty()) {
        log << "operator checks passed on " << (cfg.j_hi - cfg.j_lo + 1) << " cell(s)\n";
        return kExitPass;
    }
    log << violations.size() << " operator check violation(s); first: " << violations[0].dump() << "\n";
    return kExitCheckFailed;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Tile-by-tile solver for the inviscid Burgers equation"};
    std::string command;
    std::string config_file;
    std::string out_dir;
    int nx = 0, nt = 0;
    app.add_option("command", command, "validate | solve | oracle | opcheck")
        ->required()
        ->check(CLI::IsMember({"validate", "solve", "oracle", "opcheck"}));
    app.add_option("--config", config_file, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory (overrides out_dir)");
    app.add_option("--nx", nx, "x nodes per tile (odd)");
    app.add_option("--nt", nt, "t nodes per tile (odd)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitFault;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_file);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (nx != 0) cfg.nx = nx;
        if (nt != 0) cfg.nt = nt;
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitFault;
    }

    try {
        if (command == "validate") return cmd_validate(cfg, std::cerr);
        if (command == "solve") return cmd_solve(cfg, std::cerr);
        if (command == "oracle") return cmd_oracle(cfg, std::cerr);
        return cmd_opcheck(cfg, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitFault;
}

}  // namespace burgers
