#include "doctest.h"

#include <fstream>
#include <sstream>

#include "burgers/app.hpp"

using namespace burgers;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("burgers_app_test_" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig config(const std::string& text, const std::string& out) {
    RunConfig cfg = parse_config(nlohmann::json::parse(text));
    cfg.out_dir = scratch(out).string();
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("config defaults and overrides") {
    const RunConfig d = parse_config(nlohmann::json::object());
    CHECK(d.j_lo == -3);
    CHECK(d.j_hi == 3);
    CHECK(d.nx == 65);
    CHECK(d.epsilon == 0.05);
    CHECK(d.bumps.empty());

    const RunConfig c = parse_config(nlohmann::json::parse(
        R"({"cells": [-1, 2], "slabs": 2, "nx": 33, "bumps": [{"cell": 1, "amplitude": 0.05}], "seed": 7})"));
    CHECK(c.j_lo == -1);
    CHECK(c.slabs == 2);
    CHECK(c.nx == 33);
    CHECK(c.bumps.amplitude(1) == 0.05);
    CHECK(c.seed == 7);

    const RunConfig back = parse_config(nlohmann::json::parse(to_json(c).dump()));
    CHECK(to_json(back) == to_json(c));
}

TEST_CASE("malformed configs") {
    auto bad = [](const char* text) {
        CHECK_THROWS_AS(parse_config(nlohmann::json::parse(text)), ConfigError);
    };
    bad(R"([1, 2])");
    bad(R"({"nx": 64})");
    bad(R"({"nx": "65"})");
    bad(R"({"cells": [2, 1]})");
    bad(R"({"cells": [0]})");
    bad(R"({"slabs": 0})");
    bad(R"({"epsilon": 1.5})");
    bad(R"({"seed": -1})");
    bad(R"({"bumps": [{"cell": 0}]})");
    bad(R"({"bumps": [{"cell": 0, "amplitude": -0.1}]})");
    bad(R"({"bumps": [{"cell": 9, "amplitude": 0.01}]})");
    bad(R"({"typo_key": 1})");
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("validate command") {
    std::ostringstream log;
    RunConfig pass = config(R"({"bumps": [{"cell": 0, "amplitude": 0.15}]})", "validate_pass");
    CHECK(cmd_validate(pass, log) == kExitPass);
    CHECK(read_json(fs::path(pass.out_dir) / "validation.json")["validation"]["pass"] == true);

    RunConfig fail = config(R"({"bumps": [{"cell": 0, "amplitude": 0.2}]})", "validate_fail");
    CHECK(cmd_validate(fail, log) == kExitCheckFailed);
    const auto v = read_json(fs::path(fail.out_dir) / "validation.json")["validation"];
    CHECK(v["failed"] == nlohmann::json::array({"envelope_dphi"}));

    RunConfig empty = config("{}", "validate_empty");
    CHECK(cmd_validate(empty, log) == kExitPass);
}

TEST_CASE("solve command on zero data") {
    std::ostringstream log;
    RunConfig cfg = config(R"({"cells": [-1, 1], "slabs": 2, "nx": 9, "nt": 9, "n_samples": 5})", "solve_zero");
    CHECK(cmd_solve(cfg, log) == kExitPass);
    std::istringstream csv(slurp(fs::path(cfg.out_dir) / "snapshots.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "k,j,t,x,u,ut,ux");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        CHECK(line.substr(line.size() - 6) == ",0,0,0");
    }
    CHECK(rows == 2 * 3 * 9 * 9);
    const auto report = read_json(fs::path(cfg.out_dir) / "report.json");
    CHECK(report["pass"] == true);
    CHECK(report["t_shock"].is_null());
    CHECK(report["slabs"].size() == 2);
}

TEST_CASE("snapshot rows use 17 significant digits") {
    std::ostringstream log;
    RunConfig cfg = config(R"({"cells": [0, 0], "nx": 5, "nt": 5, "residual_tol": 1e-2, "bumps": [{"cell": 0, "amplitude": 0.1}], "n_samples": 2})", "solve_digits");
    CHECK(cmd_solve(cfg, log) == kExitPass);
    std::istringstream csv(slurp(fs::path(cfg.out_dir) / "snapshots.csv"));
    std::string line;
    std::getline(csv, line);
    std::getline(csv, line);
    CHECK(line.rfind("0,0,0,0,", 0) == 0);
    std::getline(csv, line);
    CHECK(line.rfind("0,0,0,0.25,", 0) == 0);
}

TEST_CASE("solve output is byte-identical across runs") {
    std::ostringstream log;
    const char* text = R"({"cells": [-1, 1], "nx": 17, "nt": 17, "bumps": [{"cell": 0, "amplitude": 0.1}], "n_samples": 10})";
    RunConfig a = config(text, "det_a");
    RunConfig b = config(text, "det_b");
    cmd_solve(a, log);
    cmd_solve(b, log);
    CHECK(slurp(fs::path(a.out_dir) / "snapshots.csv") == slurp(fs::path(b.out_dir) / "snapshots.csv"));
    // the out_dir echo differs; compare everything else
    auto ra = read_json(fs::path(a.out_dir) / "report.json");
    auto rb = read_json(fs::path(b.out_dir) / "report.json");
    ra["config"].erase("out_dir");
    rb["config"].erase("out_dir");
    CHECK(ra.dump() == rb.dump());
}

TEST_CASE("solve reports envelope failures by name") {
    std::ostringstream log;
    RunConfig cfg = config(R"({"bumps": [{"cell": 0, "amplitude": 0.15}], "n_samples": 5})", "solve_env");
    CHECK(cmd_solve(cfg, log) == kExitCheckFailed);
    const auto report = read_json(fs::path(cfg.out_dir) / "report.json");
    CHECK(report["failed_checks"] == nlohmann::json::array({"envelope_ux@slab0"}));
    CHECK(report["oracle"]["sup_err"].get<double>() <= 5e-3);
}

TEST_CASE("solve reports convergence faults with the shock time") {
    std::ostringstream log;
    RunConfig cfg = config(R"({"slabs": 2, "bumps": [{"cell": 0, "amplitude": 0.25}], "n_samples": 5})", "solve_shock");
    CHECK(cmd_solve(cfg, log) == kExitFault);
    CHECK(log.str().find("T* = 1.299") != std::string::npos);
    const auto report = read_json(fs::path(cfg.out_dir) / "report.json");
    CHECK(report["failure"]["cell"] == 0);
    CHECK(report["failure"]["diagnostic"].get<std::string>().find("1.299") != std::string::npos);
}

TEST_CASE("oracle command") {
    std::ostringstream log;
    RunConfig zero = config(R"({"cells": [0, 0], "nx": 9, "nt": 9})", "oracle_zero");
    CHECK(cmd_oracle(zero, log) == kExitPass);
    const auto z = read_json(fs::path(zero.out_dir) / "oracle.json");
    CHECK(z["oracle"]["sup_err"] == 0.0);

    RunConfig shock = config(R"({"slabs": 2, "bumps": [{"cell": 0, "amplitude": 0.25}]})", "oracle_shock");
    CHECK(cmd_oracle(shock, log) == kExitCheckFailed);

    RunConfig tight = config(R"({"cells": [0, 0], "bumps": [{"cell": 0, "amplitude": 0.15}], "oracle_bound": 1e-6, "oracle_refine": false})", "oracle_tight");
    CHECK(cmd_oracle(tight, log) == kExitCheckFailed);
}

TEST_CASE("opcheck command") {
    std::ostringstream log;
    RunConfig cfg = config(R"({"cells": [-1, 1], "bumps": [{"cell": 0, "amplitude": 0.15}]})", "opcheck");
    CHECK(cmd_opcheck(cfg, log) == kExitPass);
    const auto rep = read_json(fs::path(cfg.out_dir) / "opcheck.json");
    CHECK(rep["cells"][1]["h_min"].get<double>() == doctest::Approx(1.05).epsilon(1e-12));

    RunConfig small = config(R"({"cells": [0, 0], "epsilon": 0.01})", "opcheck_eps");
    CHECK(cmd_opcheck(small, log) == kExitPass);
    const auto r2 = read_json(fs::path(small.out_dir) / "opcheck.json");
    CHECK(r2["cells"][0]["h_min"].get<double>() == doctest::Approx(1.01).epsilon(1e-12));

    RunConfig none = config(R"({"n_samples": 0})", "opcheck_none");
    CHECK(cmd_opcheck(none, log) == kExitFault);
}

TEST_CASE("command line") {
    const fs::path dir = scratch("cli");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "bad.json") << "{not json";
        std::ofstream(dir / "ok.json") << R"({"cells": [0, 0], "nx": 9, "nt": 9})";
    }
    auto run = [](std::vector<std::string> args) {
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        return run_cli(static_cast<int>(argv.size()), argv.data());
    };
    const std::string out = (dir / "out").string();
    CHECK(run({"burgers-tiles", "validate", "--config", (dir / "bad.json").string()}) == kExitFault);
    CHECK(run({"burgers-tiles", "explode", "--config", (dir / "ok.json").string()}) == kExitFault);
    CHECK(run({"burgers-tiles", "validate", "--config", (dir / "ok.json").string(), "--out", out}) == kExitPass);
    CHECK(fs::exists(fs::path(out) / "validation.json"));
    CHECK(run({"burgers-tiles", "solve", "--config", (dir / "ok.json").string(), "--out", out, "--nx", "4"}) == kExitFault);
    CHECK(run({"burgers-tiles", "solve", "--config", (dir / "ok.json").string(), "--out", out, "--nx", "17", "--nt", "5"}) == kExitPass);
    CHECK(read_json(fs::path(out) / "report.json")["config"]["nx"] == 17);
}
