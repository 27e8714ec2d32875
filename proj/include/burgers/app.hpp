#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "burgers/assembler.hpp"
#include "burgers/characteristics.hpp"
#include "burgers/initial_data.hpp"
#include "burgers/operators.hpp"

namespace burgers {

using ordered_json = nlohmann::ordered_json;

/// Malformed or out-of-range run configuration (exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exit-code contract shared by every subcommand.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitFault = 2 };

struct RunConfig {
    int j_lo = -3;
    int j_hi = 3;
    int slabs = 1;
    int nx = 65;
    int nt = 65;
    double epsilon = 0.05;
    double tol = 1e-10;
    double residual_tol = 1e-8;
    int max_iter = 200;
    InitialData bumps;
    std::uint64_t seed = 12345;
    std::string out_dir = "out";

    int n_samples = 100;
    double oracle_bound = 5e-3;
    bool oracle_refine = true;
    double trace_tol = 1e-8;
    double dt_mismatch_tol = 1e-6;
    double envelope_tol = 1e-6;

    SolverConfig solver() const { return SolverConfig{tol, max_iter, residual_tol}; }
    SlabOptions slab_options() const { return SlabOptions{nt, nx, epsilon, SweepOrder::CenterOut}; }

    /// Throws ConfigError on invalid values.
    void validate() const;
};

/// Parses a config document; unknown keys and wrong types are ConfigErrors.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& file);
ordered_json to_json(const RunConfig& cfg);

/// {"bumps": [{"cell": j, "amplitude": a}, ...]}
ordered_json initial_data_to_json(const InitialData& phi);
InitialData initial_data_from_json(const nlohmann::json& doc);

ordered_json to_json(const ValidationReport& rep);
ordered_json to_json(const SBoundReport& rep, const ExpansiveReport& exp);
ordered_json to_json(const OracleErrorReport& rep);
ordered_json to_json(const InterfaceReport& rep);
ordered_json to_json(const EnvelopeReport& rep);

/// Snapshot CSV: header `k,j,t,x,u,ut,ux`; rows ordered by slab, cell,
/// time (major), space (minor); reals printed with 17 significant digits.
void write_snapshots(std::ostream& out, const GlobalSolution& sol);

/// Writes `text` to `dir / name`, creating `dir` if needed.
void write_text(const std::filesystem::path& dir, const std::string& name, const std::string& text);

// Subcommands. Each writes its artifacts into cfg.out_dir, logs to `log`, and
// returns an ExitCode.
int cmd_validate(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_oracle(const RunConfig& cfg, std::ostream& log);
int cmd_opcheck(const RunConfig& cfg, std::ostream& log);

/// Entry point behind the burgers-tiles executable.
int run_cli(int argc, char** argv);

}  // namespace burgers
