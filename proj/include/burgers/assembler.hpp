#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "burgers/initial_data.hpp"
#include "burgers/tile_solver.hpp"

namespace burgers {

enum class SweepOrder {
    CenterOut,    // j = 0, 1, 2, ..., then -1, -2, ...
    LeftToRight,
    RightToLeft,
};

struct SlabOptions {
    int nt = 65;
    int nx = 65;
    double eps0 = 0.05;
    SweepOrder order = SweepOrder::CenterOut;
};

/// All tiles [k, k+1] x [j, j+1] for j in [j_lo, j_hi].
struct SlabSolution {
    int slab_k = 0;
    int j_lo = 0;
    int j_hi = -1;
    std::map<int, TileSolution> tiles;
    std::map<int, OperatorParams> params;
    /// Per cell: sup |F(u_j)| re-evaluated with the left neighbour's actual
    /// right-edge trace as b (tiles are solved with b = 0).
    std::map<int, double> neighbor_trace_residual;

    const TileSolution& tile(int j) const { return tiles.at(j); }
};

/// A tile failure tagged with its slab and cell.
class TileFailure : public std::runtime_error {
public:
    TileFailure(int slab_k, int cell_j, const SolverError& cause);

    int slab() const { return slab_k_; }
    int cell() const { return cell_j_; }
    SolverFault kind() const { return kind_; }
    int iterations() const { return iterations_; }
    double last_update() const { return last_update_; }

private:
    int slab_k_;
    int cell_j_;
    SolverFault kind_;
    int iterations_;
    double last_update_;
};

/// Cells visited in sweep order.
std::vector<int> sweep_cells(int j_lo, int j_hi, SweepOrder order);

/// Solves every cell of slab k from per-cell bottom traces (missing cells are
/// zero). Traces must vanish to 1e-8 at every cell endpoint.
SlabSolution solve_slab(int slab_k, const std::map<int, TraceFn>& data, int j_lo, int j_hi,
                        const SolverConfig& cfg, const SlabOptions& opts = {});

struct InterfaceMetrics {
    int x = 0;  // interface position: between cell x-1 and cell x
    double left_trace = 0.0;
    double right_trace = 0.0;
    double left_dx = 0.0;
    double right_dx = 0.0;
    double dt_mismatch = 0.0;
    double value_mismatch = 0.0;
};

struct InterfaceReport {
    std::vector<InterfaceMetrics> interfaces;
    double max_trace = 0.0;
    double max_dx = 0.0;
    double max_dt_mismatch = 0.0;
    double max_value_mismatch = 0.0;

    /// Value traces within `trace_tol` and u_t mismatch within `dt_tol`.
    bool pass(double trace_tol = 1e-8, double dt_tol = 1e-6) const;
};

InterfaceReport check_interfaces(const SlabSolution& s);

/// bound_m(j) = 2^-((|j|+1) / 2^(m-1)) for the m-th slab (m = k + 1).
/// m = 1, 2 are the stated bounds; m >= 3 extrapolates the pattern.
double envelope_bound(int slab_k, int cell_j);
inline bool envelope_extrapolated(int slab_k) { return slab_k >= 2; }

struct CellEnvelope {
    int cell = 0;
    double bound = 0.0;
    double sup_u = 0.0;
    double sup_ut = 0.0;
    double sup_ux = 0.0;
    double margin_u = 0.0;
    double margin_ut = 0.0;
    double margin_ux = 0.0;
};

struct EnvelopeReport {
    int slab_k = 0;
    bool extrapolated = false;
    std::vector<CellEnvelope> cells;
    double min_margin_u = 0.0;
    double min_margin_ut = 0.0;
    double min_margin_ux = 0.0;

    bool pass_u(double tol = 1e-6) const { return min_margin_u >= -tol; }
    bool pass_ut(double tol = 1e-6) const { return min_margin_ut >= -tol; }
    bool pass_ux(double tol = 1e-6) const { return min_margin_ux >= -tol; }
    bool pass(double tol = 1e-6) const { return pass_u(tol) && pass_ut(tol) && pass_ux(tol); }
};

EnvelopeReport check_envelope(const SlabSolution& s);

struct SlabFailure {
    int slab_k = 0;
    int cell_j = 0;
    SolverFault kind = SolverFault::NonConvergence;
    int iterations = 0;
    double last_update = 0.0;
    std::string message;
};

struct GlobalSolution {
    int j_lo = 0;
    int j_hi = -1;
    std::vector<SlabSolution> slabs;  // completed slabs, in time order
    std::optional<SlabFailure> failure;

    bool complete(int requested_slabs) const {
        return !failure && static_cast<int>(slabs.size()) == requested_slabs;
    }
};

/// Slab 0 starts from phi; slab k+1 starts from slab k's top row, cell by cell.
/// Stops at the first failing slab and keeps the completed ones.
/// Throws std::invalid_argument when phi fails validation or slabs < 1.
GlobalSolution advance(const InitialData& phi, int slabs, int j_lo, int j_hi,
                       const SolverConfig& cfg, const SlabOptions& opts = {});

/// advance() without the validation gate; used to run data that fails the
/// hypothesis up to its first solver fault.
GlobalSolution advance_unchecked(const InitialData& phi, int slabs, int j_lo, int j_hi,
                                 const SolverConfig& cfg, const SlabOptions& opts = {});

}  // namespace burgers
