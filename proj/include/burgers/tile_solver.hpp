#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "burgers/grid.hpp"
#include "burgers/operators.hpp"

namespace burgers {

struct SolverConfig {
    double tol = 1e-10;           // stop when sup |u^{n+1} - u^n| < tol
    int max_iter = 200;
    double residual_tol = 1e-8;   // acceptance threshold on sup |F(u)|

    void validate() const;
};

enum class SolverFault { NonConvergence, ResidualTooLarge };

const char* to_string(SolverFault kind);

class SolverError : public std::runtime_error {
public:
    SolverError(SolverFault kind, const std::string& what, int iterations, double last_update,
                double residual)
        : std::runtime_error(what),
          kind_(kind),
          iterations_(iterations),
          last_update_(last_update),
          residual_(residual) {}

    SolverFault kind() const { return kind_; }
    int iterations() const { return iterations_; }
    double last_update() const { return last_update_; }
    double residual() const { return residual_; }

private:
    SolverFault kind_;
    int iterations_;
    double last_update_;
    double residual_;
};

/// max_iter reached (or the iterate blew up) before the update dropped below tol.
class NonConvergence : public SolverError {
public:
    NonConvergence(const std::string& what, int iterations, double last_update)
        : SolverError(SolverFault::NonConvergence, what, iterations, last_update, 0.0) {}
};

/// The iteration settled but the integral residual stayed above residual_tol.
class ResidualTooLarge : public SolverError {
public:
    ResidualTooLarge(const std::string& what, int iterations, double last_update, double residual)
        : SolverError(SolverFault::ResidualTooLarge, what, iterations, last_update, residual) {}
};

struct TileSolution {
    GridFn u;
    int iterations = 0;
    double final_update = 0.0;
    double residual_sup = 0.0;      // sup |F(u)|
    double pde_residual_sup = 0.0;  // sup |u_t + u u_x| with grid differences
    /// sup |u - u_picard|: how far the integral-equation correction moved the
    /// Picard fixed point.
    double correction_shift = 0.0;
    std::vector<double> update_history;
};

/// sup |diff_t u + u diff_x u|.
double pde_residual_sup(const GridFn& u);

/// Picard iterate of the x-differentiated Volterra form
///   u^{n+1} = g - int_t (u^n * diff_x u^n),   u^0 = g,
/// stopping when the sup-norm update drops below cfg.tol. Returns the last
/// iterate and its update history; throws NonConvergence otherwise.
TileSolution picard_differentiated(const OperatorParams& p, const SolverConfig& cfg);

/// Re-solves the interior columns of `u` so that the trapezoid integral
/// equation F(u) = 0 holds node by node. The bottom row and both lateral
/// columns are kept. Each node is a quadratic a*v + b*v^2 = r solved in
/// closed form; throws ResidualTooLarge when no real root exists.
GridFn correct_integral_form(const GridFn& u, const TraceFn& g);

/// Solves the tile's integral equation: Picard on the differentiated form,
/// then the integral-form correction, then the residual acceptance check.
TileSolution solve_tile(const OperatorParams& p, const SolverConfig& cfg = {});

struct VerificationRecord {
    double residual_sup = 0.0;
    double pde_residual_sup = 0.0;
    double bottom_mismatch = 0.0;  // sup |u(t_0, x) - g(x)|
    double left_trace = 0.0;       // sup_t |u(t, left)|
    double right_trace = 0.0;      // sup_t |u(t, right)|
    double left_dx = 0.0;          // sup_t |diff_x u(t, left)|
    double right_dx = 0.0;         // sup_t |diff_x u(t, right)|
};

VerificationRecord verify_solution(const TileSolution& sol, const OperatorParams& p);

/// Drift of the cell integrals of u and u^2 across the tile's time rows
/// (trapezoid in x, measured against the bottom row).
struct ConservationReport {
    double mass0 = 0.0;
    double energy0 = 0.0;
    double mass_drift = 0.0;
    double energy_drift = 0.0;
};

ConservationReport conservation(const GridFn& u);

}  // namespace burgers
