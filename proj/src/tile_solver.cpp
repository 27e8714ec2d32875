#include "burgers/tile_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace burgers {

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("solver tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("solver max_iter must be >= 1");
    if (!(residual_tol > 0.0)) throw std::invalid_argument("solver residual_tol must be > 0");
}

const char* to_string(SolverFault kind) {
    switch (kind) {
        case SolverFault::NonConvergence: return "NonConvergence";
        case SolverFault::ResidualTooLarge: return "ResidualTooLarge";
    }
    return "unknown";
}

double pde_residual_sup(const GridFn& u) {
    const GridFn ut = diff_t(u);
    const GridFn ux = diff_x(u);
    double m = 0.0;
    for (int n = 0; n < u.rows(); ++n)
        for (int i = 0; i < u.cols(); ++i) m = std::max(m, std::abs(ut(n, i) + u(n, i) * ux(n, i)));
    return m;
}

TileSolution picard_differentiated(const OperatorParams& p, const SolverConfig& cfg) {
    p.validate();
    cfg.validate();
    const GridFn data = GridFn::from_rows(p.tile, p.g);

    GridFn u = data;
    std::vector<double> history;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        GridFn next = data - cum_int_t(u.hadamard(diff_x(u)));
        double update = 0.0;
        bool finite = true;
        for (std::size_t k = 0; k < next.values().size(); ++k) {
            const double v = next.values()[k];
            finite = finite && std::isfinite(v);
            update = std::max(update, std::abs(v - u.values()[k]));
        }
        if (!finite || !std::isfinite(update)) {
            std::ostringstream msg;
            msg << "Picard iterate blew up at iteration " << it;
            throw NonConvergence(msg.str(), it, std::numeric_limits<double>::infinity());
        }
        history.push_back(update);
        u = std::move(next);
        if (update < cfg.tol) {
            TileSolution sol{std::move(u), it, update, 0.0, 0.0, 0.0, std::move(history)};
            return sol;
        }
    }
    std::ostringstream msg;
    msg << "no convergence after " << cfg.max_iter << " iterations (last update "
        << history.back() << ")";
    throw NonConvergence(msg.str(), cfg.max_iter, history.back());
}

GridFn correct_integral_form(const GridFn& u, const TraceFn& g) {
    const TileSpec& tile = u.tile();
    if (g.size() != static_cast<std::size_t>(tile.nx)) {
        throw std::invalid_argument("correct_integral_form: trace length != nx");
    }
    // With e = u - g and q = u^2, F = 0 on a grid cell's four corners reduces to
    //   A (e[k][i] + e[k][i-1] - e[k-1][i] - e[k-1][i-1])
    //     + B (q[k][i] - q[k][i-1] + q[k-1][i] - q[k-1][i-1]) = 0
    // with A = hx / 2, B = ht / 4; the edge trace b cancels.
    const double A = 0.5 * tile.hx();
    const double B = 0.25 * tile.ht();

    GridFn out = u;
    for (int k = 1; k < tile.nt; ++k) {
        for (int i = 1; i < tile.nx - 1; ++i) {
            const double e_w = out(k, i - 1) - g[i - 1];
            const double e_s = out(k - 1, i) - g[i];
            const double e_sw = out(k - 1, i - 1) - g[i - 1];
            const double q_w = out(k, i - 1) * out(k, i - 1);
            const double q_s = out(k - 1, i) * out(k - 1, i);
            const double q_sw = out(k - 1, i - 1) * out(k - 1, i - 1);
            const double r = A * (g[i] - e_w + e_s + e_sw) + B * (q_w - q_s + q_sw);
            const double disc = A * A + 4.0 * B * r;
            if (!(disc >= 0.0)) {
                std::ostringstream msg;
                msg << "integral-form correction has no real root at node (" << k << ", " << i
                    << ")";
                throw ResidualTooLarge(msg.str(), 0, 0.0, std::numeric_limits<double>::infinity());
            }
            // root continuous with r / A as B -> 0
            out(k, i) = 2.0 * r / (A + std::sqrt(disc));
        }
    }
    return out;
}

TileSolution solve_tile(const OperatorParams& p, const SolverConfig& cfg) {
    TileSolution sol = picard_differentiated(p, cfg);

    GridFn corrected = [&] {
        try {
            return correct_integral_form(sol.u, p.g);
        } catch (const ResidualTooLarge& e) {
            throw ResidualTooLarge(e.what(), sol.iterations, sol.final_update, e.residual());
        }
    }();
    sol.correction_shift = sup_norm(corrected - sol.u);
    sol.u = std::move(corrected);
    sol.residual_sup = sup_norm(residual_F(sol.u, p));
    sol.pde_residual_sup = pde_residual_sup(sol.u);

    if (!(sol.residual_sup <= cfg.residual_tol)) {
        std::ostringstream msg;
        msg << "integral residual " << sol.residual_sup << " above residual_tol "
            << cfg.residual_tol;
        throw ResidualTooLarge(msg.str(), sol.iterations, sol.final_update, sol.residual_sup);
    }
    return sol;
}

VerificationRecord verify_solution(const TileSolution& sol, const OperatorParams& p) {
    VerificationRecord rec;
    const GridFn& u = sol.u;
    rec.residual_sup = sup_norm(residual_F(u, p));
    rec.pde_residual_sup = pde_residual_sup(u);
    for (int i = 0; i < u.cols(); ++i)
        rec.bottom_mismatch = std::max(rec.bottom_mismatch, std::abs(u(0, i) - p.g[i]));

    const GridFn ux = diff_x(u);
    const int last = u.cols() - 1;
    for (int n = 0; n < u.rows(); ++n) {
        rec.left_trace = std::max(rec.left_trace, std::abs(u(n, 0)));
        rec.right_trace = std::max(rec.right_trace, std::abs(u(n, last)));
        rec.left_dx = std::max(rec.left_dx, std::abs(ux(n, 0)));
        rec.right_dx = std::max(rec.right_dx, std::abs(ux(n, last)));
    }
    return rec;
}

ConservationReport conservation(const GridFn& u) {
    ConservationReport rep;
    const double hx = u.tile().hx();
    std::vector<double> sq(static_cast<std::size_t>(u.cols()));
    for (int n = 0; n < u.rows(); ++n) {
        const auto row = u.row(n);
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = row[i] * row[i];
        const double mass = trapezoid(row, hx);
        const double energy = trapezoid(sq, hx);
        if (n == 0) {
            rep.mass0 = mass;
            rep.energy0 = energy;
        }
        rep.mass_drift = std::max(rep.mass_drift, std::abs(mass - rep.mass0));
        rep.energy_drift = std::max(rep.energy_drift, std::abs(energy - rep.energy0));
    }
    return rep;
}

}  // namespace burgers
