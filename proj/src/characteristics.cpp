#include "burgers/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace burgers {

void OracleConfig::validate() const {
    if (!(root_tol > 0.0)) throw std::invalid_argument("oracle root_tol must be > 0");
    if (max_bisections < 1) throw std::invalid_argument("oracle max_bisections must be >= 1");
}

PastShock::PastShock(double t, double t_shock)
    : std::domain_error([&] {
          std::ostringstream msg;
          msg << "t = " << t << " is not before the shock time " << t_shock;
          return msg.str();
      }()),
      t_(t),
      t_shock_(t_shock) {}

double shock_time(const InitialData& phi) {
    double min_slope = -phi.max_amplitude() * kBumpSlopeMax;
    for (const auto& [cell, raw] : phi.raw_cells()) {
        const double x0 = cell;
        const double h = 1.0 / (raw.values.size() - 1);
        for (std::size_t i = 0; i < raw.values.size(); ++i)
            min_slope = std::min(min_slope, phi.derivative(x0 + i * h));
    }
    if (min_slope >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / min_slope;
}

namespace {

template <typename Fn>
double bisect_foot(Fn&& value, double t, double x, double lo, double hi, const OracleConfig& cfg) {
    cfg.validate();
    auto residual = [&](double x0) { return x0 + t * value(x0) - x; };
    double r_lo = residual(lo);
    if (r_lo > 0.0 || residual(hi) < 0.0) {
        throw std::runtime_error("characteristic foot is not bracketed");
    }
    double best = lo, best_r = std::abs(r_lo);
    for (int it = 0; it < cfg.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r = residual(mid);
        if (std::abs(r) < best_r) best = mid, best_r = std::abs(r);
        if (best_r <= cfg.root_tol || mid == lo || mid == hi) break;
        if (r < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return best;
}

}  // namespace

double characteristic_foot(const InitialData& phi, double t, double x, const OracleConfig& cfg) {
    if (t == 0.0) return x;
    const double cell = std::floor(x);
    // bump characteristics stay inside their cell before the shock
    if (phi.raw_cells().empty()) {
        return bisect_foot([&](double y) { return phi.value(y); }, t, x, cell, cell + 1.0, cfg);
    }
    double lo_v = 0.0, hi_v = 0.0;
    for (const auto& [c, raw] : phi.raw_cells()) {
        lo_v = std::min(lo_v, *std::min_element(raw.values.begin(), raw.values.end()));
        hi_v = std::max(hi_v, *std::max_element(raw.values.begin(), raw.values.end()));
    }
    hi_v = std::max(hi_v, phi.max_amplitude());
    return bisect_foot([&](double y) { return phi.value(y); }, t, x, x - t * hi_v, x - t * lo_v, cfg);
}

double eval_exact(const InitialData& phi, double t, double x, const OracleConfig& cfg) {
    const double ts = shock_time(phi);
    if (t < 0.0) throw std::invalid_argument("eval_exact: t must be >= 0");
    if (t >= ts) throw PastShock(t, ts);
    return phi.value(characteristic_foot(phi, t, x, cfg));
}

double characteristic_foot(const Profile& phi, double t, double x, const OracleConfig& cfg) {
    if (t == 0.0) return x;
    return bisect_foot(phi.value, t, x, x - t * phi.value_max, x - t * phi.value_min, cfg);
}

double eval_exact(const Profile& phi, double t, double x, const OracleConfig& cfg) {
    if (t < 0.0) throw std::invalid_argument("eval_exact: t must be >= 0");
    return phi.value(characteristic_foot(phi, t, x, cfg));
}

namespace {

// Accumulates sup and trapezoid-weighted L2 errors of one slab.
void accumulate(const SlabSolution& slab, const InitialData& phi, const OracleConfig& cfg,
                OracleErrorReport& rep, double& l2_sq) {
    for (const auto& [j, sol] : slab.tiles) {
        const GridFn& u = sol.u;
        const TileSpec& tile = u.tile();
        const double t_end = tile.t(tile.nt - 1);
        if (t_end >= rep.t_shock) throw PastShock(t_end, rep.t_shock);
        rep.t_max = std::max(rep.t_max, t_end);
        for (int n = 0; n < tile.nt; ++n) {
            const double wt = (n == 0 || n == tile.nt - 1) ? 0.5 : 1.0;
            for (int i = 0; i < tile.nx; ++i) {
                const double wx = (i == 0 || i == tile.nx - 1) ? 0.5 : 1.0;
                const double err = u(n, i) - eval_exact(phi, tile.t(n), tile.x(i), cfg);
                rep.sup_err = std::max(rep.sup_err, std::abs(err));
                l2_sq += wt * wx * tile.ht() * tile.hx() * err * err;
                ++rep.nodes;
            }
        }
    }
}

}  // namespace

OracleErrorReport compare(const SlabSolution& numeric, const InitialData& phi,
                          const OracleConfig& cfg) {
    OracleErrorReport rep;
    rep.t_shock = shock_time(phi);
    double l2_sq = 0.0;
    accumulate(numeric, phi, cfg, rep, l2_sq);
    rep.l2_err = std::sqrt(l2_sq);
    return rep;
}

OracleErrorReport compare(const GlobalSolution& numeric, const InitialData& phi,
                          const OracleConfig& cfg) {
    OracleErrorReport rep;
    rep.t_shock = shock_time(phi);
    double l2_sq = 0.0;
    for (const auto& slab : numeric.slabs) accumulate(slab, phi, cfg, rep, l2_sq);
    rep.l2_err = std::sqrt(l2_sq);
    return rep;
}

OracleErrorReport with_refinement(OracleErrorReport coarse, const OracleErrorReport& fine) {
    coarse.ratio = fine.sup_err > 0.0 ? std::optional<double>(coarse.sup_err / fine.sup_err)
                                      : std::nullopt;
    return coarse;
}

}  // namespace burgers
