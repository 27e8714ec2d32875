#include "burgers/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace burgers {

double epsilon_for_cell(int cell_j, double eps0) {
    const int m = std::min(std::abs(cell_j), 8);
    const double exponent = std::ldexp(1.0, m) - 1.0;
    return std::max(eps0 * std::pow(10.0, -exponent), 1e-12);
}

OperatorParams OperatorParams::with_data(TileSpec tile, TraceFn g, double epsilon) {
    OperatorParams p;
    p.epsilon = epsilon;
    p.tile = tile;
    p.g = std::move(g);
    p.b = TraceFn::zeros(tile.t0(), tile.ht(), static_cast<std::size_t>(tile.nt));
    return p;
}

void OperatorParams::validate() const {
    tile.validate();
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
    if (g.size() != static_cast<std::size_t>(tile.nx)) {
        throw std::invalid_argument("bottom trace has " + std::to_string(g.size()) +
                                    " samples, tile has nx = " + std::to_string(tile.nx));
    }
    if (b.size() != static_cast<std::size_t>(tile.nt)) {
        throw std::invalid_argument("edge trace has " + std::to_string(b.size()) +
                                    " samples, tile has nt = " + std::to_string(tile.nt));
    }
}

namespace {

void require_tile(const GridFn& u, const OperatorParams& p) {
    p.validate();
    if (u.rows() != p.tile.nt || u.cols() != p.tile.nx) {
        throw std::invalid_argument("grid function shape does not match the operator tile");
    }
}

}  // namespace

GridFn residual_F(const GridFn& u, const OperatorParams& p) {
    require_tile(u, p);
    const TileSpec& tile = u.tile();

    GridFn flux(tile);
    for (int n = 0; n < tile.nt; ++n)
        for (int i = 0; i < tile.nx; ++i) flux(n, i) = u(n, i) * u(n, i) - p.b[n] * p.b[n];

    GridFn out = cum_int_x(u - GridFn::from_rows(tile, p.g));
    GridFn time_part = cum_int_t(flux);
    time_part *= 0.5;
    out += time_part;
    return out;
}

GridFn apply_T(const GridFn& u, const OperatorParams& p) {
    require_tile(u, p);
    return (1.0 + p.epsilon) * u;
}

GridFn apply_S(const GridFn& u, const OperatorParams& p) {
    GridFn out = residual_F(u, p);
    out -= u;
    out *= p.epsilon;
    return out;
}

GridFn random_grid_fn(const TileSpec& tile, double target_norm, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> terms(1, 4);
    std::uniform_int_distribution<int> power(2, 3);

    for (;;) {
        GridFn u(tile);
        const int m = terms(rng);
        for (int term = 0; term < m; ++term) {
            const double c0 = coeff(rng), c1 = coeff(rng), c2 = coeff(rng), c3 = coeff(rng);
            const double amp = coeff(rng);
            const int p = power(rng), q = power(rng);
            for (int n = 0; n < tile.nt; ++n) {
                const double tau = n * tile.ht();
                const double time_factor = c0 + tau * (c1 + tau * (c2 + tau * c3));
                for (int i = 0; i < tile.nx; ++i) {
                    const double s = i * tile.hx();
                    u(n, i) += amp * time_factor * std::pow(s, p) * std::pow(1.0 - s, q);
                }
            }
        }
        const double norm = c1_norm(u);
        if (norm > 0.0) return (target_norm / norm) * u;
    }
}

GridFn admissible_sample(const TileSpec& tile, std::uint64_t seed, int index, double radius) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(index));
    std::uniform_real_distribution<double> frac(0.05, 1.0);
    return random_grid_fn(tile, frac(rng) * radius, rng);
}

ExpansiveReport check_expansive(const OperatorParams& p, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("check_expansive: n_samples must be >= 1");
    p.validate();

    ExpansiveReport rep;
    rep.seed = seed;
    rep.h_min = std::numeric_limits<double>::infinity();
    rep.h_max = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const GridFn u = admissible_sample(p.tile, seed, 2 * k);
        const GridFn v = admissible_sample(p.tile, seed, 2 * k + 1);
        const double base = c1_norm(u - v);
        if (base == 0.0) {
            ++rep.pairs_skipped;
            continue;
        }
        const double ratio = c1_norm(apply_T(u, p) - apply_T(v, p)) / base;
        rep.h_min = std::min(rep.h_min, ratio);
        rep.h_max = std::max(rep.h_max, ratio);
        ++rep.pairs_used;

        // onto: v drawn from the Y-ball of radius (1+eps)/2
        const GridFn y = admissible_sample(p.tile, seed ^ 0x9e3779b97f4a7c15ULL, k,
                                           (1.0 + p.epsilon) * kBallRadius);
        GridFn witness = y;
        witness *= 1.0 / (1.0 + p.epsilon);
        rep.onto_defect = std::max(rep.onto_defect, sup_norm(apply_T(witness, p) - y));
        rep.onto_ball_ratio = std::max(rep.onto_ball_ratio, c1_norm(witness) / kBallRadius);
    }
    if (rep.pairs_used == 0) rep.h_min = rep.h_max = 0.0;
    return rep;
}

SRatios s_ratios(const GridFn& u, const OperatorParams& p) {
    const GridFn su = apply_S(u, p);
    return SRatios{sup_norm(su) / p.epsilon, sup_norm(diff_t(su)) / p.epsilon,
                   sup_norm(diff_x(su)) / p.epsilon};
}

bool SBoundReport::pass(double slack) const {
    return ratio_s <= kBoundS + slack && ratio_st <= kBoundSt + slack &&
           ratio_sx <= kBoundSx + slack;
}

SBoundReport check_S_bounds(const OperatorParams& p, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("check_S_bounds: n_samples must be >= 1");
    SBoundReport rep;
    rep.seed = seed;
    rep.n_samples = n_samples;
    constexpr double slack = 1e-6;
    for (int k = 0; k < n_samples; ++k) {
        const GridFn u = admissible_sample(p.tile, seed, k);
        const SRatios r = s_ratios(u, p);
        if (r.s > rep.ratio_s) rep.ratio_s = r.s, rep.worst_s = k;
        if (r.st > rep.ratio_st) rep.ratio_st = r.st, rep.worst_st = k;
        if (r.sx > rep.ratio_sx) rep.ratio_sx = r.sx, rep.worst_sx = k;
        rep.max_c1_su = std::max(rep.max_c1_su, c1_norm(apply_S(u, p)));
        const bool broke = r.s > kBoundS + slack || r.st > kBoundSt + slack || r.sx > kBoundSx + slack;
        if (broke && rep.first_violation < 0) rep.first_violation = k;
    }
    return rep;
}

FixedPointIdentityReport check_fixed_point_identity(const OperatorParams& p, int n_samples,
                                                    std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    FixedPointIdentityReport rep;
    rep.seed = seed;
    for (int k = 0; k < n_samples; ++k) {
        // identity is ball-independent; draw from a larger ball as well
        const GridFn u = admissible_sample(p.tile, seed, k, 2.0);
        const GridFn lhs = apply_T(u, p) + apply_S(u, p) - u;
        const GridFn rhs = p.epsilon * residual_F(u, p);
        const double d = sup_norm(lhs - rhs);
        if (k == 0 || d > rep.max_defect) {
            rep.max_defect = d;
            rep.worst_sample = k;
        }
    }
    return rep;
}

double s_lipschitz_ratio(const OperatorParams& p, int n_samples, std::uint64_t seed) {
    double worst = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const GridFn u = admissible_sample(p.tile, seed, 2 * k);
        const GridFn v = admissible_sample(p.tile, seed, 2 * k + 1);
        const double base = c1_norm(u - v);
        if (base == 0.0) continue;
        worst = std::max(worst, c1_norm(apply_S(u, p) - apply_S(v, p)) / base);
    }
    return worst;
}

}  // namespace burgers
