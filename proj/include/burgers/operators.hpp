#pragma once

#include <cstdint>
#include <random>

#include "burgers/grid.hpp"

namespace burgers {

/// Bounds on S u / epsilon for c1_norm(u) <= 1/2 and admissible g.
inline constexpr double kBoundS = 13.0 / 8.0;
inline constexpr double kBoundSt = 9.0 / 8.0;
inline constexpr double kBoundSx = 7.0 / 4.0;

/// Radius of the X-ball the operator estimates are stated on.
inline constexpr double kBallRadius = 0.5;

/// Per-cell splitting parameter: eps0 on cell 0 and eps0 * 10^-(2^|j| - 1)
/// beyond (exponent capped at |j| = 8), floored at 1e-12.
double epsilon_for_cell(int cell_j, double eps0 = 0.05);

/// Data for one tile's operator pair: bottom data g(x) and the left
/// neighbour's edge trace b(t).
struct OperatorParams {
    double epsilon = 0.05;
    TileSpec tile;
    TraceFn g;
    TraceFn b;

    /// Zero left trace and the given bottom data.
    static OperatorParams with_data(TileSpec tile, TraceFn g, double epsilon);

    /// Throws std::invalid_argument on out-of-range epsilon or mismatched traces.
    void validate() const;
};

/// F(u) = int_x u - int_x g + 1/2 int_t (u^2 - b^2), integrals anchored at the
/// tile's left and bottom edges. Vanishes iff u solves the tile's integral
/// equation at grid resolution.
GridFn residual_F(const GridFn& u, const OperatorParams& p);

/// T u = (1 + eps) u.
GridFn apply_T(const GridFn& u, const OperatorParams& p);

/// S u = -eps u + eps F(u), so that (T + S) u - u = eps F(u).
GridFn apply_S(const GridFn& u, const OperatorParams& p);

/// Random element of the tile's function space: a sum of separable terms
/// P(t) B(x) with cubic P and C0^1 polynomial bumps B, rescaled so that
/// c1_norm equals `target_norm`.
GridFn random_grid_fn(const TileSpec& tile, double target_norm, std::mt19937_64& rng);

/// Sample `index` of a seeded stream; draws c1_norm uniformly in
/// [0.05, 1) * radius. Each index uses its own generator seeded seed + index.
GridFn admissible_sample(const TileSpec& tile, std::uint64_t seed, int index,
                         double radius = kBallRadius);

struct ExpansiveReport {
    double h_min = 0.0;
    double h_max = 0.0;
    int pairs_used = 0;
    int pairs_skipped = 0;
    /// max over samples of sup |T(v / (1+eps)) - v| for v in the Y-ball.
    double onto_defect = 0.0;
    /// max over samples of c1_norm(v / (1+eps)) / radius; <= 1 puts the witness in X.
    double onto_ball_ratio = 0.0;
    std::uint64_t seed = 0;
};

/// min/max over random pairs of c1_norm(Tu - Tv) / c1_norm(u - v), plus the
/// onto witness u = v / (1+eps). Pairs with u == v are skipped.
ExpansiveReport check_expansive(const OperatorParams& p, int n_samples, std::uint64_t seed);

/// Single-sample ratios sup|S u| / eps, sup|d_t S u| / eps, sup|d_x S u| / eps.
struct SRatios {
    double s = 0.0;
    double st = 0.0;
    double sx = 0.0;
};
SRatios s_ratios(const GridFn& u, const OperatorParams& p);

struct SBoundReport {
    double ratio_s = 0.0;
    double ratio_st = 0.0;
    double ratio_sx = 0.0;
    /// max over samples of c1_norm(S u); the ball is preserved when <= 1/2.
    double max_c1_su = 0.0;
    int worst_s = -1;
    int worst_st = -1;
    int worst_sx = -1;
    int n_samples = 0;
    std::uint64_t seed = 0;

    bool pass(double slack = 1e-6) const;
    /// Index of the first sample that broke a bound, or -1.
    int first_violation = -1;
};

/// Samples u with c1_norm(u) <= 1/2 and reports the worst S ratios.
SBoundReport check_S_bounds(const OperatorParams& p, int n_samples, std::uint64_t seed);

struct FixedPointIdentityReport {
    double max_defect = 0.0;  // max node-wise |(T+S)u - u - eps F(u)|
    int worst_sample = -1;
    std::uint64_t seed = 0;
};

/// Checks (T + S) u - u = eps F(u) over seeded samples.
FixedPointIdentityReport check_fixed_point_identity(const OperatorParams& p, int n_samples,
                                                    std::uint64_t seed);

/// max over random admissible pairs of c1_norm(Su - Sv) / c1_norm(u - v).
double s_lipschitz_ratio(const OperatorParams& p, int n_samples, std::uint64_t seed);

}  // namespace burgers
