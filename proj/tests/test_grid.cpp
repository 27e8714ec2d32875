#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "burgers/grid.hpp"

using namespace burgers;

TEST_CASE("tile geometry") {
    const TileSpec tile{2, -3, 5, 9};
    CHECK(tile.t0() == 2.0);
    CHECK(tile.x0() == -3.0);
    CHECK(tile.ht() == 0.25);
    CHECK(tile.hx() == 0.125);
    CHECK(tile.t(4) == 3.0);
    CHECK(tile.x(8) == -2.0);

    const TileSpec fine = tile.refined();
    CHECK(fine.nt == 9);
    CHECK(fine.nx == 17);
    for (int i = 0; i < tile.nx; ++i) CHECK(fine.x(2 * i) == tile.x(i));

    CHECK_THROWS_AS((TileSpec{0, 0, 4, 5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TileSpec{0, 0, 5, 1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((TileSpec{0, 0, 3, 3}.validate()));
}

TEST_CASE("grid function construction checks shape and finiteness") {
    const TileSpec tile{0, 0, 3, 3};
    CHECK_THROWS_AS(GridFn(tile, std::vector<double>(8, 0.0)), std::invalid_argument);
    std::vector<double> bad(9, 0.0);
    bad[4] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(GridFn(tile, bad), std::invalid_argument);

    GridFn f = GridFn::sample(tile, [](double t, double x) { return 10 * t + x; });
    CHECK(f(2, 1) == doctest::Approx(10.5));
    CHECK(f.row_trace(1).values == std::vector<double>{5.0, 5.5, 6.0});
    CHECK(f.column_trace(2).values == std::vector<double>{1.0, 6.0, 11.0});

    GridFn g = f;
    g *= 2.0;
    CHECK((g - f) == f);
    CHECK((f + f) == g);
    CHECK((2.0 * f) == g);
    CHECK(f.hadamard(f)(2, 2) == doctest::Approx(121.0));
}

TEST_CASE("trapezoid rules") {
    const std::vector<double> lin{0.0, 0.25, 0.5, 0.75, 1.0};
    CHECK(trapezoid(lin, 0.25) == doctest::Approx(0.5).epsilon(1e-15));

    const TileSpec tile{0, 0, 5, 9};
    const GridFn one = GridFn::sample(tile, [](double, double) { return 1.0; });
    const GridFn ix = cum_int_x(one);
    const GridFn it = cum_int_t(one);
    for (int n = 0; n < tile.nt; ++n)
        for (int i = 0; i < tile.nx; ++i) {
            CHECK(ix(n, i) == doctest::Approx(i * tile.hx()).epsilon(1e-14));
            CHECK(it(n, i) == doctest::Approx(n * tile.ht()).epsilon(1e-14));
        }
}

TEST_CASE("cumulative integrals are second order") {
    auto err = [](int n) {
        const TileSpec tile{0, 0, n, n};
        const GridFn f = GridFn::sample(tile, [](double t, double x) { return std::sin(3 * x) * std::exp(t); });
        const GridFn ix = cum_int_x(f);
        const GridFn it = cum_int_t(f);
        double e = 0.0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                const double t = tile.t(k), x = tile.x(i);
                e = std::max(e, std::abs(ix(k, i) - (1 - std::cos(3 * x)) / 3 * std::exp(t)));
                e = std::max(e, std::abs(it(k, i) - std::sin(3 * x) * (std::exp(t) - 1)));
            }
        return e;
    };
    const double ratio = err(33) / err(65);
    CHECK(ratio > 3.8);
    CHECK(ratio < 4.2);
}

TEST_CASE("differences are exact on quadratics, edges included") {
    const TileSpec tile{1, 2, 7, 11};
    const GridFn f = GridFn::sample(tile, [](double t, double x) { return 3 * t * t - x * x + t * x; });
    const GridFn fx = diff_x(f);
    const GridFn ft = diff_t(f);
    for (int n = 0; n < tile.nt; ++n)
        for (int i = 0; i < tile.nx; ++i) {
            const double t = tile.t(n), x = tile.x(i);
            CHECK(fx(n, i) == doctest::Approx(-2 * x + t).epsilon(1e-11));
            CHECK(ft(n, i) == doctest::Approx(6 * t + x).epsilon(1e-11));
        }
}

TEST_CASE("norms") {
    const TileSpec tile{0, 0, 65, 65};
    const GridFn f = GridFn::sample(tile, [](double t, double x) { return 0.1 * std::sin(2 * std::numbers::pi * x) * (1 + t); });
    CHECK(sup_norm(f) == doctest::Approx(0.2).epsilon(1e-3));
    // |f_x| peaks at 0.2 * 2 pi
    CHECK(c1_norm(f) == doctest::Approx(0.4 * std::numbers::pi).epsilon(2e-3));
    CHECK(sup_norm(GridFn(tile)) == 0.0);
    CHECK(c1_norm(GridFn(tile)) == 0.0);
}
