#include "doctest.h"

#include <cmath>

#include "burgers/assembler.hpp"

using namespace burgers;

namespace {

InitialData three_bumps() {
    InitialData phi;
    phi.add_bump(-1, 0.06).add_bump(0, 0.15).add_bump(1, 0.07);
    return phi;
}

std::map<int, TraceFn> bottom(const InitialData& phi, int lo, int hi, int n = 65) {
    std::map<int, TraceFn> data;
    for (int j = lo; j <= hi; ++j) data.emplace(j, sample_bottom(phi, TileSpec{0, j, n, n}));
    return data;
}

}  // namespace

TEST_CASE("sweep orders") {
    CHECK(sweep_cells(-2, 2, SweepOrder::CenterOut) == std::vector<int>{0, 1, 2, -1, -2});
    CHECK(sweep_cells(-2, 2, SweepOrder::LeftToRight) == std::vector<int>{-2, -1, 0, 1, 2});
    CHECK(sweep_cells(-2, 2, SweepOrder::RightToLeft) == std::vector<int>{2, 1, 0, -1, -2});
    CHECK(sweep_cells(1, 3, SweepOrder::CenterOut) == std::vector<int>{1, 2, 3});
}

TEST_CASE("zero data slab is zero") {
    const SlabSolution s = solve_slab(0, {}, -2, 2, SolverConfig{});
    CHECK(s.tiles.size() == 5);
    for (const auto& [j, t] : s.tiles) CHECK(sup_norm(t.u) == 0.0);
    CHECK(check_interfaces(s).pass());
}

TEST_CASE("solve_slab rejects bad traces") {
    std::map<int, TraceFn> data;
    data.emplace(0, TraceFn{0.0, 1.0 / 64, std::vector<double>(65, 0.1)});
    CHECK_THROWS_AS(solve_slab(0, data, -1, 1, SolverConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(solve_slab(0, bottom(bump(0, 0.1), 0, 0), 1, 2, SolverConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(solve_slab(0, bottom(bump(0, 0.1), 0, 0, 33), 0, 0, SolverConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(solve_slab(0, {}, 1, 0, SolverConfig{}), std::invalid_argument);
}

TEST_CASE("sweep order does not change the slab") {
    const auto data = bottom(three_bumps(), -2, 2);
    SlabOptions a, b, c;
    b.order = SweepOrder::LeftToRight;
    c.order = SweepOrder::RightToLeft;
    const SlabSolution sa = solve_slab(0, data, -2, 2, SolverConfig{}, a);
    const SlabSolution sb = solve_slab(0, data, -2, 2, SolverConfig{}, b);
    const SlabSolution sc = solve_slab(0, data, -2, 2, SolverConfig{}, c);
    for (int j = -2; j <= 2; ++j) {
        CHECK(sa.tile(j).u == sb.tile(j).u);
        CHECK(sa.tile(j).u == sc.tile(j).u);
    }
}

TEST_CASE("runs are deterministic") {
    const GlobalSolution a = advance(three_bumps(), 1, -2, 2, SolverConfig{});
    const GlobalSolution b = advance(three_bumps(), 1, -2, 2, SolverConfig{});
    for (int j = -2; j <= 2; ++j) CHECK(a.slabs[0].tile(j).u == b.slabs[0].tile(j).u);
}

TEST_CASE("cells decouple") {
    const GlobalSolution full = advance(three_bumps(), 1, -2, 2, SolverConfig{});
    const GlobalSolution cut = advance(three_bumps().without_cell(-1), 1, -2, 2, SolverConfig{});
    CHECK(full.slabs[0].tile(0).u == cut.slabs[0].tile(0).u);
    CHECK(full.slabs[0].tile(1).u == cut.slabs[0].tile(1).u);
    CHECK_FALSE(full.slabs[0].tile(-1).u == cut.slabs[0].tile(-1).u);
    CHECK(sup_norm(cut.slabs[0].tile(-1).u) == 0.0);
}

TEST_CASE("interfaces of a bump run") {
    const GlobalSolution g = advance(three_bumps(), 1, -2, 2, SolverConfig{});
    const SlabSolution& s = g.slabs[0];
    const InterfaceReport rep = check_interfaces(s);
    CHECK(rep.interfaces.size() == 4);
    CHECK(rep.interfaces.front().x == -1);
    CHECK(rep.max_trace <= 1e-8);
    CHECK(rep.max_dt_mismatch <= 1e-6);
    CHECK(rep.pass());
    for (const auto& [j, r] : s.neighbor_trace_residual) CHECK(r <= 1e-8);
}

TEST_CASE("interface u_x traces decay at second order") {
    auto dx = [](int n) {
        SlabOptions o;
        o.nt = o.nx = n;
        const GlobalSolution g = advance(bump(0, 0.15), 1, -1, 1, SolverConfig{}, o);
        return check_interfaces(g.slabs[0]).max_dx;
    };
    const double ratio = dx(65) / dx(129);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("envelope bounds") {
    CHECK(envelope_bound(0, 0) == 0.5);
    CHECK(envelope_bound(0, -2) == 0.125);
    CHECK(envelope_bound(1, 0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(envelope_bound(1, 3) == doctest::Approx(0.25));
    CHECK_FALSE(envelope_extrapolated(0));
    CHECK_FALSE(envelope_extrapolated(1));
    CHECK(envelope_extrapolated(2));
}

TEST_CASE("envelope report of a small bump") {
    const GlobalSolution g = advance(bump(0, 0.05), 1, -1, 1, SolverConfig{});
    const EnvelopeReport env = check_envelope(g.slabs[0]);
    CHECK(env.cells.size() == 3);
    CHECK(env.pass());
    CHECK(env.cells[1].sup_u == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(env.min_margin_u == 0.25);
    CHECK(env.cells[1].margin_u == doctest::Approx(0.5 - env.cells[1].sup_u));
}

TEST_CASE("advance chains slabs") {
    const GlobalSolution g = advance(bump(0, 0.08), 2, -1, 1, SolverConfig{});
    REQUIRE(g.complete(2));
    const GridFn& first = g.slabs[0].tile(0).u;
    const GridFn& second = g.slabs[1].tile(0).u;
    for (int i = 0; i < 65; ++i) CHECK(second(0, i) == first(64, i));
    CHECK(second.tile().slab_k == 1);
}

TEST_CASE("solutions stay inside the data range") {
    const GlobalSolution g = advance(three_bumps(), 1, -2, 2, SolverConfig{});
    for (const auto& [j, t] : g.slabs[0].tiles) {
        double lo = 0.0, hi = 0.0;
        for (double v : t.u.values()) lo = std::min(lo, v), hi = std::max(hi, v);
        CHECK(lo >= -1e-6);
        CHECK(hi <= three_bumps().amplitude(j) + 1e-6);
    }
}

TEST_CASE("advance rejects invalid data and stops at the first fault") {
    CHECK_THROWS_AS(advance(bump(0, 0.25), 1, -1, 1, SolverConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(advance(InitialData{}, 0, -1, 1, SolverConfig{}), std::invalid_argument);

    const GlobalSolution g = advance_unchecked(bump(0, 0.25), 2, -1, 1, SolverConfig{});
    REQUIRE(g.failure.has_value());
    CHECK_FALSE(g.complete(2));
    CHECK(g.failure->cell_j == 0);
    CHECK(static_cast<int>(g.slabs.size()) == g.failure->slab_k);
}
