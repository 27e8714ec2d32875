#include "burgers/assembler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace burgers {

TileFailure::TileFailure(int slab_k, int cell_j, const SolverError& cause)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "slab " << slab_k << ", cell " << cell_j << ": " << to_string(cause.kind())
              << ": " << cause.what();
          return msg.str();
      }()),
      slab_k_(slab_k),
      cell_j_(cell_j),
      kind_(cause.kind()),
      iterations_(cause.iterations()),
      last_update_(cause.last_update()) {}

std::vector<int> sweep_cells(int j_lo, int j_hi, SweepOrder order) {
    std::vector<int> cells;
    for (int j = j_lo; j <= j_hi; ++j) cells.push_back(j);
    switch (order) {
        case SweepOrder::LeftToRight: break;
        case SweepOrder::RightToLeft: std::reverse(cells.begin(), cells.end()); break;
        case SweepOrder::CenterOut:
            // non-negative cells by increasing j, then negative cells by decreasing j
            std::stable_sort(cells.begin(), cells.end(), [](int a, int b) {
                if ((a >= 0) != (b >= 0)) return a >= 0;
                return std::abs(a) < std::abs(b);
            });
            break;
    }
    return cells;
}

namespace {

constexpr double kEndpointTol = 1e-8;

void require_vanishing_endpoints(int j, const TraceFn& g) {
    const double worst = std::max(std::abs(g.values.front()), std::abs(g.values.back()));
    if (worst > kEndpointTol) {
        std::ostringstream msg;
        msg << "bottom data on cell " << j << " does not vanish at the cell endpoints (|g| = "
            << worst << ")";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

SlabSolution solve_slab(int slab_k, const std::map<int, TraceFn>& data, int j_lo, int j_hi,
                        const SolverConfig& cfg, const SlabOptions& opts) {
    if (j_lo > j_hi) throw std::invalid_argument("solve_slab: empty cell range");
    for (const auto& [j, g] : data) {
        if (j < j_lo || j > j_hi) {
            throw std::invalid_argument("solve_slab: data on cell " + std::to_string(j) +
                                        " outside the cell range");
        }
    }

    SlabSolution slab;
    slab.slab_k = slab_k;
    slab.j_lo = j_lo;
    slab.j_hi = j_hi;

    for (int j : sweep_cells(j_lo, j_hi, opts.order)) {
        const TileSpec tile{slab_k, j, opts.nt, opts.nx};
        tile.validate();
        TraceFn g;
        if (auto it = data.find(j); it != data.end()) {
            g = it->second;
            if (g.size() != static_cast<std::size_t>(tile.nx)) {
                throw std::invalid_argument("solve_slab: trace on cell " + std::to_string(j) +
                                            " has wrong length");
            }
            require_vanishing_endpoints(j, g);
        } else {
            g = TraceFn::zeros(tile.x0(), tile.hx(), static_cast<std::size_t>(tile.nx));
        }
        OperatorParams p = OperatorParams::with_data(tile, std::move(g), epsilon_for_cell(j, opts.eps0));
        try {
            slab.tiles.emplace(j, solve_tile(p, cfg));
        } catch (const SolverError& e) {
            throw TileFailure(slab_k, j, e);
        }
        slab.params.emplace(j, std::move(p));
    }

    // Re-check each tile against its left neighbour's actual trace.
    for (int j = j_lo; j <= j_hi; ++j) {
        OperatorParams p = slab.params.at(j);
        if (j > j_lo) p.b = slab.tiles.at(j - 1).u.column_trace(opts.nx - 1);
        slab.neighbor_trace_residual[j] = sup_norm(residual_F(slab.tiles.at(j).u, p));
    }
    return slab;
}

bool InterfaceReport::pass(double trace_tol, double dt_tol) const {
    return max_trace <= trace_tol && max_dt_mismatch <= dt_tol;
}

InterfaceReport check_interfaces(const SlabSolution& s) {
    InterfaceReport rep;
    for (int x = s.j_lo + 1; x <= s.j_hi; ++x) {
        const GridFn& left = s.tile(x - 1).u;
        const GridFn& right = s.tile(x).u;
        const int last = left.cols() - 1;
        const GridFn lx = diff_x(left), rx = diff_x(right);
        const GridFn lt = diff_t(left), rt = diff_t(right);

        InterfaceMetrics m;
        m.x = x;
        for (int n = 0; n < left.rows(); ++n) {
            m.left_trace = std::max(m.left_trace, std::abs(left(n, last)));
            m.right_trace = std::max(m.right_trace, std::abs(right(n, 0)));
            m.left_dx = std::max(m.left_dx, std::abs(lx(n, last)));
            m.right_dx = std::max(m.right_dx, std::abs(rx(n, 0)));
            m.dt_mismatch = std::max(m.dt_mismatch, std::abs(lt(n, last) - rt(n, 0)));
            m.value_mismatch = std::max(m.value_mismatch, std::abs(left(n, last) - right(n, 0)));
        }
        rep.max_trace = std::max({rep.max_trace, m.left_trace, m.right_trace});
        rep.max_dx = std::max({rep.max_dx, m.left_dx, m.right_dx});
        rep.max_dt_mismatch = std::max(rep.max_dt_mismatch, m.dt_mismatch);
        rep.max_value_mismatch = std::max(rep.max_value_mismatch, m.value_mismatch);
        rep.interfaces.push_back(m);
    }
    return rep;
}

double envelope_bound(int slab_k, int cell_j) {
    const double decay = (std::abs(cell_j) + 1.0) / std::ldexp(1.0, slab_k);
    return std::exp2(-decay);
}

EnvelopeReport check_envelope(const SlabSolution& s) {
    EnvelopeReport rep;
    rep.slab_k = s.slab_k;
    rep.extrapolated = envelope_extrapolated(s.slab_k);
    bool first = true;
    for (const auto& [j, sol] : s.tiles) {
        CellEnvelope c;
        c.cell = j;
        c.bound = envelope_bound(s.slab_k, j);
        c.sup_u = sup_norm(sol.u);
        c.sup_ut = sup_norm(diff_t(sol.u));
        c.sup_ux = sup_norm(diff_x(sol.u));
        c.margin_u = c.bound - c.sup_u;
        c.margin_ut = c.bound - c.sup_ut;
        c.margin_ux = c.bound - c.sup_ux;
        if (first) {
            rep.min_margin_u = c.margin_u;
            rep.min_margin_ut = c.margin_ut;
            rep.min_margin_ux = c.margin_ux;
            first = false;
        }
        rep.min_margin_u = std::min(rep.min_margin_u, c.margin_u);
        rep.min_margin_ut = std::min(rep.min_margin_ut, c.margin_ut);
        rep.min_margin_ux = std::min(rep.min_margin_ux, c.margin_ux);
        rep.cells.push_back(c);
    }
    return rep;
}

GlobalSolution advance(const InitialData& phi, int slabs, int j_lo, int j_hi,
                       const SolverConfig& cfg, const SlabOptions& opts) {
    if (slabs < 1) throw std::invalid_argument("advance: need at least one slab");
    const ValidationReport v = validate(phi, j_lo, j_hi, ValidateOptions{opts.nx});
    if (!v.pass()) {
        std::string failed;
        for (const auto& name : v.failed()) failed += (failed.empty() ? "" : ", ") + name;
        throw std::invalid_argument("initial data fails validation: " + failed);
    }
    return advance_unchecked(phi, slabs, j_lo, j_hi, cfg, opts);
}

GlobalSolution advance_unchecked(const InitialData& phi, int slabs, int j_lo, int j_hi,
                                 const SolverConfig& cfg, const SlabOptions& opts) {
    if (slabs < 1) throw std::invalid_argument("advance: need at least one slab");
    GlobalSolution out;
    out.j_lo = j_lo;
    out.j_hi = j_hi;

    std::map<int, TraceFn> data;
    for (int j = j_lo; j <= j_hi; ++j) {
        TraceFn g = sample_bottom(phi, TileSpec{0, j, opts.nt, opts.nx});
        if (std::any_of(g.values.begin(), g.values.end(), [](double v) { return v != 0.0; }))
            data.emplace(j, std::move(g));
    }

    for (int k = 0; k < slabs; ++k) {
        try {
            out.slabs.push_back(solve_slab(k, data, j_lo, j_hi, cfg, opts));
        } catch (const TileFailure& e) {
            out.failure = SlabFailure{e.slab(), e.cell(), e.kind(), e.iterations(),
                                      e.last_update(), e.what()};
            return out;
        }
        data.clear();
        for (const auto& [j, sol] : out.slabs.back().tiles) {
            TraceFn top = sol.u.row_trace(sol.u.rows() - 1);
            if (std::any_of(top.values.begin(), top.values.end(), [](double v) { return v != 0.0; }))
                data.emplace(j, std::move(top));
        }
    }
    return out;
}

}  // namespace burgers
