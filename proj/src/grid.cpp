#include "burgers/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace burgers {

void TileSpec::validate() const {
    auto check = [](int n, const char* name) {
        if (n < 3 || n % 2 == 0) {
            throw std::invalid_argument(std::string(name) + " must be odd and >= 3, got " +
                                        std::to_string(n));
        }
    };
    check(nt, "nt");
    check(nx, "nx");
}

TileSpec TileSpec::refined() const {
    return TileSpec{slab_k, cell_j, 2 * (nt - 1) + 1, 2 * (nx - 1) + 1};
}

TraceFn TraceFn::zeros(double origin, double step, std::size_t n) {
    return TraceFn{origin, step, std::vector<double>(n, 0.0)};
}

GridFn::GridFn(TileSpec tile)
    : tile_(tile) {
    tile_.validate();
    values_.assign(static_cast<std::size_t>(tile_.nt) * tile_.nx, 0.0);
}

GridFn::GridFn(TileSpec tile, std::vector<double> values)
    : tile_(tile), values_(std::move(values)) {
    tile_.validate();
    if (values_.size() != static_cast<std::size_t>(tile_.nt) * tile_.nx) {
        throw std::invalid_argument("GridFn: value count does not match tile resolution");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("GridFn: non-finite value");
    }
}

GridFn GridFn::sample(TileSpec tile, const std::function<double(double, double)>& f) {
    GridFn out(tile);
    for (int n = 0; n < tile.nt; ++n)
        for (int i = 0; i < tile.nx; ++i) out(n, i) = f(tile.t(n), tile.x(i));
    return out;
}

GridFn GridFn::from_rows(TileSpec tile, const TraceFn& g) {
    if (g.size() != static_cast<std::size_t>(tile.nx)) {
        throw std::invalid_argument("GridFn::from_rows: trace length != nx");
    }
    GridFn out(tile);
    for (int n = 0; n < tile.nt; ++n)
        for (int i = 0; i < tile.nx; ++i) out(n, i) = g[i];
    return out;
}

GridFn GridFn::from_columns(TileSpec tile, const TraceFn& b) {
    if (b.size() != static_cast<std::size_t>(tile.nt)) {
        throw std::invalid_argument("GridFn::from_columns: trace length != nt");
    }
    GridFn out(tile);
    for (int n = 0; n < tile.nt; ++n)
        for (int i = 0; i < tile.nx; ++i) out(n, i) = b[n];
    return out;
}

std::span<const double> GridFn::row(int n) const {
    return std::span<const double>(values_).subspan(index(n, 0), tile_.nx);
}

TraceFn GridFn::row_trace(int n) const {
    auto r = row(n);
    return TraceFn{tile_.x0(), tile_.hx(), std::vector<double>(r.begin(), r.end())};
}

TraceFn GridFn::column_trace(int i) const {
    TraceFn out{tile_.t0(), tile_.ht(), std::vector<double>(tile_.nt)};
    for (int n = 0; n < tile_.nt; ++n) out.values[n] = (*this)(n, i);
    return out;
}

void GridFn::require_same_shape(const GridFn& other) const {
    if (other.tile_.nt != tile_.nt || other.tile_.nx != tile_.nx) {
        throw std::invalid_argument("GridFn: shape mismatch");
    }
}

GridFn& GridFn::operator+=(const GridFn& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

GridFn& GridFn::operator-=(const GridFn& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

GridFn& GridFn::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

GridFn GridFn::hadamard(const GridFn& other) const {
    require_same_shape(other);
    GridFn out(*this);
    for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] *= other.values_[k];
    return out;
}

GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
GridFn operator*(double s, GridFn a) { return a *= s; }

GridFn cum_int_x(const GridFn& f) {
    GridFn out(f.tile());
    const double half_h = 0.5 * f.tile().hx();
    for (int n = 0; n < f.rows(); ++n) {
        double acc = 0.0;
        for (int i = 1; i < f.cols(); ++i) {
            acc += half_h * (f(n, i - 1) + f(n, i));
            out(n, i) = acc;
        }
    }
    return out;
}

GridFn cum_int_t(const GridFn& f) {
    GridFn out(f.tile());
    const double half_h = 0.5 * f.tile().ht();
    for (int n = 1; n < f.rows(); ++n)
        for (int i = 0; i < f.cols(); ++i)
            out(n, i) = out(n - 1, i) + half_h * (f(n - 1, i) + f(n, i));
    return out;
}

namespace {

// Derivative along one axis; `at(a, b)` reads the value at position a along
// the differentiated axis and b along the other one.
template <typename Read, typename Write>
void diff_axis(int len, int other, double h, Read at, Write put) {
    const double inv2h = 1.0 / (2.0 * h);
    for (int b = 0; b < other; ++b) {
        put(0, b, (-3.0 * at(0, b) + 4.0 * at(1, b) - at(2, b)) * inv2h);
        for (int a = 1; a < len - 1; ++a) put(a, b, (at(a + 1, b) - at(a - 1, b)) * inv2h);
        put(len - 1, b,
            (3.0 * at(len - 1, b) - 4.0 * at(len - 2, b) + at(len - 3, b)) * inv2h);
    }
}

}  // namespace

GridFn diff_x(const GridFn& f) {
    GridFn out(f.tile());
    diff_axis(
        f.cols(), f.rows(), f.tile().hx(), [&](int i, int n) { return f(n, i); },
        [&](int i, int n, double v) { out(n, i) = v; });
    return out;
}

GridFn diff_t(const GridFn& f) {
    GridFn out(f.tile());
    diff_axis(
        f.rows(), f.cols(), f.tile().ht(), [&](int n, int i) { return f(n, i); },
        [&](int n, int i, double v) { out(n, i) = v; });
    return out;
}

double sup_norm(const GridFn& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double c1_norm(const GridFn& f) {
    return std::max({sup_norm(f), sup_norm(diff_t(f)), sup_norm(diff_x(f))});
}

double trapezoid(std::span<const double> y, double step) {
    if (y.size() < 2) return 0.0;
    double acc = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) acc += y[i];
    return acc * step;
}

}  // namespace burgers
