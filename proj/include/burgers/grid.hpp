#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace burgers {

/// One unit space-time rectangle [k, k+1] x [j, j+1] sampled on a uniform
/// (nt x nx) node grid. Node counts are odd so that halving h nests nodes.
struct TileSpec {
    int slab_k = 0;
    int cell_j = 0;
    int nt = 65;
    int nx = 65;

    /// Throws std::invalid_argument unless nt, nx are odd and >= 3.
    void validate() const;

    double t0() const { return static_cast<double>(slab_k); }
    double x0() const { return static_cast<double>(cell_j); }
    double ht() const { return 1.0 / (nt - 1); }
    double hx() const { return 1.0 / (nx - 1); }
    double t(int n) const { return t0() + n * ht(); }
    double x(int i) const { return x0() + i * hx(); }

    /// Same tile at 2(n-1)+1 nodes per axis.
    TileSpec refined() const;

    bool operator==(const TileSpec&) const = default;
};

/// A 1-D sampled function: bottom-edge data g(x) or a lateral trace b(t).
struct TraceFn {
    double origin = 0.0;
    double step = 1.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    static TraceFn zeros(double origin, double step, std::size_t n);
};

/// Nodal values of a scalar field on a tile, stored t-major (row n = time t_n).
class GridFn {
public:
    explicit GridFn(TileSpec tile);
    GridFn(TileSpec tile, std::vector<double> values);

    /// Samples f(t, x) at every node of the tile.
    static GridFn sample(TileSpec tile, const std::function<double(double, double)>& f);
    /// Replicates a bottom trace g(x) along every time row.
    static GridFn from_rows(TileSpec tile, const TraceFn& g);
    /// Replicates an edge trace b(t) along every space column.
    static GridFn from_columns(TileSpec tile, const TraceFn& b);

    const TileSpec& tile() const { return tile_; }
    int rows() const { return tile_.nt; }
    int cols() const { return tile_.nx; }

    double operator()(int n, int i) const { return values_[index(n, i)]; }
    double& operator()(int n, int i) { return values_[index(n, i)]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    std::span<const double> row(int n) const;

    TraceFn row_trace(int n) const;
    TraceFn column_trace(int i) const;

    GridFn& operator+=(const GridFn& other);
    GridFn& operator-=(const GridFn& other);
    GridFn& operator*=(double s);

    /// Pointwise product.
    GridFn hadamard(const GridFn& other) const;

    bool operator==(const GridFn&) const = default;

private:
    std::size_t index(int n, int i) const {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(tile_.nx) +
               static_cast<std::size_t>(i);
    }
    void require_same_shape(const GridFn& other) const;

    TileSpec tile_;
    std::vector<double> values_;
};

GridFn operator+(GridFn a, const GridFn& b);
GridFn operator-(GridFn a, const GridFn& b);
GridFn operator*(double s, GridFn a);

// Trapezoid cumulative integrals from the tile's left edge (x) or bottom edge (t).
GridFn cum_int_x(const GridFn& f);
GridFn cum_int_t(const GridFn& f);

// Second-order differences: centered inside, three-point one-sided at the edges.
GridFn diff_x(const GridFn& f);
GridFn diff_t(const GridFn& f);

double sup_norm(const GridFn& f);

/// max over nodes of |f|, |df/dt|, |df/dx|.
double c1_norm(const GridFn& f);

/// Trapezoid integral of one sampled row (uniform step).
double trapezoid(std::span<const double> y, double step);

}  // namespace burgers
