#pragma once

#include <map>
#include <string>
#include <vector>

#include "burgers/grid.hpp"

namespace burgers {

/// Reference profile psi(s) = 16 s^2 (1-s)^2 on [0, 1]: unit peak at s = 1/2,
/// psi and psi' vanish at both ends. Extended by zero outside [0, 1].
double bump_profile(double s);
double bump_profile_derivative(double s);

/// sup |psi'| = 16 / (3 sqrt 3), attained at s = (1 -+ 1/sqrt 3) / 2.
inline constexpr double kBumpSlopeMax = 3.0792014356780038;

/// Largest amplitude whose bump satisfies |phi'| <= 2^-(|j|+1) on cell j.
double max_admissible_amplitude(int cell_j);

struct Bump {
    int cell = 0;
    double amplitude = 0.0;

    bool operator==(const Bump&) const = default;
};

/// Raw samples of phi on one cell at `values.size()` uniform nodes (endpoints
/// included). Used for counterexamples the bump family cannot express.
struct RawCell {
    int cell = 0;
    std::vector<double> values;
};

/// Initial data phi: a per-cell bump family a_j psi(x - j), plus optional raw
/// sampled cells. Cells without a bump or raw samples carry phi = 0.
class InitialData {
public:
    InitialData() = default;
    explicit InitialData(std::vector<Bump> bumps);

    /// Adds one bump; throws on a negative amplitude or a cell already in use.
    InitialData& add_bump(int cell_j, double amplitude);
    InitialData& add_raw(RawCell raw);

    const std::vector<Bump>& bumps() const { return bumps_; }
    const std::map<int, RawCell>& raw_cells() const { return raw_; }
    bool has_raw() const { return !raw_.empty(); }
    bool empty() const { return bumps_.empty() && raw_.empty(); }

    double amplitude(int cell_j) const;
    double max_amplitude() const;

    /// Smallest and largest cell index carrying data (0, -1 when empty).
    int min_cell() const;
    int max_cell() const;

    double value(double x) const;
    double derivative(double x) const;

    InitialData without_cell(int cell_j) const;

private:
    std::vector<Bump> bumps_;  // sorted by cell
    std::map<int, RawCell> raw_;
};

/// The contribution of a single bump a psi(x - j).
InitialData bump(int cell_j, double amplitude);

struct CellEnvelopeCheck {
    int cell = 0;
    double bound = 0.0;
    double sup_phi = 0.0;
    double sup_dphi = 0.0;
    double margin_phi = 0.0;
    double margin_dphi = 0.0;
};

struct ClauseResult {
    std::string name;
    bool pass = true;
    double measured = 0.0;
    double limit = 0.0;
};

/// Per-clause outcome of checking phi against the small-data hypothesis.
struct ValidationReport {
    std::vector<ClauseResult> clauses;
    std::vector<CellEnvelopeCheck> cells;
    double sup_phi = 0.0;
    double sup_dphi = 0.0;
    double l2 = 0.0;
    double max_endpoint_value = 0.0;
    double max_endpoint_derivative = 0.0;

    bool pass() const;
    std::vector<std::string> failed() const;
    const ClauseResult& clause(const std::string& name) const;
};

/// Clause names, in report order.
inline const std::vector<std::string>& clause_names() {
    static const std::vector<std::string> names{"endpoint_phi", "endpoint_dphi", "sup_phi",
                                                "sup_dphi",     "l2",            "envelope_phi",
                                                "envelope_dphi"};
    return names;
}

struct ValidateOptions {
    int nodes_per_cell = 65;
    double endpoint_tol = 1e-12;
};

/// Checks phi on cells [cell_lo, cell_hi], which must cover every bump.
ValidationReport validate(const InitialData& phi, int cell_lo, int cell_hi,
                          const ValidateOptions& opts = {});

/// Trapezoid L2 norm over the union of data supports at `nodes_per_cell` nodes.
double l2_norm(const InitialData& phi, int nodes_per_cell = 65);

/// phi at the tile's x-nodes.
TraceFn sample_bottom(const InitialData& phi, const TileSpec& tile);

}  // namespace burgers
