#include "burgers/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace burgers {

double bump_profile(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    const double p = s * (1.0 - s);
    return 16.0 * p * p;
}

double bump_profile_derivative(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return 32.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
}

double max_admissible_amplitude(int cell_j) {
    return std::ldexp(1.0, -(std::abs(cell_j) + 1)) / kBumpSlopeMax;
}

namespace {

// Linear interpolation of raw samples at local coordinate s in [0, 1].
double raw_value(const RawCell& raw, double s) {
    const auto m = static_cast<int>(raw.values.size());
    const double pos = std::clamp(s, 0.0, 1.0) * (m - 1);
    const int i = std::min(static_cast<int>(pos), m - 2);
    const double w = pos - i;
    return (1.0 - w) * raw.values[i] + w * raw.values[i + 1];
}

// Three-point nodal derivative of raw samples, second order at the ends.
std::vector<double> raw_nodal_derivative(const RawCell& raw) {
    const auto m = static_cast<int>(raw.values.size());
    const double inv2h = (m - 1) / 2.0;
    const auto& v = raw.values;
    std::vector<double> d(m);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h;
    for (int i = 1; i < m - 1; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv2h;
    d[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) * inv2h;
    return d;
}

double raw_derivative(const RawCell& raw, double s) {
    return raw_value(RawCell{raw.cell, raw_nodal_derivative(raw)}, s);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

InitialData::InitialData(std::vector<Bump> bumps) {
    for (const auto& b : bumps) add_bump(b.cell, b.amplitude);
}

InitialData& InitialData::add_bump(int cell_j, double amplitude) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("bump amplitude must be finite and >= 0");
    }
    auto it = std::lower_bound(bumps_.begin(), bumps_.end(), cell_j,
                               [](const Bump& b, int j) { return b.cell < j; });
    if ((it != bumps_.end() && it->cell == cell_j) || raw_.contains(cell_j)) {
        throw std::invalid_argument("cell " + std::to_string(cell_j) + " already carries data");
    }
    bumps_.insert(it, Bump{cell_j, amplitude});
    return *this;
}

InitialData& InitialData::add_raw(RawCell raw) {
    if (raw.values.size() < 3) throw std::invalid_argument("raw cell needs >= 3 samples");
    if (raw_.contains(raw.cell) ||
        std::any_of(bumps_.begin(), bumps_.end(), [&](const Bump& b) { return b.cell == raw.cell; })) {
        throw std::invalid_argument("cell " + std::to_string(raw.cell) + " already carries data");
    }
    const int cell = raw.cell;
    raw_.emplace(cell, std::move(raw));
    return *this;
}

double InitialData::amplitude(int cell_j) const {
    auto it = std::lower_bound(bumps_.begin(), bumps_.end(), cell_j,
                               [](const Bump& b, int j) { return b.cell < j; });
    return (it != bumps_.end() && it->cell == cell_j) ? it->amplitude : 0.0;
}

double InitialData::max_amplitude() const {
    double m = 0.0;
    for (const auto& b : bumps_) m = std::max(m, b.amplitude);
    return m;
}

int InitialData::min_cell() const {
    if (empty()) return 0;
    int lo = bumps_.empty() ? raw_.begin()->first : bumps_.front().cell;
    if (!raw_.empty()) lo = std::min(lo, raw_.begin()->first);
    return lo;
}

int InitialData::max_cell() const {
    if (empty()) return -1;
    int hi = bumps_.empty() ? raw_.rbegin()->first : bumps_.back().cell;
    if (!raw_.empty()) hi = std::max(hi, raw_.rbegin()->first);
    return hi;
}

double InitialData::value(double x) const {
    const int cell = static_cast<int>(std::floor(x));
    const double s = x - cell;
    if (auto it = raw_.find(cell); it != raw_.end()) return raw_value(it->second, s);
    return amplitude(cell) * bump_profile(s);
}

double InitialData::derivative(double x) const {
    const int cell = static_cast<int>(std::floor(x));
    const double s = x - cell;
    if (auto it = raw_.find(cell); it != raw_.end()) return raw_derivative(it->second, s);
    return amplitude(cell) * bump_profile_derivative(s);
}

InitialData InitialData::without_cell(int cell_j) const {
    InitialData out;
    for (const auto& b : bumps_)
        if (b.cell != cell_j) out.add_bump(b.cell, b.amplitude);
    for (const auto& [cell, raw] : raw_)
        if (cell != cell_j) out.add_raw(raw);
    return out;
}

InitialData bump(int cell_j, double amplitude) {
    InitialData d;
    d.add_bump(cell_j, amplitude);
    return d;
}

bool ValidationReport::pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

std::vector<std::string> ValidationReport::failed() const {
    std::vector<std::string> out;
    for (const auto& c : clauses)
        if (!c.pass) out.push_back(c.name);
    return out;
}

const ClauseResult& ValidationReport::clause(const std::string& name) const {
    for (const auto& c : clauses)
        if (c.name == name) return c;
    throw std::out_of_range("no clause named " + name);
}

ValidationReport validate(const InitialData& phi, int cell_lo, int cell_hi,
                          const ValidateOptions& opts) {
    if (cell_lo > cell_hi) throw std::invalid_argument("validate: empty cell range");
    if (!phi.empty() && (phi.min_cell() < cell_lo || phi.max_cell() > cell_hi)) {
        throw std::invalid_argument("validate: cell range does not cover the data");
    }

    ValidationReport rep;
    for (int j = cell_lo; j <= cell_hi; ++j) {
        double end_v = 0.0, end_d = 0.0, sup_v = 0.0, sup_d = 0.0;
        if (auto it = phi.raw_cells().find(j); it != phi.raw_cells().end()) {
            const auto& v = it->second.values;
            const auto d = raw_nodal_derivative(it->second);
            end_v = std::max(std::abs(v.front()), std::abs(v.back()));
            end_d = std::max(std::abs(d.front()), std::abs(d.back()));
            sup_v = max_abs(v);
            sup_d = max_abs(d);
        } else {
            const double a = phi.amplitude(j);
            end_v = std::max(std::abs(a * bump_profile(0.0)), std::abs(a * bump_profile(1.0)));
            end_d = std::max(std::abs(a * bump_profile_derivative(0.0)),
                             std::abs(a * bump_profile_derivative(1.0)));
            sup_v = a;
            sup_d = a * kBumpSlopeMax;
        }
        rep.max_endpoint_value = std::max(rep.max_endpoint_value, end_v);
        rep.max_endpoint_derivative = std::max(rep.max_endpoint_derivative, end_d);
        rep.sup_phi = std::max(rep.sup_phi, sup_v);
        rep.sup_dphi = std::max(rep.sup_dphi, sup_d);

        CellEnvelopeCheck c;
        c.cell = j;
        c.bound = std::ldexp(1.0, -(std::abs(j) + 1));
        c.sup_phi = sup_v;
        c.sup_dphi = sup_d;
        c.margin_phi = c.bound - sup_v;
        c.margin_dphi = c.bound - sup_d;
        rep.cells.push_back(c);
    }
    rep.l2 = l2_norm(phi, opts.nodes_per_cell);

    double worst_phi = 0.0, worst_dphi = 0.0;
    bool env_phi = true, env_dphi = true;
    for (const auto& c : rep.cells) {
        env_phi = env_phi && c.margin_phi >= 0.0;
        env_dphi = env_dphi && c.margin_dphi >= 0.0;
        worst_phi = std::max(worst_phi, c.sup_phi / c.bound);
        worst_dphi = std::max(worst_dphi, c.sup_dphi / c.bound);
    }

    rep.clauses = {
        {"endpoint_phi", rep.max_endpoint_value <= opts.endpoint_tol, rep.max_endpoint_value,
         opts.endpoint_tol},
        {"endpoint_dphi", rep.max_endpoint_derivative <= opts.endpoint_tol,
         rep.max_endpoint_derivative, opts.endpoint_tol},
        {"sup_phi", rep.sup_phi < 1.0, rep.sup_phi, 1.0},
        {"sup_dphi", rep.sup_dphi < 1.0, rep.sup_dphi, 1.0},
        {"l2", rep.l2 <= 1.0, rep.l2, 1.0},
        // measured: worst ratio sup / bound over cells
        {"envelope_phi", env_phi, worst_phi, 1.0},
        {"envelope_dphi", env_dphi, worst_dphi, 1.0},
    };
    return rep;
}

double l2_norm(const InitialData& phi, int nodes_per_cell) {
    if (nodes_per_cell < 2) throw std::invalid_argument("l2_norm: need >= 2 nodes per cell");
    double acc = 0.0;
    std::vector<double> sq;
    for (const auto& b : phi.bumps()) {
        sq.assign(nodes_per_cell, 0.0);
        for (int i = 0; i < nodes_per_cell; ++i) {
            const double v = b.amplitude * bump_profile(static_cast<double>(i) / (nodes_per_cell - 1));
            sq[i] = v * v;
        }
        acc += trapezoid(sq, 1.0 / (nodes_per_cell - 1));
    }
    for (const auto& [cell, raw] : phi.raw_cells()) {
        sq.resize(raw.values.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = raw.values[i] * raw.values[i];
        acc += trapezoid(sq, 1.0 / (raw.values.size() - 1));
    }
    return std::sqrt(acc);
}

TraceFn sample_bottom(const InitialData& phi, const TileSpec& tile) {
    tile.validate();
    TraceFn g{tile.x0(), tile.hx(), std::vector<double>(tile.nx, 0.0)};
    const int j = tile.cell_j;
    if (auto it = phi.raw_cells().find(j); it != phi.raw_cells().end()) {
        for (int i = 0; i < tile.nx; ++i)
            g.values[i] = raw_value(it->second, static_cast<double>(i) / (tile.nx - 1));
        return g;
    }
    const double a = phi.amplitude(j);
    if (a == 0.0) return g;
    for (int i = 0; i < tile.nx; ++i)
        g.values[i] = a * bump_profile(static_cast<double>(i) / (tile.nx - 1));
    return g;
}

}  // namespace burgers
