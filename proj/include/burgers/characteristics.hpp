#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "burgers/assembler.hpp"
#include "burgers/initial_data.hpp"

namespace burgers {

struct OracleConfig {
    double root_tol = 1e-13;
    int max_bisections = 200;

    void validate() const;
};

/// Requested a classical value at or beyond the first characteristic crossing.
class PastShock : public std::domain_error {
public:
    PastShock(double t, double t_shock);
    double t() const { return t_; }
    double t_shock() const { return t_shock_; }

private:
    double t_;
    double t_shock_;
};

/// First crossing time -1 / min phi', or +inf when phi' >= 0 everywhere.
/// Closed form for bumps: 3 sqrt(3) / (16 a_max).
double shock_time(const InitialData& phi);

/// Foot x0 of the characteristic through (t, x): x0 + t phi(x0) = x, by
/// bisection on the cell containing x.
double characteristic_foot(const InitialData& phi, double t, double x, const OracleConfig& cfg = {});

/// u(t, x) = phi(x0). Throws PastShock when t >= shock_time(phi).
double eval_exact(const InitialData& phi, double t, double x, const OracleConfig& cfg = {});

/// A general profile for the oracle: phi and the closed range of its values,
/// which brackets every characteristic foot.
struct Profile {
    std::function<double(double)> value;
    double value_min = 0.0;
    double value_max = 0.0;
};

double characteristic_foot(const Profile& phi, double t, double x, const OracleConfig& cfg = {});

/// u(t, x) for a general profile; the caller guarantees t is pre-shock.
double eval_exact(const Profile& phi, double t, double x, const OracleConfig& cfg = {});

struct OracleErrorReport {
    double sup_err = 0.0;
    double l2_err = 0.0;
    std::optional<double> ratio;  // coarse sup_err / fine sup_err
    double t_shock = 0.0;
    double t_max = 0.0;            // latest time compared
    int nodes = 0;
};

/// Node-wise comparison of a slab against the exact solution. Slab k starts at
/// time k. Throws PastShock if the slab reaches the shock time.
OracleErrorReport compare(const SlabSolution& numeric, const InitialData& phi,
                          const OracleConfig& cfg = {});
OracleErrorReport compare(const GlobalSolution& numeric, const InitialData& phi,
                          const OracleConfig& cfg = {});

/// Adds the refinement ratio coarse.sup_err / fine.sup_err to `coarse`.
OracleErrorReport with_refinement(OracleErrorReport coarse, const OracleErrorReport& fine);

}  // namespace burgers
