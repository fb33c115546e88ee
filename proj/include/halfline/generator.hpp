#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "halfline/phase.hpp"
#include "halfline/testfn.hpp"
#include "halfline/walk.hpp"

namespace halfline {

// Function values on {cemetery} ∪ {0, 1, ..., M} (lattice, spacing 1) or on
// {cemetery} ∪ {0, 1/N, ..., M/N} (rescaled, spacing 1/N), indexed by site.
// The value at the cemetery is identically zero.
class GridFunction {
  public:
    static GridFunction lattice(std::vector<double> values);
    static GridFunction rescaled(std::int64_t scale_n, std::vector<double> values);
    // Sample f on sites 0..max_site at the grid spacing.
    static GridFunction sample(double spacing, std::int64_t max_site,
                               const std::function<double(double)>& f);

    double at(LatticeState x) const;        // cemetery -> 0
    double at_site(std::int64_t m) const;   // throws when m is off the grid
    std::int64_t max_site() const { return static_cast<std::int64_t>(values_.size()) - 1; }
    double spacing() const { return spacing_; }

  private:
    GridFunction(double spacing, std::vector<double> values);
    double spacing_;
    std::vector<double> values_;
};

// One-step generator of the lattice walk:
//   x >= 1: (f(x+1) + f(x-1) - 2 f(x)) / 2
//   x  = 0: (A/N^alpha)(0 - f(0)) + (B/N^beta)(f(1) - f(0))
//   cemetery: 0
double apply_lattice_generator(const BoundaryParams& params, const GridFunction& f,
                               LatticeState x);

// Generator of the rescaled walk on the 1/N grid; equals N^2 times the
// lattice generator applied to the projected values.
double apply_rescaled_generator(const BoundaryParams& params, const GridFunction& f,
                                LatticeState x);

// Discrete Dynkin decomposition along a path:
//   M_k = f(X_k) - f(X_0) - sum_{j<k} Lf(X_j).
struct DynkinRecord {
    std::vector<double> martingale;   // M_0..M_n, M_0 = 0
    std::vector<double> increments;   // M_{k+1} - M_k
};

DynkinRecord dynkin_record(const BoundaryParams& params, const PathSample& path,
                           const GridFunction& f);

// E[f(X_1) - f(X_0) | X_0 = x] - Lf(x), by exact enumeration of the one-step
// distribution. Identically zero up to rounding.
double dynkin_increment_mean(const BoundaryParams& params, const GridFunction& f,
                             LatticeState x);

// Residual h_N(y) = L_N f(y) - (1/2) f''(y) of the rescaled generator against
// the limiting one, evaluated at lattice sites y = m/N.
struct CompensatorResidual {
    Regime regime = Regime::Unclassified;
    std::vector<std::pair<std::int64_t, double>> residuals;  // (site, h_N)
    double bulk_sup = 0.0;    // sup over tested sites m >= 1
    double origin_abs = 0.0;  // |h_N(0)| when site 0 was tested
};

// f must satisfy the regime's boundary condition within
// |c1 f(0) - c2 f'(0) + (c3/2) f''(0)| <= 1e-8 (sup|f| + sup|f''|);
// otherwise the function is rejected.
CompensatorResidual compensator_residual(const LimitKind& kind, const BoundaryParams& params,
                                         const SmoothTestFunction& f,
                                         const std::vector<std::int64_t>& sites);

// Second-order Taylor model of the origin residual,
//   B N^{2-beta} (f'(0)/N + f''(0)/(2N^2) + f'''(0)/(6N^3))
//     - A N^{2-alpha} f(0) - f''(0)/2,
// used to check measured residuals against the expected decay.
double origin_residual_model(const BoundaryParams& params, const SmoothTestFunction& f);

}  // namespace halfline
