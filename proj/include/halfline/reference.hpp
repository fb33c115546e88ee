#pragma once

#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "halfline/phase.hpp"

namespace halfline {

double normal_cdf(double x);

// Classical half-line laws at time t started from x0. Density, atoms and
// cemetery mass are exact up to quadrature.
enum class ClosedFormKind { Reflected, Absorbed, Killed };

struct ClosedFormLaw {
    ClosedFormKind kind;
    double t;
    double x0;

    // Density of the continuous part on (0, inf).
    double density(double x) const;
    // Mass of the continuous part on (0, x].
    double continuous_cdf(double x) const;
    double continuous_mass() const;
    double origin_atom() const;    // absorbed: P(hit by t); otherwise 0
    double cemetery_mass() const;  // killed: P(hit by t); otherwise 0
};

// E_x0[f(W_t)] for the three classical laws. f is evaluated on [0, inf);
// its cemetery value is zero by convention.
double closed_form_expectation(ClosedFormKind kind, const std::function<double(double)>& f,
                               double x0, double t);

// Crank-Nicolson solution of u_t = u_xx / 2 on [0, L] with the dynamic
// boundary row c1 u(0) - c2 u_x(0) + c3 u_t(0) = 0 and u(L) pinned to the
// far-field value of the payoff. u(s, x) = E_x[f(W_s)].
struct HeatGrid {
    BoundaryTriple triple;
    double dx = 0.0, dt = 0.0, length = 0.0, t = 0.0;
    std::vector<double> payoff;                                // initial row
    std::vector<double> final_row;                             // u(t, .)
    std::vector<std::pair<double, std::vector<double>>> snapshots;  // (s, u(s, .))

    double value_at(double x) const;   // linear interpolation in the final row
    double payoff_at(double x) const;  // linear interpolation in the payoff row
    void to_csv(std::ostream& out) const;  // columns x, u(t, x)
};

struct WentzellOptions {
    int snapshot_count = 9;
    // Variation of the payoff near L above this (relative) level is rejected:
    // the Dirichlet pin would then distort the solution.
    double far_field_tol = 1e-6;
    double max_dt_over_dx2 = 100.0;
};

HeatGrid wentzell_solve(const BoundaryTriple& triple, const std::function<double(double)>& payoff,
                        double t, double dx, double dt, double length,
                        const WentzellOptions& options = {});

// A reference value E_x0[f(W_t)]: either a closed-form law (any payoff) or a
// PDE solve (payoff fixed at solve time).
struct ReferenceLaw {
    Regime regime = Regime::Unclassified;
    double t = 0.0;
    double x0 = 0.0;
    std::variant<ClosedFormLaw, HeatGrid> representation;

    static ReferenceLaw closed_form(Regime regime, double t, double x0);
    static ReferenceLaw pde(Regime regime, const HeatGrid& grid, double x0);

    bool is_closed_form() const;
    const ClosedFormLaw& closed() const;
    const HeatGrid& grid() const;
};

// Quadrature of f against the law (adaptive for closed forms, the stored
// solve for grids). For grid-backed laws f must match the payoff the grid was
// solved with; a mismatch is signaled.
double expectation_under_reference(const ReferenceLaw& law,
                                   const std::function<double(double)>& f);

}  // namespace halfline
