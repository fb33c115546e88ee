#include "halfline/reference.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace halfline {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

double gauss_density(double x, double variance) {
    return std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * 3.14159265358979323846 * variance);
}

// Adaptive Simpson with absolute tolerance.
double simpson(const std::function<double(double)>& f, double a, double m, double b,
               double fa, double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Composite panels first, adaptive refinement inside each: a feature narrower
// than the initial Simpson samples would otherwise be skipped entirely.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10) {
    if (!(b > a)) return 0.0;
    const int panels = std::max(16, static_cast<int>(std::ceil((b - a) / 0.25)));
    const double width = (b - a) / panels;
    const double panel_tol = tol / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + width * i;
        const double hi = (i + 1 == panels) ? b : lo + width;
        const double m = 0.5 * (lo + hi);
        const double fa = f(lo), fm = f(m), fb = f(hi);
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson(f, lo, m, hi, fa, fm, fb, whole, panel_tol, 40);
    }
    return total;
}

void require_law_inputs(double x0, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("reference law: t must be positive");
    if (!(x0 >= 0.0)) throw std::invalid_argument("reference law: x0 must be >= 0");
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double ClosedFormLaw::density(double x) const {
    if (x < 0.0) return 0.0;
    const double direct = gauss_density(x - x0, t);
    const double image = gauss_density(x + x0, t);
    return kind == ClosedFormKind::Reflected ? direct + image : direct - image;
}

double ClosedFormLaw::continuous_cdf(double x) const {
    if (x <= 0.0) return 0.0;
    const double s = std::sqrt(t);
    const double direct = normal_cdf((x - x0) / s) - normal_cdf(-x0 / s);
    const double image = normal_cdf((x + x0) / s) - normal_cdf(x0 / s);
    return kind == ClosedFormKind::Reflected ? direct + image : direct - image;
}

double ClosedFormLaw::continuous_mass() const {
    if (kind == ClosedFormKind::Reflected) return 1.0;
    return 1.0 - 2.0 * normal_cdf(-x0 / std::sqrt(t));
}

double ClosedFormLaw::origin_atom() const {
    return kind == ClosedFormKind::Absorbed ? 2.0 * normal_cdf(-x0 / std::sqrt(t)) : 0.0;
}

double ClosedFormLaw::cemetery_mass() const {
    return kind == ClosedFormKind::Killed ? 2.0 * normal_cdf(-x0 / std::sqrt(t)) : 0.0;
}

double closed_form_expectation(ClosedFormKind kind, const std::function<double(double)>& f,
                               double x0, double t) {
    require_law_inputs(x0, t);
    const ClosedFormLaw law{kind, t, x0};
    // Beyond x0 + 12 sqrt(t) the Gaussian mass is below 1e-32.
    const double upper = x0 + 12.0 * std::sqrt(t);
    double value = integrate([&](double x) { return f(x) * law.density(x); }, 0.0, upper);
    if (kind == ClosedFormKind::Absorbed) value += f(0.0) * law.origin_atom();
    return value;
}

HeatGrid wentzell_solve(const BoundaryTriple& triple, const std::function<double(double)>& payoff,
                        double t, double dx, double dt, double length,
                        const WentzellOptions& options) {
    if (!triple.on_simplex())
        throw std::invalid_argument("wentzell_solve: triple must lie on the unit simplex");
    if (!(t > 0.0) || !(dx > 0.0) || !(dt > 0.0) || !(length > 0.0))
        throw std::invalid_argument("wentzell_solve: t, dx, dt, L must be positive");
    if (dt / (dx * dx) > options.max_dt_over_dx2)
        throw std::invalid_argument("wentzell_solve: dt/dx^2 exceeds the scheme's bound");

    const std::size_t cells = static_cast<std::size_t>(std::llround(length / dx));
    if (cells < 8) throw std::invalid_argument("wentzell_solve: grid too coarse");
    const std::size_t points = cells + 1;
    const std::size_t steps = static_cast<std::size_t>(std::llround(t / dt));
    if (steps < 1) throw std::invalid_argument("wentzell_solve: dt larger than t");
    const double step_dt = t / static_cast<double>(steps);

    HeatGrid grid;
    grid.triple = triple;
    grid.dx = dx;
    grid.dt = step_dt;
    grid.length = length;
    grid.t = t;
    grid.payoff.resize(points);
    for (std::size_t j = 0; j < points; ++j)
        grid.payoff[j] = payoff(dx * static_cast<double>(j));

    // The right edge is pinned to the payoff's far-field value, so the payoff
    // must be flat over the outer 5% of the domain.
    double scale = 1.0, variation = 0.0;
    for (double v : grid.payoff) scale = std::max(scale, std::abs(v));
    const std::size_t flat_from = points - std::max<std::size_t>(points / 20, 2);
    for (std::size_t j = flat_from; j < points; ++j)
        variation = std::max(variation, std::abs(grid.payoff[j] - grid.payoff.back()));
    if (variation > options.far_field_tol * scale)
        throw std::invalid_argument(
            "wentzell_solve: payoff varies near L; enlarge the domain");

    const double lambda = step_dt / (4.0 * dx * dx);
    const bool dirichlet = (triple.c2 == 0.0 && triple.c3 == 0.0);

    // Boundary row coefficients (time-averaged like the interior rows).
    const double b0_new = triple.c3 / step_dt + 0.5 * triple.c1 + 0.75 * triple.c2 / dx;
    const double b1_new = -triple.c2 / dx;
    const double b2_new = 0.25 * triple.c2 / dx;
    const double b0_old = triple.c3 / step_dt - 0.5 * triple.c1 - 0.75 * triple.c2 / dx;
    const double b1_old = triple.c2 / dx;
    const double b2_old = -0.25 * triple.c2 / dx;

    std::vector<double> u = grid.payoff;
    if (dirichlet) u[0] = 0.0;
    std::vector<double> rhs(points), diag(points), lower(points), upper(points);
    std::vector<double> scratch_diag(points), scratch_rhs(points);

    const int snap_count = std::max(options.snapshot_count, 0);
    auto maybe_snapshot = [&](std::size_t step) {
        if (snap_count == 0) return;
        const std::size_t stride = std::max<std::size_t>(steps / (snap_count + 1), 1);
        if (step % stride == 0 || step == steps)
            grid.snapshots.emplace_back(step_dt * static_cast<double>(step), u);
    };
    maybe_snapshot(0);

    for (std::size_t step = 1; step <= steps; ++step) {
        // Interior rows.
        for (std::size_t j = 1; j + 1 < points; ++j) {
            lower[j] = -lambda;
            diag[j] = 1.0 + 2.0 * lambda;
            upper[j] = -lambda;
            rhs[j] = lambda * u[j - 1] + (1.0 - 2.0 * lambda) * u[j] + lambda * u[j + 1];
        }

        // Far-field Dirichlet pin.
        lower[points - 1] = 0.0;
        diag[points - 1] = 1.0;
        upper[points - 1] = 0.0;
        rhs[points - 1] = grid.payoff.back();

        double row0_b0, row0_b1, row0_rhs;
        if (dirichlet) {
            row0_b0 = 1.0;
            row0_b1 = 0.0;
            row0_rhs = 0.0;
        } else {
            // Eliminate the u_2 entry of the boundary row with interior row 1.
            const double factor = b2_new / upper[1];
            row0_b0 = b0_new - factor * lower[1];
            row0_b1 = b1_new - factor * diag[1];
            row0_rhs = b0_old * u[0] + b1_old * u[1] + b2_old * u[2] - factor * rhs[1];
        }

        // Thomas elimination downward.
        scratch_diag[0] = row0_b0;
        scratch_rhs[0] = row0_rhs;
        double upper0 = row0_b1;
        {
            const double w = lower[1] / scratch_diag[0];
            scratch_diag[1] = diag[1] - w * upper0;
            scratch_rhs[1] = rhs[1] - w * scratch_rhs[0];
        }
        for (std::size_t j = 2; j < points; ++j) {
            const double w = lower[j] / scratch_diag[j - 1];
            scratch_diag[j] = diag[j] - w * upper[j - 1];
            scratch_rhs[j] = rhs[j] - w * scratch_rhs[j - 1];
        }
        u[points - 1] = scratch_rhs[points - 1] / scratch_diag[points - 1];
        for (std::size_t j = points - 1; j-- > 0;) {
            const double up = (j == 0) ? upper0 : upper[j];
            u[j] = (scratch_rhs[j] - up * u[j + 1]) / scratch_diag[j];
        }

        maybe_snapshot(step);
    }

    grid.final_row = u;
    if (grid.snapshots.empty() || grid.snapshots.back().first != t)
        grid.snapshots.emplace_back(t, u);
    return grid;
}

namespace {
double interpolate_row(const std::vector<double>& row, double dx, double length, double x) {
    if (row.empty()) throw std::logic_error("HeatGrid: no row stored");
    if (x < 0.0 || x > length) throw std::out_of_range("HeatGrid: x outside [0, L]");
    const double pos = x / dx;
    const std::size_t j = std::min(static_cast<std::size_t>(pos), row.size() - 2);
    const double w = pos - static_cast<double>(j);
    return (1.0 - w) * row[j] + w * row[j + 1];
}
}  // namespace

double HeatGrid::value_at(double x) const { return interpolate_row(final_row, dx, length, x); }

double HeatGrid::payoff_at(double x) const { return interpolate_row(payoff, dx, length, x); }

void HeatGrid::to_csv(std::ostream& out) const {
    out << "x,u\n";
    for (std::size_t j = 0; j < final_row.size(); ++j)
        out << dx * static_cast<double>(j) << ',' << final_row[j] << '\n';
}

ReferenceLaw ReferenceLaw::closed_form(Regime regime, double t, double x0) {
    require_law_inputs(x0, t);
    ClosedFormKind kind;
    switch (regime) {
        case Regime::Reflected: kind = ClosedFormKind::Reflected; break;
        case Regime::Absorbed: kind = ClosedFormKind::Absorbed; break;
        case Regime::Killed: kind = ClosedFormKind::Killed; break;
        default:
            throw std::invalid_argument(
                "ReferenceLaw: closed forms exist for reflected, absorbed, killed only");
    }
    ReferenceLaw law;
    law.regime = regime;
    law.t = t;
    law.x0 = x0;
    law.representation = ClosedFormLaw{kind, t, x0};
    return law;
}

ReferenceLaw ReferenceLaw::pde(Regime regime, const HeatGrid& grid, double x0) {
    require_law_inputs(x0, grid.t);
    ReferenceLaw law;
    law.regime = regime;
    law.t = grid.t;
    law.x0 = x0;
    law.representation = grid;
    return law;
}

bool ReferenceLaw::is_closed_form() const {
    return std::holds_alternative<ClosedFormLaw>(representation);
}

const ClosedFormLaw& ReferenceLaw::closed() const {
    return std::get<ClosedFormLaw>(representation);
}

const HeatGrid& ReferenceLaw::grid() const { return std::get<HeatGrid>(representation); }

double expectation_under_reference(const ReferenceLaw& law,
                                   const std::function<double(double)>& f) {
    if (law.is_closed_form())
        return closed_form_expectation(law.closed().kind, f, law.x0, law.t);
    const HeatGrid& grid = law.grid();
    double scale = 1.0;
    for (double v : grid.payoff) scale = std::max(scale, std::abs(v));
    for (std::size_t j = 0; j < grid.payoff.size(); ++j) {
        const double x = grid.dx * static_cast<double>(j);
        if (std::abs(f(x) - grid.payoff[j]) > 1e-9 * scale)
            throw std::invalid_argument(
                "expectation_under_reference: payoff does not match the solved grid");
    }
    return grid.value_at(law.x0);
}

}  // namespace halfline
