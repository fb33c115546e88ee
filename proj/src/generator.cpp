#include "halfline/generator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace halfline {

GridFunction::GridFunction(double spacing, std::vector<double> values)
    : spacing_(spacing), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("GridFunction: empty value list");
    if (!(spacing_ > 0.0)) throw std::invalid_argument("GridFunction: spacing must be positive");
}

GridFunction GridFunction::lattice(std::vector<double> values) {
    return GridFunction(1.0, std::move(values));
}

GridFunction GridFunction::rescaled(std::int64_t scale_n, std::vector<double> values) {
    if (scale_n < 1) throw std::invalid_argument("GridFunction: N must be >= 1");
    return GridFunction(1.0 / static_cast<double>(scale_n), std::move(values));
}

GridFunction GridFunction::sample(double spacing, std::int64_t max_site,
                                  const std::function<double(double)>& f) {
    std::vector<double> values(static_cast<std::size_t>(max_site) + 1);
    for (std::int64_t m = 0; m <= max_site; ++m)
        values[static_cast<std::size_t>(m)] = f(spacing * static_cast<double>(m));
    return GridFunction(spacing, std::move(values));
}

double GridFunction::at(LatticeState x) const {
    return x.is_cemetery() ? 0.0 : at_site(x.site());
}

double GridFunction::at_site(std::int64_t m) const {
    if (m < 0 || m > max_site())
        throw std::out_of_range("GridFunction: site " + std::to_string(m) +
                                " is off the grid (max " + std::to_string(max_site()) + ")");
    return values_[static_cast<std::size_t>(m)];
}

namespace {

// Lattice-form generator value from neighbor samples; the rescaled generator
// is exactly N^2 times this, computed with the same operation order.
double lattice_form(const BoundaryParams& params, const GridFunction& f, LatticeState x) {
    if (x.is_cemetery()) return 0.0;
    const std::int64_t m = x.site();
    if (m >= 1)
        return 0.5 * ((f.at_site(m + 1) + f.at_site(m - 1)) - 2.0 * f.at_site(m));
    return params.death_prob() * (0.0 - f.at_site(0)) +
           params.up_prob() * (f.at_site(1) - f.at_site(0));
}

}  // namespace

double apply_lattice_generator(const BoundaryParams& params, const GridFunction& f,
                               LatticeState x) {
    return lattice_form(params, f, x);
}

double apply_rescaled_generator(const BoundaryParams& params, const GridFunction& f,
                                LatticeState x) {
    const double n = static_cast<double>(params.scale_n());
    return (n * n) * lattice_form(params, f, x);
}

DynkinRecord dynkin_record(const BoundaryParams& params, const PathSample& path,
                           const GridFunction& f) {
    if (path.states.empty()) throw std::invalid_argument("dynkin_record: empty path");
    DynkinRecord rec;
    rec.martingale.reserve(path.states.size());
    rec.increments.reserve(path.states.size() - 1);

    const double f0 = f.at(path.states.front());
    double compensator = 0.0;
    rec.martingale.push_back(0.0);
    for (std::size_t k = 1; k < path.states.size(); ++k) {
        compensator += apply_lattice_generator(params, f, path.states[k - 1]);
        const double m = f.at(path.states[k]) - f0 - compensator;
        rec.increments.push_back(m - rec.martingale.back());
        rec.martingale.push_back(m);
    }
    return rec;
}

double dynkin_increment_mean(const BoundaryParams& params, const GridFunction& f,
                             LatticeState x) {
    double drift = 0.0;
    for (const auto& [y, prob] : step_distribution(params, x))
        drift += prob * (f.at(y) - f.at(x));
    return drift - apply_lattice_generator(params, f, x);
}

CompensatorResidual compensator_residual(const LimitKind& kind, const BoundaryParams& params,
                                         const SmoothTestFunction& f,
                                         const std::vector<std::int64_t>& sites) {
    const BoundaryTriple& c = kind.triple;
    const double boundary_value =
        c.c1 * f.value(0.0) - c.c2 * f.d1(0.0) + 0.5 * c.c3 * f.d2(0.0);
    const double radius = f.support_radius();
    const double scale = f.sup_abs(0, 0.0, radius) + f.sup_abs(2, 0.0, radius);
    if (std::abs(boundary_value) > 1e-8 * scale)
        throw std::invalid_argument(
            "compensator_residual: test function violates the regime's boundary condition");

    const double n = static_cast<double>(params.scale_n());
    const double h = 1.0 / n;

    CompensatorResidual out;
    out.regime = kind.regime;
    out.residuals.reserve(sites.size());
    for (std::int64_t m : sites) {
        if (m < 0) throw std::invalid_argument("compensator_residual: negative site");
        const double y = static_cast<double>(m) * h;
        double discrete;
        if (m >= 1) {
            discrete = 0.5 * n * n * ((f.value(y + h) + f.value(y - h)) - 2.0 * f.value(y));
        } else {
            discrete = n * n *
                       (params.death_prob() * (0.0 - f.value(0.0)) +
                        params.up_prob() * (f.value(h) - f.value(0.0)));
        }
        const double residual = discrete - 0.5 * f.d2(y);
        out.residuals.emplace_back(m, residual);
        if (m >= 1)
            out.bulk_sup = std::max(out.bulk_sup, std::abs(residual));
        else
            out.origin_abs = std::abs(residual);
    }
    return out;
}

double origin_residual_model(const BoundaryParams& params, const SmoothTestFunction& f) {
    const double n = static_cast<double>(params.scale_n());
    const double bulk_rate = params.big_b() * std::pow(n, 2.0 - params.beta());
    const double kill_rate = params.big_a() * std::pow(n, 2.0 - params.alpha());
    return bulk_rate * (f.d1(0.0) / n + f.d2(0.0) / (2.0 * n * n) +
                        f.d3(0.0) / (6.0 * n * n * n)) -
           kill_rate * f.value(0.0) - 0.5 * f.d2(0.0);
}

}  // namespace halfline
