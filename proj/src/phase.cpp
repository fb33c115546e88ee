#include "halfline/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace halfline {

bool BoundaryTriple::on_simplex(double tol) const {
    return c1 >= 0.0 && c2 >= 0.0 && c3 >= 0.0 && std::abs(c1 + c2 + c3 - 1.0) <= tol;
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::Mixed: return "mixed";
        case Regime::Sticky: return "sticky";
        case Regime::ExponentialHolding: return "exponential-holding";
        case Regime::Reflected: return "reflected";
        case Regime::Absorbed: return "absorbed";
        case Regime::Elastic: return "elastic";
        case Regime::Killed: return "killed";
        case Regime::Unclassified: return "unclassified";
    }
    return "unknown";
}

namespace {

LimitKind make(Regime regime, BoundaryTriple triple, bool extension = false,
               std::string note = {}) {
    return LimitKind{regime, triple, extension, std::move(note)};
}

BoundaryTriple mixed_triple(double big_a, double big_b) {
    // A = c1/c3, B = c2/c3 with c1 + c2 + c3 = 1.
    const double c3 = 1.0 / (1.0 + big_a + big_b);
    return {big_a * c3, big_b * c3, c3};
}

BoundaryTriple sticky_triple(double big_b) {
    // c1 = 0, B = c2/c3.
    const double c3 = 1.0 / (1.0 + big_b);
    return {0.0, big_b * c3, c3};
}

BoundaryTriple holding_triple(double big_a) {
    // c2 = 0, A = c1/c3.
    const double c3 = 1.0 / (1.0 + big_a);
    return {big_a * c3, 0.0, c3};
}

BoundaryTriple elastic_triple(double big_a, double big_b) {
    // c3 = 0, A = c1, B = c2, normalized onto the simplex.
    const double s = big_a + big_b;
    return {big_a / s, big_b / s, 0.0};
}

constexpr BoundaryTriple kReflected{0.0, 1.0, 0.0};
constexpr BoundaryTriple kAbsorbed{0.0, 0.0, 1.0};
constexpr BoundaryTriple kKilled{1.0, 0.0, 0.0};

}  // namespace

LimitKind classify(double alpha, double beta, double big_a, double big_b) {
    const bool valid = std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(big_a) &&
                       std::isfinite(big_b) && alpha >= 0.0 && beta >= 0.0 && big_a >= 0.0 &&
                       big_b >= 0.0;
    if (!valid)
        return make(Regime::Unclassified, {}, false,
                    "parameters must be finite and non-negative");

    if (big_a == 0.0 && big_b == 0.0)
        return make(Regime::Absorbed, kAbsorbed, true,
                    "extension: both origin rates vanish, the walk freezes at zero");
    if (big_a == 0.0) {
        // No killing: only the bulk re-entry rate matters.
        if (beta < 1.0)
            return make(Regime::Reflected, kReflected, true,
                        "extension: A = 0, bulk rate dominates");
        if (beta == 1.0)
            return make(Regime::Sticky, sticky_triple(big_b), true, "extension: A = 0");
        return make(Regime::Absorbed, kAbsorbed, true,
                    "extension: A = 0, origin holding time diverges");
    }
    if (big_b == 0.0) {
        // No bulk re-entry: hitting zero starts a pure killing clock.
        if (alpha < 2.0)
            return make(Regime::Killed, kKilled, true,
                        "extension: B = 0, killing clock dominates");
        if (alpha == 2.0)
            return make(Regime::ExponentialHolding, holding_triple(big_a), true,
                        "extension: B = 0");
        return make(Regime::Absorbed, kAbsorbed, true,
                    "extension: B = 0, killing clock diverges");
    }

    if (beta < 1.0) {
        if (alpha < beta + 1.0) return make(Regime::Killed, kKilled);
        if (alpha == beta + 1.0)
            return make(Regime::Elastic, elastic_triple(big_a, big_b));
        return make(Regime::Reflected, kReflected);
    }
    if (beta == 1.0) {
        if (alpha < 2.0)
            return make(Regime::Killed, kKilled, true,
                        "extension: beta = 1 with alpha < 2, killing rate dominates");
        if (alpha == 2.0) return make(Regime::Mixed, mixed_triple(big_a, big_b));
        return make(Regime::Sticky, sticky_triple(big_b));
    }
    // beta > 1
    if (alpha < 2.0) return make(Regime::Killed, kKilled);
    if (alpha == 2.0) return make(Regime::ExponentialHolding, holding_triple(big_a));
    return make(Regime::Absorbed, kAbsorbed);
}

WalkRates params_for_target(const BoundaryTriple& triple) {
    if (!triple.on_simplex())
        throw std::invalid_argument("params_for_target: triple must lie on the unit simplex");
    const bool z1 = triple.c1 == 0.0, z2 = triple.c2 == 0.0, z3 = triple.c3 == 0.0;

    if (z1 && z2) return {3.0, 2.0, 1.0, 1.0};    // absorbed
    if (z1 && z3) return {3.0, 0.5, 1.0, 1.0};    // reflected
    if (z2 && z3) return {1.0, 0.5, 1.0, 1.0};    // killed (degenerate c1 = 1)
    if (z1) return {3.0, 1.0, 1.0, triple.c2 / triple.c3};          // sticky
    if (z2) return {2.0, 2.0, triple.c1 / triple.c3, 1.0};          // exponential holding
    if (z3) return {1.5, 0.5, triple.c1, triple.c2};                // elastic
    return {2.0, 1.0, triple.c1 / triple.c3, triple.c2 / triple.c3};  // mixed
}

}  // namespace halfline
