#pragma once

#include <string>

namespace halfline {

// Wentzell coefficients (c1, c2, c3) on the unit simplex. c1 weights killing,
// c2 reflection, c3 absorption in the domain condition
//   c1 f(0) - c2 f'(0) + (c3/2) f''(0) = 0.
struct BoundaryTriple {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;

    bool on_simplex(double tol = 1e-12) const;
    // c1 = 1 falls outside the Feller class; the walk still has a limit (the
    // killed Brownian motion) via a spatial-shift argument.
    bool degenerate_killed() const { return c1 == 1.0 && c2 == 0.0 && c3 == 0.0; }
};

enum class Regime {
    Mixed,
    Sticky,
    ExponentialHolding,
    Reflected,
    Absorbed,
    Elastic,
    Killed,
    Unclassified,
};

const char* to_string(Regime regime);

// Classification result: the regime tag, its boundary triple, and whether a
// boundary-of-region convention (rather than a core region of the phase
// diagram) was applied.
struct LimitKind {
    Regime regime = Regime::Unclassified;
    BoundaryTriple triple;
    bool extension = false;
    std::string note;
};

// Maps (alpha, beta, A, B) to the limiting process. Core regions, for
// A, B > 0:
//   beta < 1 : alpha < beta+1 killed | alpha = beta+1 elastic | else reflected
//   beta = 1 : alpha = 2 mixed       | alpha > 2 sticky
//   beta > 1 : alpha < 2 killed      | alpha = 2 exp. holding | else absorbed
// Cases the core diagram leaves open (beta = 1 with alpha < 2, or a vanishing
// A or B) are resolved by the dominant surviving rate and flagged as
// extensions. Invalid inputs yield Regime::Unclassified with a reason.
LimitKind classify(double alpha, double beta, double big_a, double big_b);

// Canonical walk parameters whose classification returns the given triple.
// Inverse of classify up to the choice of regime representative.
struct WalkRates {
    double alpha, beta, big_a, big_b;
};

WalkRates params_for_target(const BoundaryTriple& triple);

}  // namespace halfline
