#pragma once

#include <cstdint>
#include <vector>

#include "halfline/series.hpp"
#include "halfline/walk.hpp"

namespace halfline {

// How a table of return probabilities F_k = P(X_k = 0) was produced.
//   ExactDp          exact propagation of the chain distribution (ground truth)
//   PaperRecurrence  F_k = (1-p)^k     + sum_j h_j F_{k-2j}
//   CorrectedRenewal F_k = (1-p)F_{k-1} + sum_j h_j F_{k-2j}
//   Asymptotic       k^{-3/2} / (sqrt(2 pi) (1-p)^2), defined for k >= 1 only
enum class ReturnMethod { ExactDp, PaperRecurrence, CorrectedRenewal, Asymptotic };

const char* to_string(ReturnMethod method);

struct ReturnProbTable {
    double p = 0.0;
    ReturnMethod method = ReturnMethod::ExactDp;
    std::vector<double> values;  // index k = 0..K; NaN at k = 0 for Asymptotic
    // The asymptotic row is a large-k model, not a probability; consumers
    // should not expect agreement with the exact table at finite k.
    bool disclaimer = false;
};

// C_n = binom(2n, n) / (n + 1), exact in 64-bit; throws std::overflow_error
// once the result no longer fits (n > 36).
std::uint64_t catalan(int n);

// C_{j-1} / 4^{j-1} evaluated by a stable multiplicative recurrence (j >= 1).
double catalan_quarter_weight(std::int64_t j);

// Partial sum of catalan_quarter_weight over j = 1..terms; converges to 2
// with an O(1/sqrt(terms)) tail.
double catalan_mass_partial(std::int64_t terms);

// h_j: probability that the walk first returns to 0 at time 2j, given origin
// departure probability p.
double first_return_mass(std::int64_t j, double p);

ReturnProbTable return_probabilities(double p, int horizon, ReturnMethod method);

enum class GfKind { G, H, FPaper };

// Truncated coefficients of G(x) = 1/(1-(1-p)x) - 1, H(x) = p(1 - sqrt(1-x)),
// or F(x) = (G(x) + 1) / (1 - H(x^2)).
SeriesPoly gf_coefficients(GfKind which, double p, int order);

// sum_{k=0..n} F_k under the chosen method.
double expected_local_time(double p, int n, ReturnMethod method);

// zeta(3/2) summed directly with an Euler-Maclaurin tail correction.
double zeta_three_halves();

// Closed-form upper-bound expression for the expected local time:
//   1/p + p / (sqrt(2 pi) (1-p)^2) * (-zeta(3/2) + 2 sqrt(2)/sqrt(n)).
// This is a reporting value: the bracket is negative for n >= 2, so the
// expression can fall below the exact expectation and must not be asserted
// against it.
struct LocalTimeBound {
    double p = 0.0;
    std::int64_t n = 0;
    double gamma = 0.0;  // min(alpha, beta) when derived from walk parameters
    double value = 0.0;
};

LocalTimeBound local_time_upper_bound(double p, std::int64_t n);
LocalTimeBound local_time_upper_bound(const BoundaryParams& params, std::int64_t n);

// Growth exponents (gamma, -beta, -beta - 1/2) of the three terms in the
// local-time bound for the walk with killing, gamma = min(alpha, beta).
struct LocalTimeScaling {
    double gamma;
    double bulk_exponent;
    double tail_exponent;
};

LocalTimeScaling local_time_scaling(const BoundaryParams& params);

// Exact-rational evaluation of the recurrences for p = num/den, converted to
// double at the end. Cross-check mode for the floating-point tables; intended
// for horizons up to a couple hundred.
std::vector<double> return_probabilities_rational(std::int64_t num, std::int64_t den,
                                                  int horizon, ReturnMethod method);

}  // namespace halfline
