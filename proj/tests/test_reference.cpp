#include <cmath>
#include <stdexcept>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "halfline/reference.hpp"
#include "oracles.hpp"

using namespace halfline;

namespace {

const std::function<double(double)> kOne = [](double) { return 1.0; };
const std::function<double(double)> kBump = [](double x) {
    const double d = x - 1.0;
    return std::exp(-4.0 * d * d);
};

}  // namespace

TEST_SUITE_BEGIN("reference");

TEST_CASE("closed-form laws: conservation, first passage, stopped martingale") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));

    // Reflection conserves mass.
    CHECK(closed_form_expectation(ClosedFormKind::Reflected, kOne, 0.7, 0.9) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // Killed survival from x0 = 1 at t = 1 is 1 - 2 Phi(-1).
    const double survival = closed_form_expectation(ClosedFormKind::Killed, kOne, 1.0, 1.0);
    CHECK(survival == doctest::Approx(0.6826894921370859).epsilon(1e-9));

    // Absorbed with f(x) = x keeps the stopped-martingale value x0.
    for (double x0 : {0.25, 0.8, 1.7})
        CHECK(closed_form_expectation(
                  ClosedFormKind::Absorbed, [](double x) { return x; }, x0, 0.6) ==
              doctest::Approx(x0).epsilon(1e-9));

    CHECK_THROWS_AS(closed_form_expectation(ClosedFormKind::Killed, kOne, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(closed_form_expectation(ClosedFormKind::Killed, kOne, -1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("first-passage probability agrees with a plain random-walk sampler") {
    const auto mc = oracles::srw_first_passage(1.0, 1.0, 100, 20000, 314159);
    const double exact = 2.0 * normal_cdf(-1.0);
    // Monte Carlo noise plus O(1/N) lattice bias.
    CHECK(std::abs(mc.value - exact) <= 4.0 * mc.std_error + 0.015);
}

TEST_CASE("closed-form mass accounting sums to one") {
    for (auto kind :
         {ClosedFormKind::Reflected, ClosedFormKind::Absorbed, ClosedFormKind::Killed}) {
        const ClosedFormLaw law{kind, 0.5, 0.8};
        const double total = law.continuous_mass() + law.origin_atom() + law.cemetery_mass();
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // CDF at the far edge equals the continuous mass.
        CHECK(law.continuous_cdf(30.0) == doctest::Approx(law.continuous_mass()).epsilon(1e-12));
    }
}

TEST_CASE("wentzell solve: pure Neumann conserves constants") {
    const auto grid = wentzell_solve({0, 1, 0}, kOne, 0.4, 8.0 / 500, 0.4 / 400, 8.0);
    for (const auto& [s, row] : grid.snapshots)
        for (double v : row) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wentzell solve: absorbing triple keeps the stopped martingale") {
    // Payoff x truncated to a plateau well below L.
    const std::function<double(double)> capped = [](double x) { return std::min(x, 4.0); };
    const auto grid = wentzell_solve({0, 0, 1}, capped, 0.5, 12.0 / 2000, 0.5 / 2000, 12.0);
    for (double x0 : {0.2, 0.5, 1.0})
        CHECK(grid.value_at(x0) == doctest::Approx(x0).epsilon(2e-4));
}

TEST_CASE("wentzell solve matches the closed forms at the spec grid") {
    const double length = 8.0;
    double coarse_err = 0.0;
    for (double t : {0.25, 0.5, 1.0}) {
        const auto reflected =
            wentzell_solve({0, 1, 0}, kBump, t, length / 2000, t / 4000, length);
        const auto absorbed =
            wentzell_solve({0, 0, 1}, kBump, t, length / 2000, t / 4000, length);
        const auto killed =
            wentzell_solve({1, 0, 0}, kBump, t, length / 2000, t / 4000, length);
        for (double x0 = 0.1; x0 <= 2.0; x0 += 0.05) {
            const double r_err = std::abs(
                reflected.value_at(x0) -
                closed_form_expectation(ClosedFormKind::Reflected, kBump, x0, t));
            const double k_err =
                std::abs(killed.value_at(x0) -
                         closed_form_expectation(ClosedFormKind::Killed, kBump, x0, t));
            // Absorbed with a payoff vanishing at 0 coincides with killed.
            const double a_err = std::abs(
                absorbed.value_at(x0) -
                closed_form_expectation(ClosedFormKind::Absorbed, kBump, x0, t));
            CHECK(r_err <= 2e-3);
            CHECK(k_err <= 2e-3);
            CHECK(a_err <= 2e-3);
            coarse_err = std::max({coarse_err, r_err});
        }
    }

    // Halving dx and dt shrinks the reflected error by at least 3x.
    const double t = 0.5;
    const auto fine =
        wentzell_solve({0, 1, 0}, kBump, t, length / 4000, t / 8000, length);
    double fine_err = 0.0, coarse_half = 0.0;
    const auto coarse =
        wentzell_solve({0, 1, 0}, kBump, t, length / 2000, t / 4000, length);
    for (double x0 = 0.1; x0 <= 2.0; x0 += 0.05) {
        const double exact = closed_form_expectation(ClosedFormKind::Reflected, kBump, x0, t);
        fine_err = std::max(fine_err, std::abs(fine.value_at(x0) - exact));
        coarse_half = std::max(coarse_half, std::abs(coarse.value_at(x0) - exact));
    }
    CHECK(coarse_half / fine_err >= 3.0);
}

TEST_CASE("wentzell solve: grid maximum principle and survival monotonicity") {
    // A genuinely mixed triple.
    const BoundaryTriple triple{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto grid = wentzell_solve(triple, kBump, 0.5, 8.0 / 1000, 0.5 / 1000, 8.0);
    for (const auto& [s, row] : grid.snapshots)
        for (double v : row) {
            CHECK(v >= -1e-8);
            CHECK(v <= 1.0 + 1e-8);
        }

    // With payoff 1 the solution at x0 is the survival probability:
    // non-increasing in time, and identically 1 when c1 = 0.
    const auto survival = wentzell_solve(triple, kOne, 0.5, 8.0 / 1000, 0.5 / 1000, 8.0);
    double prev = 1.0;
    for (const auto& [s, row] : survival.snapshots) {
        const double at_half = row[static_cast<std::size_t>(0.5 / survival.dx)];
        CHECK(at_half <= prev + 1e-12);
        prev = at_half;
    }
    CHECK(prev < 1.0);  // some killing actually happened

    const auto sticky = wentzell_solve({0, 0.5, 0.5}, kOne, 0.5, 8.0 / 1000, 0.5 / 1000, 8.0);
    CHECK(sticky.final_row[100] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("wentzell solve input validation") {
    CHECK_THROWS_AS(wentzell_solve({0.5, 0.2, 0.2}, kOne, 0.5, 0.01, 0.001, 8.0),
                    std::invalid_argument);  // off the simplex
    // dt/dx^2 over the scheme bound.
    CHECK_THROWS_AS(wentzell_solve({0, 1, 0}, kOne, 0.5, 1e-4, 0.01, 8.0),
                    std::invalid_argument);
    // Payoff still varying near L.
    CHECK_THROWS_AS(
        wentzell_solve({0, 1, 0}, [](double x) { return x; }, 0.5, 8.0 / 1000, 0.5 / 1000, 8.0),
        std::invalid_argument);
}

TEST_CASE("expectation_under_reference for both representations") {
    const auto reflected = ReferenceLaw::closed_form(Regime::Reflected, 1.0, 1.0);
    CHECK(expectation_under_reference(reflected, [](double) { return 0.0; }) == 0.0);
    CHECK(expectation_under_reference(reflected, kOne) == doctest::Approx(1.0).epsilon(1e-9));

    const auto killed = ReferenceLaw::closed_form(Regime::Killed, 1.0, 1.0);
    CHECK(expectation_under_reference(killed, kOne) ==
          doctest::Approx(0.6826894921370859).epsilon(1e-9));

    CHECK_THROWS_AS(ReferenceLaw::closed_form(Regime::Sticky, 1.0, 1.0),
                    std::invalid_argument);

    const auto grid = wentzell_solve({0, 1, 0}, kBump, 0.5, 8.0 / 1000, 0.5 / 1000, 8.0);
    const auto law = ReferenceLaw::pde(Regime::Mixed, grid, 0.5);
    CHECK(expectation_under_reference(law, kBump) ==
          doctest::Approx(grid.value_at(0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(expectation_under_reference(law, kOne), std::invalid_argument);
}

TEST_CASE("grid CSV export has a header and one row per point") {
    const auto grid = wentzell_solve({0, 1, 0}, kOne, 0.1, 8.0 / 100, 0.1 / 50, 8.0);
    std::ostringstream out;
    grid.to_csv(out);
    const std::string csv = out.str();
    CHECK(csv.rfind("x,u\n", 0) == 0);
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == grid.final_row.size() + 1);
}

TEST_SUITE_END();
