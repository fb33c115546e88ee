#include <cmath>
#include <stdexcept>
#include <map>
#include <random>

#include "doctest.h"
#include "halfline/rng.hpp"
#include "halfline/walk.hpp"

using namespace halfline;

TEST_SUITE_BEGIN("walk");

TEST_CASE("philox known-answer vectors") {
    // Reference vectors for the 4x32-10 configuration.
    auto zeros = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(zeros[0] == 0x6627e8d5u);
    CHECK(zeros[1] == 0xe169c58du);
    CHECK(zeros[2] == 0xbc57ac4cu);
    CHECK(zeros[3] == 0x9b00dbd8u);
    const std::uint32_t ff = 0xffffffffu;
    auto ones = philox4x32({ff, ff, ff, ff}, {ff, ff});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);
}

TEST_CASE("counter rng is addressable and statistically sane") {
    CounterRng a(42, 7);
    CounterRng b(42, 7);
    // Out-of-order access gives the same draws as sequential access.
    const double u5 = a.uniform(5);
    for (int i = 0; i < 6; ++i) b.uniform(static_cast<std::uint64_t>(i));
    CHECK(u5 == b.uniform(5));

    CounterRng c(42, 8);
    CHECK(c.uniform(5) != u5);

    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    CounterRng d(123, 0);
    for (int i = 0; i < n; ++i) {
        const double u = d.uniform(static_cast<std::uint64_t>(i));
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.005);
    CHECK(std::abs(sumsq / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("boundary params validate the origin sub-distribution") {
    CHECK_NOTHROW(BoundaryParams(2, 1, 1, 1, 10));
    // A/N^a + B/N^b = 0.6 + 0.5 > 1: must fail, never clamp.
    CHECK_THROWS_AS(BoundaryParams(0.0, 0.0, 0.6, 0.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryParams(-1, 1, 1, 1, 10), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryParams(2, 1, -0.5, 1, 10), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryParams(2, 1, 1, 1, 0), std::invalid_argument);

    const BoundaryParams p(2, 1, 1, 1, 10);
    CHECK(p.death_prob() == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(p.up_prob() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(p.stay_prob() == doctest::Approx(0.89).epsilon(1e-15));
}

TEST_CASE("step distribution at bulk, origin and cemetery") {
    const BoundaryParams p(2, 1, 1, 1, 10);

    auto bulk = step_distribution(p, LatticeState::site(3));
    REQUIRE(bulk.size() == 2);
    CHECK(bulk[0].first == LatticeState::site(2));
    CHECK(bulk[0].second == 0.5);
    CHECK(bulk[1].first == LatticeState::site(4));
    CHECK(bulk[1].second == 0.5);

    auto origin = step_distribution(p, LatticeState::site(0));
    REQUIRE(origin.size() == 3);
    std::map<std::int64_t, double> by_code;
    for (auto& [state, prob] : origin) by_code[state.code()] = prob;
    CHECK(by_code[-1] == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(by_code[1] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(by_code[0] == doctest::Approx(0.89).epsilon(1e-15));

    auto dead = step_distribution(p, LatticeState::cemetery());
    REQUIRE(dead.size() == 1);
    CHECK(dead[0].first.is_cemetery());
    CHECK(dead[0].second == 1.0);
}

TEST_CASE("step distribution masses sum to one for random parameters") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double alpha = 3.0 * unif(gen);
        const double beta = 2.5 * unif(gen);
        const std::int64_t n = 2 + static_cast<std::int64_t>(unif(gen) * 100);
        const double cap_a = 0.5 * std::pow(static_cast<double>(n), alpha);
        const double cap_b = 0.5 * std::pow(static_cast<double>(n), beta);
        const BoundaryParams params(alpha, beta, unif(gen) * cap_a, unif(gen) * cap_b, n);
        const LatticeState x = trial % 3 == 0 ? LatticeState::cemetery()
                                              : LatticeState::site(trial % 7);
        double total = 0.0;
        for (auto& [state, prob] : step_distribution(params, x)) {
            CHECK(prob >= 0.0);
            total += prob;
        }
        CHECK(std::abs(total - 1.0) <= 1e-15);
    }
}

TEST_CASE("simulate_path edge cases") {
    const BoundaryParams p(2, 1, 1, 1, 10);

    auto zero_steps = simulate_path(p, LatticeState::site(0), 0, 1);
    CHECK(zero_steps.states.size() == 1);
    CHECK(zero_steps.local_time_at_zero() == 1);
    auto zero_steps_bulk = simulate_path(p, LatticeState::site(4), 0, 1);
    CHECK(zero_steps_bulk.local_time_at_zero() == 0);

    auto from_cemetery = simulate_path(p, LatticeState::cemetery(), 5, 1);
    CHECK(from_cemetery.states.size() == 6);
    for (auto s : from_cemetery.states) CHECK(s.is_cemetery());

    // Zero origin rates: the walk holds at 0 forever.
    const BoundaryParams frozen(2, 1, 0, 0, 10);
    auto held = simulate_path(frozen, LatticeState::site(0), 50, 9);
    for (auto s : held.states) CHECK(s == LatticeState::site(0));
    CHECK(held.local_time_at_zero() == 51);
}

TEST_CASE("paths are reproducible and stream-separated") {
    const BoundaryParams p(2, 1, 1, 1, 50);
    auto a = simulate_path(p, LatticeState::site(5), 400, 77, 3);
    auto b = simulate_path(p, LatticeState::site(5), 400, 77, 3);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t k = 0; k < a.states.size(); ++k) CHECK(a.states[k] == b.states[k]);

    auto c = simulate_path(p, LatticeState::site(5), 400, 77, 4);
    bool differs = false;
    for (std::size_t k = 0; k < a.states.size(); ++k)
        if (!(a.states[k] == c.states[k])) differs = true;
    CHECK(differs);
}

TEST_CASE("path invariants hold along random trajectories") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 60; ++trial) {
        const BoundaryParams p(1.0, 0.3, 0.4, 0.4, 2 + (trial % 9));
        const auto start = LatticeState::site(gen() % 4);
        const auto path = simulate_path(p, start, 300, gen(), trial);

        std::int64_t zero_count = 0;
        for (std::size_t k = 0; k + 1 < path.states.size(); ++k) {
            const LatticeState cur = path.states[k], nxt = path.states[k + 1];
            if (cur.is_cemetery()) {
                CHECK(nxt.is_cemetery());  // absorbing
            } else if (cur.site() >= 1) {
                REQUIRE(!nxt.is_cemetery());  // death only from the origin
                CHECK(std::abs(nxt.site() - cur.site()) == 1);
            } else {
                CHECK((nxt.is_cemetery() || nxt.site() <= 1));
            }
        }
        for (auto s : path.states)
            if (!s.is_cemetery() && s.site() == 0) ++zero_count;
        CHECK(zero_count == path.local_time_at_zero());
    }
}

TEST_CASE("summary agrees with the dense path") {
    const BoundaryParams p(1.0, 0.5, 0.8, 0.8, 4);
    SummaryOptions options;
    options.neighborhood_cutoff = 2;
    options.checkpoints = {0, 10, 100, 250};
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
        const auto path = simulate_path(p, LatticeState::site(3), 250, 11, stream);
        const auto summary = simulate_summary(p, LatticeState::site(3), 250, 11, stream, options);
        CHECK(summary.final_state == path.states.back());
        CHECK(summary.local_time_at_zero == path.local_time_at_zero());
        CHECK(summary.died == path.states.back().is_cemetery());

        std::int64_t in_neighborhood = 0, first_zero = -1;
        for (std::size_t k = 0; k < path.states.size(); ++k) {
            const auto s = path.states[k];
            if (s.is_cemetery()) continue;
            if (s.site() <= 2) ++in_neighborhood;
            if (s.site() == 0 && first_zero < 0) first_zero = static_cast<std::int64_t>(k);
        }
        CHECK(summary.neighborhood_steps == in_neighborhood);
        CHECK(summary.first_zero_hit == first_zero);
        for (std::size_t i = 0; i < options.checkpoints.size(); ++i) {
            const auto idx = static_cast<std::size_t>(options.checkpoints[i]);
            CHECK(static_cast<bool>(summary.alive_at[i]) ==
                  !path.states[idx].is_cemetery());
        }
    }
}

TEST_CASE("one-step frequencies match the distribution within 4 standard errors") {
    const BoundaryParams p(2, 1, 1, 1, 10);
    const int n = 1000000;
    std::int64_t dead = 0, up = 0, stay = 0;
    for (int r = 0; r < n; ++r) {
        const auto s = simulate_summary(p, LatticeState::site(0), 1, 99,
                                        static_cast<std::uint64_t>(r));
        if (s.final_state.is_cemetery())
            ++dead;
        else if (s.final_state.site() == 1)
            ++up;
        else
            ++stay;
    }
    auto within = [n](std::int64_t count, double prob) {
        const double se = std::sqrt(prob * (1.0 - prob) / n);
        return std::abs(static_cast<double>(count) / n - prob) <= 4.0 * se;
    };
    CHECK(within(dead, 0.01));
    CHECK(within(up, 0.1));
    CHECK(within(stay, 0.89));
}

TEST_CASE("rescaled position maps sites and the cemetery") {
    const BoundaryParams p(2, 1, 1, 1, 10);

    PathSample path;
    path.states.assign(101, LatticeState::site(7));
    CHECK(rescaled_position(path, p, 1.0).value() == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(rescaled_position(path, p, 0.0).value() == doctest::Approx(0.7).epsilon(1e-15));

    path.states[100] = LatticeState::cemetery();
    CHECK(!rescaled_position(path, p, 1.0).has_value());

    CHECK_THROWS_AS(rescaled_position(path, p, 1.01), std::out_of_range);
    CHECK(time_index(p, 0.37) == 37);
}

TEST_SUITE_END();
