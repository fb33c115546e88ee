#include "halfline/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "halfline/rng.hpp"

namespace halfline {

LatticeState LatticeState::site(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("LatticeState: site index must be >= 0");
    return LatticeState(n);
}

std::int64_t LatticeState::site() const {
    if (is_cemetery()) throw std::logic_error("LatticeState: cemetery has no site index");
    return code_;
}

BoundaryParams::BoundaryParams(double alpha, double beta, double big_a, double big_b,
                               std::int64_t scale_n)
    : alpha_(alpha), beta_(beta), big_a_(big_a), big_b_(big_b), scale_n_(scale_n) {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!ok(alpha) || !ok(beta) || !ok(big_a) || !ok(big_b))
        throw std::invalid_argument("BoundaryParams: alpha, beta, A, B must be finite and >= 0");
    if (scale_n < 1) throw std::invalid_argument("BoundaryParams: N must be >= 1");
    const double n = static_cast<double>(scale_n);
    death_ = big_a / std::pow(n, alpha);
    up_ = big_b / std::pow(n, beta);
    if (death_ + up_ > 1.0)
        throw std::invalid_argument("BoundaryParams: A/N^alpha + B/N^beta = " +
                                    std::to_string(death_ + up_) +
                                    " exceeds 1; origin probabilities are not a sub-distribution");
}

std::int64_t PathSample::local_time_at_zero() const {
    std::int64_t count = 0;
    for (const LatticeState& s : states)
        if (!s.is_cemetery() && s.code() == 0) ++count;
    return count;
}

std::vector<std::pair<LatticeState, double>> step_distribution(const BoundaryParams& params,
                                                               LatticeState x) {
    if (x.is_cemetery()) return {{LatticeState::cemetery(), 1.0}};
    const std::int64_t m = x.site();
    if (m >= 1)
        return {{LatticeState::site(m - 1), 0.5}, {LatticeState::site(m + 1), 0.5}};
    return {{LatticeState::cemetery(), params.death_prob()},
            {LatticeState::site(1), params.up_prob()},
            {LatticeState::site(0), params.stay_prob()}};
}

namespace {

// Shared transition kernel: maps (current site code, uniform draw) to the next
// site code. Cemetery is encoded as -1.
inline std::int64_t advance(std::int64_t code, double u, double death, double up) {
    if (code < 0) return code;
    if (code >= 1) return (u < 0.5) ? code + 1 : code - 1;
    if (u < death) return -1;
    if (u < death + up) return 1;
    return 0;
}

}  // namespace

PathSample simulate_path(const BoundaryParams& params, LatticeState start,
                         std::int64_t steps, std::uint64_t seed, std::uint64_t stream) {
    if (steps < 0) throw std::invalid_argument("simulate_path: steps must be >= 0");
    PathSample path;
    path.seed = seed;
    path.stream = stream;
    path.states.reserve(static_cast<std::size_t>(steps) + 1);
    path.states.push_back(start);

    CounterRng rng(seed, stream);
    const double death = params.death_prob();
    const double up = params.up_prob();
    std::int64_t code = start.code();
    for (std::int64_t k = 0; k < steps; ++k) {
        code = advance(code, rng.uniform(static_cast<std::uint64_t>(k)), death, up);
        path.states.push_back(code < 0 ? LatticeState::cemetery()
                                       : LatticeState::site(code));
    }
    return path;
}

WalkSummary simulate_summary(const BoundaryParams& params, LatticeState start,
                             std::int64_t steps, std::uint64_t seed, std::uint64_t stream,
                             const SummaryOptions& options) {
    if (steps < 0) throw std::invalid_argument("simulate_summary: steps must be >= 0");
    WalkSummary out;
    out.alive_at.assign(options.checkpoints.size(), 0);

    CounterRng rng(seed, stream);
    const double death = params.death_prob();
    const double up = params.up_prob();
    const std::int64_t cutoff = options.neighborhood_cutoff;

    std::int64_t code = start.code();
    std::int64_t local_time = 0, neighborhood = 0, first_zero = -1;
    std::size_t next_checkpoint = 0;

    auto account = [&](std::int64_t step_index) {
        if (code == 0) {
            ++local_time;
            if (first_zero < 0) first_zero = step_index;
        }
        if (code >= 0 && code <= cutoff) ++neighborhood;
        while (next_checkpoint < options.checkpoints.size() &&
               options.checkpoints[next_checkpoint] == step_index) {
            out.alive_at[next_checkpoint] = (code >= 0) ? 1 : 0;
            ++next_checkpoint;
        }
    };

    account(0);
    for (std::int64_t k = 0; k < steps; ++k) {
        if (code < 0) {
            // Absorbed; remaining checkpoints are all dead.
            while (next_checkpoint < options.checkpoints.size()) {
                out.alive_at[next_checkpoint] = 0;
                ++next_checkpoint;
            }
            break;
        }
        code = advance(code, rng.uniform(static_cast<std::uint64_t>(k)), death, up);
        account(k + 1);
    }
    while (next_checkpoint < options.checkpoints.size()) {
        out.alive_at[next_checkpoint] = (code >= 0) ? 1 : 0;
        ++next_checkpoint;
    }

    out.final_state = code < 0 ? LatticeState::cemetery() : LatticeState::site(code);
    out.local_time_at_zero = local_time;
    out.neighborhood_steps = neighborhood;
    out.first_zero_hit = first_zero;
    out.died = code < 0;
    return out;
}

std::int64_t time_index(const BoundaryParams& params, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time_index: t must be >= 0");
    const double n = static_cast<double>(params.scale_n());
    return static_cast<std::int64_t>(std::floor(n * n * t));
}

std::optional<double> rescaled_position(const PathSample& path, const BoundaryParams& params,
                                        double t) {
    const std::int64_t idx = time_index(params, t);
    if (idx >= static_cast<std::int64_t>(path.states.size()))
        throw std::out_of_range("rescaled_position: path too short for requested time");
    const LatticeState s = path.states[static_cast<std::size_t>(idx)];
    if (s.is_cemetery()) return std::nullopt;
    return static_cast<double>(s.site()) / static_cast<double>(params.scale_n());
}

}  // namespace halfline
