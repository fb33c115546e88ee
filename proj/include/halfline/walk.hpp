#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace halfline {

// One point of the state space {cemetery} ∪ {0, 1, 2, ...}.
class LatticeState {
  public:
    static LatticeState cemetery() { return LatticeState(kCemeteryCode); }
    static LatticeState site(std::int64_t n);

    bool is_cemetery() const { return code_ == kCemeteryCode; }
    // Site index; only valid when !is_cemetery().
    std::int64_t site() const;
    std::int64_t code() const { return code_; }

    friend bool operator==(LatticeState a, LatticeState b) { return a.code_ == b.code_; }
    friend bool operator!=(LatticeState a, LatticeState b) { return a.code_ != b.code_; }

  private:
    explicit LatticeState(std::int64_t code) : code_(code) {}
    static constexpr std::int64_t kCemeteryCode = -1;
    std::int64_t code_;
};

// Jump-rate parameters (alpha, beta, A, B) together with the lattice scale N.
// The origin leaves mass 1 - A/N^alpha - B/N^beta on staying put; construction
// fails if the two origin rates already exceed 1.
class BoundaryParams {
  public:
    BoundaryParams(double alpha, double beta, double big_a, double big_b,
                   std::int64_t scale_n);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double big_a() const { return big_a_; }
    double big_b() const { return big_b_; }
    std::int64_t scale_n() const { return scale_n_; }

    // A / N^alpha: per-step probability of the jump 0 -> cemetery.
    double death_prob() const { return death_; }
    // B / N^beta: per-step probability of the jump 0 -> 1.
    double up_prob() const { return up_; }
    double stay_prob() const { return 1.0 - death_ - up_; }
    // Probability of leaving the origin in one step, either way.
    double origin_departure_prob() const { return death_ + up_; }

  private:
    double alpha_, beta_, big_a_, big_b_;
    std::int64_t scale_n_;
    double death_, up_;
};

// A recorded trajectory. The local time at zero is recomputable from the
// states, so it is derived rather than stored.
struct PathSample {
    std::vector<LatticeState> states;  // length = steps + 1
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::int64_t local_time_at_zero() const;
};

// Streaming alternative to PathSample for long runs: only aggregate
// statistics are kept, memory does not grow with the step count.
struct WalkSummary {
    LatticeState final_state = LatticeState::cemetery();
    std::int64_t local_time_at_zero = 0;
    // Steps spent at sites <= neighborhood_cutoff (counting step 0).
    std::int64_t neighborhood_steps = 0;
    // First k with X_k = 0, or -1 if zero is never visited.
    std::int64_t first_zero_hit = -1;
    bool died = false;
    // alive_at[i] records whether the walker had not yet died at checkpoint i.
    std::vector<char> alive_at;
};

struct SummaryOptions {
    std::int64_t neighborhood_cutoff = 0;
    std::vector<std::int64_t> checkpoints;  // step indices, ascending
};

// Exact one-step distribution from x. Probabilities sum to 1.
std::vector<std::pair<LatticeState, double>> step_distribution(const BoundaryParams& params,
                                                               LatticeState x);

// Simulates `steps` transitions. Deterministic function of all arguments;
// distinct (seed, stream) pairs give independent trajectories.
PathSample simulate_path(const BoundaryParams& params, LatticeState start,
                         std::int64_t steps, std::uint64_t seed, std::uint64_t stream = 0);

// Same chain and same draws as simulate_path, without storing the trajectory.
WalkSummary simulate_summary(const BoundaryParams& params, LatticeState start,
                             std::int64_t steps, std::uint64_t seed, std::uint64_t stream = 0,
                             const SummaryOptions& options = {});

// floor(N^2 t), the step index backing the diffusive rescaling.
std::int64_t time_index(const BoundaryParams& params, double t);

// B^N_t = X_{floor(N^2 t)} / N. Empty optional encodes the cemetery.
// Throws std::out_of_range if the path is too short for t.
std::optional<double> rescaled_position(const PathSample& path, const BoundaryParams& params,
                                        double t);

}  // namespace halfline
