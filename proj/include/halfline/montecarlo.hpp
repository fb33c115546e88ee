#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "halfline/phase.hpp"
#include "halfline/reference.hpp"
#include "halfline/walk.hpp"

namespace halfline {

// One ensemble of independent rescaled walks: start at Site(round(N x0)),
// run floor(N^2 t) steps, replicate r uses stream index r of base_seed.
struct EnsembleConfig {
    BoundaryParams params;
    double x0 = 0.0;
    double t = 1.0;
    std::int64_t replicates = 100000;
    std::uint64_t base_seed = 1;
    int threads = 0;            // 0: HALFLINE_THREADS env var, else hardware
    double neighborhood = 0.0;  // rescaled radius for occupation statistics

    std::int64_t steps() const;
    std::int64_t start_site() const;
};

struct EstimateWithCi {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t replicates = 0;
    double confidence = 0.99;

    double half_width() const;  // normal-quantile half width at `confidence`
};

// Monte Carlo mean of f(B^N_t); f is evaluated on [0, inf) and the cemetery
// contributes zero. Deterministic for a fixed config, independent of the
// worker count.
EstimateWithCi ensemble_expectation(const EnsembleConfig& cfg,
                                    const std::function<double(double)>& f);

// P(walker alive at t).
EstimateWithCi survival_estimate(const EnsembleConfig& cfg);

// Mean fraction of steps spent at sites <= round(N * cfg.neighborhood).
EstimateWithCi origin_occupation(const EnsembleConfig& cfg);

// Survival, mean position, origin atom, and (when cfg.neighborhood > 0) the
// origin occupation, all from one simulation pass.
struct EnsembleStats {
    EstimateWithCi survival;
    EstimateWithCi mean_position;
    EstimateWithCi origin_atom;
    EstimateWithCi occupation;
    bool has_occupation = false;
};

EnsembleStats ensemble_stats(const EnsembleConfig& cfg);

// Mean local time at zero over `replicates` walks of n steps started at 0.
EstimateWithCi local_time_ensemble(const BoundaryParams& params, std::int64_t n,
                                   std::int64_t replicates, std::uint64_t seed,
                                   int threads = 0);

// Empirical-vs-reference distances at a fixed time. The continuous part is
// compared conditionally (alive walkers at sites >= 1) so that boundary atoms
// do not contaminate the Kolmogorov-Smirnov statistic; cemetery mass and the
// origin atom are compared separately.
struct DistanceReport {
    double ks = std::numeric_limits<double>::quiet_NaN();
    double cemetery_mass_diff = std::numeric_limits<double>::quiet_NaN();
    double origin_atom_diff = std::numeric_limits<double>::quiet_NaN();
    // Grid-backed laws: |MC - PDE| for the solved payoff.
    double expectation_gap = std::numeric_limits<double>::quiet_NaN();
    double emp_cemetery = 0.0;
    double emp_origin_atom = 0.0;
    std::int64_t alive_positive = 0;
    std::vector<std::pair<double, std::int64_t>> histogram;  // (bin right edge, count)
};

DistanceReport distribution_distance(const EnsembleConfig& cfg, const ReferenceLaw& law,
                                     int bins = 50);

// Distance reports across a list of lattice scales for one regime. Closed-form
// regimes (reflected, absorbed, killed) are compared against the analytic law;
// the remaining regimes against Wentzell PDE solves of the probe payoffs.
struct SweepConfig {
    double alpha = 2.0, beta = 1.0, big_a = 1.0, big_b = 1.0;
    std::vector<std::int64_t> scale_ns;
    double x0 = 0.5;
    double t = 0.5;
    std::int64_t replicates = 100000;
    std::uint64_t base_seed = 1;
    int threads = 0;
    int bins = 50;
};

struct SweepRow {
    std::int64_t scale_n = 0;
    Regime regime = Regime::Unclassified;
    DistanceReport report;
};

std::vector<SweepRow> convergence_sweep(const SweepConfig& cfg);

// Smooth bounded payoffs used for expectation comparisons against the PDE
// oracle; all are flat at the far field.
const std::vector<std::pair<std::string, std::function<double(double)>>>& probe_payoffs();

// Tabular results: one statistic per row.
struct StatRow {
    std::int64_t scale_n = 0;
    std::string regime;
    std::string statistic;
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t replicates = 0;
    std::uint64_t seed = 0;
};

// Header N,regime,statistic,value,stderr,replicates,seed.
void write_stat_csv(std::ostream& out, const std::vector<StatRow>& rows);

// Order-insensitive summation (pairwise reduction).
double pairwise_sum(const std::vector<double>& values);

int resolve_thread_count(int requested);

}  // namespace halfline
