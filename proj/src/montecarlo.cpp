#include "halfline/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace halfline {

namespace {

double normal_quantile_two_sided(double confidence) {
    // Two-sided z values for the levels used in reports.
    if (confidence >= 0.999) return 3.2905267314919255;
    if (confidence >= 0.99) return 2.5758293035489004;
    if (confidence >= 0.95) return 1.959963984540054;
    return 1.6448536269514722;  // 0.90
}

struct MeanVar {
    double mean = 0.0;
    double std_error = 0.0;
};

MeanVar reduce(const std::vector<double>& values) {
    const auto n = static_cast<double>(values.size());
    if (values.size() < 2) return {values.empty() ? 0.0 : values[0], 0.0};
    const double mean = pairwise_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

EstimateWithCi to_estimate(const std::vector<double>& values) {
    const MeanVar mv = reduce(values);
    EstimateWithCi e;
    e.mean = mv.mean;
    e.std_error = mv.std_error;
    e.replicates = static_cast<std::int64_t>(values.size());
    return e;
}

void validate(const EnsembleConfig& cfg) {
    if (cfg.replicates < 1)
        throw std::invalid_argument("ensemble: replicates must be >= 1");
    if (!(cfg.x0 >= 0.0) || !std::isfinite(cfg.x0))
        throw std::invalid_argument("ensemble: x0 must be finite and >= 0");
    if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t))
        throw std::invalid_argument("ensemble: t must be finite and >= 0");
}

// Runs body(replicate) for replicate = 0..n-1 on `threads` workers. Results
// must be written to preassigned slots; the partition carries no state.
void parallel_replicates(std::int64_t n, int threads,
                         const std::function<void(std::int64_t)>& body) {
    const int workers = static_cast<int>(
        std::max<std::int64_t>(1, std::min<std::int64_t>(resolve_thread_count(threads), n)));
    if (workers == 1) {
        for (std::int64_t r = 0; r < n; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (std::int64_t r = lo; r < hi; ++r) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<WalkSummary> run_summaries(const EnsembleConfig& cfg, const SummaryOptions& options) {
    validate(cfg);
    std::vector<WalkSummary> out(static_cast<std::size_t>(cfg.replicates));
    const LatticeState start = LatticeState::site(cfg.start_site());
    const std::int64_t steps = cfg.steps();
    parallel_replicates(cfg.replicates, cfg.threads, [&](std::int64_t r) {
        out[static_cast<std::size_t>(r)] =
            simulate_summary(cfg.params, start, steps, cfg.base_seed,
                             static_cast<std::uint64_t>(r), options);
    });
    return out;
}

}  // namespace

double pairwise_sum(const std::vector<double>& values) {
    std::function<double(std::size_t, std::size_t)> rec = [&](std::size_t lo,
                                                              std::size_t hi) -> double {
        if (hi - lo <= 32) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += values[i];
            return s;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return values.empty() ? 0.0 : rec(0, values.size());
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HALFLINE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::int64_t EnsembleConfig::steps() const { return time_index(params, t); }

std::int64_t EnsembleConfig::start_site() const {
    return std::llround(static_cast<double>(params.scale_n()) * x0);
}

double EstimateWithCi::half_width() const {
    return normal_quantile_two_sided(confidence) * std_error;
}

EstimateWithCi ensemble_expectation(const EnsembleConfig& cfg,
                                    const std::function<double(double)>& f) {
    const auto summaries = run_summaries(cfg, SummaryOptions{});
    const double n = static_cast<double>(cfg.params.scale_n());
    std::vector<double> values(summaries.size());
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const LatticeState s = summaries[i].final_state;
        values[i] = s.is_cemetery() ? 0.0 : f(static_cast<double>(s.site()) / n);
    }
    return to_estimate(values);
}

EstimateWithCi survival_estimate(const EnsembleConfig& cfg) {
    return ensemble_expectation(cfg, [](double) { return 1.0; });
}

EstimateWithCi origin_occupation(const EnsembleConfig& cfg) {
    SummaryOptions options;
    options.neighborhood_cutoff =
        std::llround(cfg.neighborhood * static_cast<double>(cfg.params.scale_n()));
    const auto summaries = run_summaries(cfg, options);
    const double denom = static_cast<double>(cfg.steps()) + 1.0;
    std::vector<double> values(summaries.size());
    for (std::size_t i = 0; i < summaries.size(); ++i)
        values[i] = static_cast<double>(summaries[i].neighborhood_steps) / denom;
    return to_estimate(values);
}

EnsembleStats ensemble_stats(const EnsembleConfig& cfg) {
    SummaryOptions options;
    options.neighborhood_cutoff =
        std::llround(cfg.neighborhood * static_cast<double>(cfg.params.scale_n()));
    const auto summaries = run_summaries(cfg, options);
    const double n = static_cast<double>(cfg.params.scale_n());
    const double denom = static_cast<double>(cfg.steps()) + 1.0;

    std::vector<double> alive(summaries.size()), position(summaries.size()),
        at_zero(summaries.size()), occupation(summaries.size());
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const LatticeState s = summaries[i].final_state;
        alive[i] = s.is_cemetery() ? 0.0 : 1.0;
        position[i] = s.is_cemetery() ? 0.0 : static_cast<double>(s.site()) / n;
        at_zero[i] = (!s.is_cemetery() && s.site() == 0) ? 1.0 : 0.0;
        occupation[i] = static_cast<double>(summaries[i].neighborhood_steps) / denom;
    }
    EnsembleStats stats;
    stats.survival = to_estimate(alive);
    stats.mean_position = to_estimate(position);
    stats.origin_atom = to_estimate(at_zero);
    stats.has_occupation = cfg.neighborhood > 0.0;
    if (stats.has_occupation) stats.occupation = to_estimate(occupation);
    return stats;
}

EstimateWithCi local_time_ensemble(const BoundaryParams& params, std::int64_t n,
                                   std::int64_t replicates, std::uint64_t seed, int threads) {
    if (n < 0) throw std::invalid_argument("local_time_ensemble: n must be >= 0");
    if (replicates < 1)
        throw std::invalid_argument("local_time_ensemble: replicates must be >= 1");
    std::vector<double> values(static_cast<std::size_t>(replicates));
    parallel_replicates(replicates, threads, [&](std::int64_t r) {
        const WalkSummary s = simulate_summary(params, LatticeState::site(0), n, seed,
                                               static_cast<std::uint64_t>(r));
        values[static_cast<std::size_t>(r)] = static_cast<double>(s.local_time_at_zero);
    });
    return to_estimate(values);
}

DistanceReport distribution_distance(const EnsembleConfig& cfg, const ReferenceLaw& law,
                                     int bins) {
    if (std::abs(law.t - cfg.t) > 1e-12)
        throw std::invalid_argument("distribution_distance: law horizon differs from config");
    const LimitKind kind = classify(cfg.params.alpha(), cfg.params.beta(), cfg.params.big_a(),
                                    cfg.params.big_b());
    if (kind.regime != law.regime)
        throw std::invalid_argument("distribution_distance: law regime " +
                                    std::string(to_string(law.regime)) +
                                    " does not match walk regime " +
                                    std::string(to_string(kind.regime)));

    const auto summaries = run_summaries(cfg, SummaryOptions{});
    const double n = static_cast<double>(cfg.params.scale_n());
    const auto total = static_cast<double>(summaries.size());

    std::int64_t dead = 0, at_zero = 0;
    std::vector<double> positions;
    positions.reserve(summaries.size());
    for (const WalkSummary& s : summaries) {
        if (s.final_state.is_cemetery()) {
            ++dead;
        } else if (s.final_state.site() == 0) {
            ++at_zero;
        } else {
            positions.push_back(static_cast<double>(s.final_state.site()) / n);
        }
    }
    std::sort(positions.begin(), positions.end());

    DistanceReport report;
    report.emp_cemetery = static_cast<double>(dead) / total;
    report.emp_origin_atom = static_cast<double>(at_zero) / total;
    report.alive_positive = static_cast<std::int64_t>(positions.size());

    if (bins > 0 && !positions.empty()) {
        const double hi = positions.back();
        report.histogram.reserve(static_cast<std::size_t>(bins));
        std::size_t idx = 0;
        for (int b = 1; b <= bins; ++b) {
            const double edge = hi * static_cast<double>(b) / bins;
            std::int64_t count = 0;
            while (idx < positions.size() && positions[idx] <= edge) {
                ++idx;
                ++count;
            }
            report.histogram.emplace_back(edge, count);
        }
    }

    if (law.is_closed_form()) {
        const ClosedFormLaw& cf = law.closed();
        report.cemetery_mass_diff = std::abs(report.emp_cemetery - cf.cemetery_mass());
        report.origin_atom_diff = std::abs(report.emp_origin_atom - cf.origin_atom());
        const double mass = cf.continuous_mass();
        if (!positions.empty() && mass > 0.0) {
            const auto m = static_cast<double>(positions.size());
            double ks = 0.0;
            for (std::size_t i = 0; i < positions.size(); ++i) {
                const double ref = cf.continuous_cdf(positions[i]) / mass;
                const double lo = static_cast<double>(i) / m;
                const double hi = static_cast<double>(i + 1) / m;
                ks = std::max(ks, std::max(std::abs(ref - lo), std::abs(hi - ref)));
            }
            report.ks = ks;
        }
    } else {
        const HeatGrid& grid = law.grid();
        std::vector<double> values(summaries.size());
        for (std::size_t i = 0; i < summaries.size(); ++i) {
            const LatticeState s = summaries[i].final_state;
            values[i] = s.is_cemetery()
                            ? 0.0
                            : grid.payoff_at(static_cast<double>(s.site()) / n);
        }
        const double mc = pairwise_sum(values) / total;
        report.expectation_gap = std::abs(mc - grid.value_at(law.x0));
    }
    return report;
}

const std::vector<std::pair<std::string, std::function<double(double)>>>& probe_payoffs() {
    static const std::vector<std::pair<std::string, std::function<double(double)>>> payoffs = {
        {"bump", [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); }},
        {"tilted", [](double x) { return x * std::exp(-0.5 * x * x); }},
        {"wave", [](double x) { return std::cos(2.0 * x) * std::exp(-0.5 * x * x); }},
    };
    return payoffs;
}

std::vector<SweepRow> convergence_sweep(const SweepConfig& cfg) {
    const LimitKind kind = classify(cfg.alpha, cfg.beta, cfg.big_a, cfg.big_b);
    if (kind.regime == Regime::Unclassified)
        throw std::invalid_argument("convergence_sweep: walk parameters are unclassified");

    std::vector<SweepRow> rows;
    rows.reserve(cfg.scale_ns.size());
    if (cfg.scale_ns.empty()) return rows;

    const bool closed = kind.regime == Regime::Reflected || kind.regime == Regime::Absorbed ||
                        kind.regime == Regime::Killed;

    std::vector<HeatGrid> grids;
    HeatGrid survival_grid;
    if (!closed) {
        const double length = std::ceil(cfg.x0 + 12.0 * std::sqrt(cfg.t) + 1.0);
        const double dx = length / 2000.0;
        const double dt = cfg.t / 4000.0;
        for (const auto& [name, payoff] : probe_payoffs())
            grids.push_back(wentzell_solve(kind.triple, payoff, cfg.t, dx, dt, length));
        survival_grid =
            wentzell_solve(kind.triple, [](double) { return 1.0; }, cfg.t, dx, dt, length);
    }

    for (std::int64_t n : cfg.scale_ns) {
        EnsembleConfig ecfg{BoundaryParams(cfg.alpha, cfg.beta, cfg.big_a, cfg.big_b, n),
                            cfg.x0,
                            cfg.t,
                            cfg.replicates,
                            cfg.base_seed,
                            cfg.threads};
        SweepRow row;
        row.scale_n = n;
        row.regime = kind.regime;
        if (closed) {
            row.report = distribution_distance(
                ecfg, ReferenceLaw::closed_form(kind.regime, cfg.t, cfg.x0), cfg.bins);
        } else {
            const auto summaries = run_summaries(ecfg, SummaryOptions{});
            const double scale = static_cast<double>(n);
            const auto total = static_cast<double>(summaries.size());
            std::int64_t dead = 0, at_zero = 0, positive = 0;
            for (const WalkSummary& s : summaries) {
                if (s.final_state.is_cemetery())
                    ++dead;
                else if (s.final_state.site() == 0)
                    ++at_zero;
                else
                    ++positive;
            }
            DistanceReport report;
            report.emp_cemetery = static_cast<double>(dead) / total;
            report.emp_origin_atom = static_cast<double>(at_zero) / total;
            report.alive_positive = positive;
            double gap = 0.0;
            std::vector<double> values(summaries.size());
            for (const HeatGrid& grid : grids) {
                for (std::size_t i = 0; i < summaries.size(); ++i) {
                    const LatticeState s = summaries[i].final_state;
                    values[i] = s.is_cemetery()
                                    ? 0.0
                                    : grid.payoff_at(static_cast<double>(s.site()) / scale);
                }
                gap += std::abs(pairwise_sum(values) / total - grid.value_at(cfg.x0));
            }
            report.expectation_gap = gap;
            report.cemetery_mass_diff =
                std::abs(report.emp_cemetery - (1.0 - survival_grid.value_at(cfg.x0)));
            row.report = report;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_stat_csv(std::ostream& out, const std::vector<StatRow>& rows) {
    out << "N,regime,statistic,value,stderr,replicates,seed\n";
    for (const StatRow& r : rows)
        out << r.scale_n << ',' << r.regime << ',' << r.statistic << ',' << r.value << ','
            << r.std_error << ',' << r.replicates << ',' << r.seed << '\n';
}

}  // namespace halfline
