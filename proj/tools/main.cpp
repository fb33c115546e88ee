// Command-line front end: phase-diagram classification, exact return
// probability and local-time tables, ensemble simulation of the rescaled
// walk, convergence sweeps against reference laws, and the Wentzell PDE
// solver. Tabular output is CSV (UTF-8, LF, header row); every file written
// gets a sibling .manifest.json sufficient to reproduce it.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfline/analytics.hpp"
#include "halfline/montecarlo.hpp"
#include "halfline/phase.hpp"
#include "halfline/reference.hpp"
#include "halfline/walk.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

// Exit codes are a stable contract: 0 success, 2 invalid input, 3 I/O
// failure, 4 internal numerical failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

void write_with_manifest(const std::string& path, const std::string& content,
                         const std::string& command, const json& config) {
    atomic_write(path, content);
    json manifest{{"tool", "halfline"},
                  {"version", kVersion},
                  {"command", command},
                  {"output", path},
                  {"config", config}};
    atomic_write(path + ".manifest.json", manifest.dump(2) + "\n");
}

void emit(const std::string& out_path, const std::string& content, const std::string& command,
          const json& config) {
    if (out_path.empty())
        std::cout << content;
    else
        write_with_manifest(out_path, content, command, config);
}

std::string format_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::vector<halfline::ReturnMethod> parse_methods(const std::string& name) {
    using halfline::ReturnMethod;
    if (name == "dp") return {ReturnMethod::ExactDp};
    if (name == "paper") return {ReturnMethod::PaperRecurrence};
    if (name == "corrected") return {ReturnMethod::CorrectedRenewal};
    if (name == "asymptotic") return {ReturnMethod::Asymptotic};
    if (name == "all")
        return {ReturnMethod::ExactDp, ReturnMethod::PaperRecurrence,
                ReturnMethod::CorrectedRenewal, ReturnMethod::Asymptotic};
    throw CLI::ValidationError("--method", "unknown method '" + name + "'");
}

halfline::WalkRates regime_representative(const std::string& name) {
    if (name == "reflected") return halfline::params_for_target({0.0, 1.0, 0.0});
    if (name == "killed") return halfline::params_for_target({1.0, 0.0, 0.0});
    if (name == "absorbed") return halfline::params_for_target({0.0, 0.0, 1.0});
    if (name == "mixed")
        return halfline::params_for_target({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    if (name == "sticky") return halfline::params_for_target({0.0, 0.5, 0.5});
    if (name == "elastic") return halfline::params_for_target({0.5, 0.5, 0.0});
    if (name == "expholding") return halfline::params_for_target({0.5, 0.0, 0.5});
    throw CLI::ValidationError("--regime", "unknown regime '" + name + "'");
}

std::function<double(double)> named_payoff(const std::string& name) {
    if (name == "one") return [](double) { return 1.0; };
    if (name == "linear") {
        // x capped well inside the far field; flat at L.
        return [](double x) { return std::min(x, 4.0); };
    }
    for (const auto& [payoff_name, payoff] : halfline::probe_payoffs())
        if (payoff_name == name) return payoff;
    throw CLI::ValidationError("--payoff", "unknown payoff '" + name + "'");
}

// --config file provides defaults; explicit flags win.
json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw IoError(std::string("cannot read config ") + argv[i + 1]);
            json cfg;
            in >> cfg;
            return cfg;
        }
    }
    return json::object();
}

template <typename T>
void apply_default(CLI::Option* opt, const json& cfg, const std::string& key, T& var) {
    if (cfg.contains(key)) {
        var = cfg[key].get<T>();
        if (opt->get_required()) opt->required(false);
        opt->capture_default_str();
    }
}

struct CsvBuilder {
    std::ostringstream out;
    CsvBuilder& header(const std::string& h) {
        out << h << '\n';
        return *this;
    }
    template <typename... Ts>
    CsvBuilder& row(const Ts&... fields) {
        bool first = true;
        ((out << (first ? "" : ","), first = false, put(fields)), ...);
        out << '\n';
        return *this;
    }
    void put(double v) { out << format_double(v); }
    void put(const std::string& s) { out << s; }
    void put(const char* s) { out << s; }
    void put(std::int64_t v) { out << v; }
    void put(int v) { out << v; }
    std::string str() const { return out.str(); }
};

int run(int argc, char** argv) {
    CLI::App app{"half-line boundary random walk toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default option values");
    const json cfg = load_config(argc, argv);

    // ---- classify ----------------------------------------------------------
    auto* classify_cmd =
        app.add_subcommand("classify", "map (alpha, beta, A, B) to the limiting process");
    double cl_alpha = 0, cl_beta = 0, cl_a = 0, cl_b = 0;
    apply_default(classify_cmd->add_option("--alpha", cl_alpha)->required(), cfg, "alpha",
                  cl_alpha);
    apply_default(classify_cmd->add_option("--beta", cl_beta)->required(), cfg, "beta", cl_beta);
    apply_default(classify_cmd->add_option("--A", cl_a)->required(), cfg, "A", cl_a);
    apply_default(classify_cmd->add_option("--B", cl_b)->required(), cfg, "B", cl_b);
    classify_cmd->callback([&] {
        if (!(cl_alpha >= 0) || !(cl_beta >= 0) || !(cl_a >= 0) || !(cl_b >= 0))
            throw std::invalid_argument("classify: alpha, beta, A, B must be >= 0");
        const halfline::LimitKind kind = halfline::classify(cl_alpha, cl_beta, cl_a, cl_b);
        json out{{"regime", halfline::to_string(kind.regime)},
                 {"c1", kind.triple.c1},
                 {"c2", kind.triple.c2},
                 {"c3", kind.triple.c3},
                 {"extension", kind.extension},
                 {"note", kind.note}};
        std::cout << out.dump() << '\n';
    });

    // ---- returnprob --------------------------------------------------------
    auto* rp_cmd = app.add_subcommand("returnprob", "return-probability tables F_k");
    double rp_p = 0;
    int rp_k = 0;
    std::string rp_method = "dp", rp_out;
    apply_default(rp_cmd->add_option("--p", rp_p)->required(), cfg, "p", rp_p);
    apply_default(rp_cmd->add_option("--K", rp_k)->required(), cfg, "K", rp_k);
    apply_default(rp_cmd->add_option("--method", rp_method), cfg, "method", rp_method);
    rp_cmd->add_option("--out", rp_out, "output CSV path (default: stdout)");
    rp_cmd->callback([&] {
        if (rp_k < 0) throw std::invalid_argument("returnprob: K must be >= 0");
        CsvBuilder csv;
        csv.header("k,method,F_k");
        for (halfline::ReturnMethod method : parse_methods(rp_method)) {
            const auto table = halfline::return_probabilities(rp_p, rp_k, method);
            for (int k = 0; k <= rp_k; ++k)
                csv.row(k, halfline::to_string(method),
                        table.values[static_cast<std::size_t>(k)]);
        }
        emit(rp_out, csv.str(), "returnprob",
             json{{"p", rp_p}, {"K", rp_k}, {"method", rp_method}});
    });

    // ---- localtime ---------------------------------------------------------
    auto* lt_cmd = app.add_subcommand("localtime", "expected local time at the origin");
    double lt_p = 0;
    std::int64_t lt_n = 0;
    std::string lt_method = "dp", lt_out, lt_table;
    apply_default(lt_cmd->add_option("--p", lt_p)->required(), cfg, "p", lt_p);
    apply_default(lt_cmd->add_option("--n", lt_n)->required(), cfg, "n", lt_n);
    apply_default(lt_cmd->add_option("--method", lt_method), cfg, "method", lt_method);
    lt_cmd->add_option("--bound-table", lt_table,
                       "comma-separated n values; emit exact vs bound-formula table");
    lt_cmd->add_option("--out", lt_out);
    lt_cmd->callback([&] {
        if (lt_n < 0) throw std::invalid_argument("localtime: n must be >= 0");
        CsvBuilder csv;
        if (lt_table.empty()) {
            csv.header("n,method,expected_local_time");
            for (halfline::ReturnMethod method : parse_methods(lt_method))
                csv.row(lt_n, halfline::to_string(method),
                        halfline::expected_local_time(lt_p, static_cast<int>(lt_n), method));
        } else {
            csv.header("n,exact_dp,bound_formula");
            std::stringstream ss(lt_table);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const std::int64_t n = std::stoll(tok);
                if (n < 1) throw std::invalid_argument("localtime: table n must be >= 1");
                csv.row(n,
                        halfline::expected_local_time(lt_p, static_cast<int>(n),
                                                      halfline::ReturnMethod::ExactDp),
                        halfline::local_time_upper_bound(lt_p, n).value);
            }
        }
        emit(lt_out, csv.str(), "localtime",
             json{{"p", lt_p}, {"n", lt_n}, {"method", lt_method}, {"bound-table", lt_table}});
    });

    // ---- simulate ----------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "ensemble statistics of the rescaled walk");
    double sm_alpha = 2, sm_beta = 1, sm_a = 1, sm_b = 1, sm_x0 = 0.5, sm_t = 0.5,
           sm_neigh = 0.0;
    std::int64_t sm_n = 100, sm_reps = 100000;
    std::uint64_t sm_seed = 1;
    int sm_threads = 0;
    std::int64_t sm_path_steps = -1;
    std::string sm_out, sm_csv, sm_path_out;
    apply_default(sim_cmd->add_option("--alpha", sm_alpha), cfg, "alpha", sm_alpha);
    apply_default(sim_cmd->add_option("--beta", sm_beta), cfg, "beta", sm_beta);
    apply_default(sim_cmd->add_option("--A", sm_a), cfg, "A", sm_a);
    apply_default(sim_cmd->add_option("--B", sm_b), cfg, "B", sm_b);
    apply_default(sim_cmd->add_option("--N", sm_n), cfg, "N", sm_n);
    apply_default(sim_cmd->add_option("--x0", sm_x0), cfg, "x0", sm_x0);
    apply_default(sim_cmd->add_option("--t", sm_t), cfg, "t", sm_t);
    apply_default(sim_cmd->add_option("--replicates", sm_reps), cfg, "replicates", sm_reps);
    apply_default(sim_cmd->add_option("--seed", sm_seed), cfg, "seed", sm_seed);
    apply_default(sim_cmd->add_option("--threads", sm_threads), cfg, "threads", sm_threads);
    apply_default(sim_cmd->add_option("--neighborhood", sm_neigh), cfg, "neighborhood",
                  sm_neigh);
    sim_cmd->add_option("--out", sm_out, "JSON report path");
    sim_cmd->add_option("--csv", sm_csv, "CSV stats path");
    sim_cmd->add_option("--path-out", sm_path_out, "write one trajectory as CSV instead");
    sim_cmd->add_option("--path-steps", sm_path_steps, "trajectory length for --path-out");
    sim_cmd->callback([&] {
        const halfline::BoundaryParams params(sm_alpha, sm_beta, sm_a, sm_b, sm_n);
        const json config{{"alpha", sm_alpha}, {"beta", sm_beta},       {"A", sm_a},
                          {"B", sm_b},         {"N", sm_n},             {"x0", sm_x0},
                          {"t", sm_t},         {"replicates", sm_reps}, {"seed", sm_seed},
                          {"neighborhood", sm_neigh}};
        if (!sm_path_out.empty()) {
            const std::int64_t steps =
                sm_path_steps >= 0 ? sm_path_steps : halfline::time_index(params, sm_t);
            const auto path = halfline::simulate_path(
                params,
                halfline::LatticeState::site(
                    std::llround(sm_x0 * static_cast<double>(sm_n))),
                steps, sm_seed);
            CsvBuilder csv;
            csv.header("step,site");
            for (std::size_t k = 0; k < path.states.size(); ++k)
                csv.row(static_cast<std::int64_t>(k),
                        path.states[k].is_cemetery() ? std::string("cemetery")
                                                     : std::to_string(path.states[k].site()));
            write_with_manifest(sm_path_out, csv.str(), "simulate", config);
            return;
        }

        halfline::EnsembleConfig ecfg{params,  sm_x0,      sm_t,    sm_reps,
                                      sm_seed, sm_threads, sm_neigh};
        const std::string regime =
            halfline::to_string(halfline::classify(sm_alpha, sm_beta, sm_a, sm_b).regime);
        const halfline::EnsembleStats stats = halfline::ensemble_stats(ecfg);
        std::vector<halfline::StatRow> rows;
        auto push = [&](const std::string& name, const halfline::EstimateWithCi& e) {
            rows.push_back({sm_n, regime, name, e.mean, e.std_error, e.replicates, sm_seed});
        };
        push("survival", stats.survival);
        push("mean_position", stats.mean_position);
        push("origin_atom", stats.origin_atom);
        if (stats.has_occupation) push("origin_occupation", stats.occupation);

        json report{{"config", config}, {"regime", regime}, {"results", json::array()}};
        for (const auto& r : rows)
            report["results"].push_back({{"N", r.scale_n},
                                         {"regime", r.regime},
                                         {"statistic", r.statistic},
                                         {"value", r.value},
                                         {"stderr", r.std_error},
                                         {"replicates", r.replicates},
                                         {"seed", r.seed}});
        if (!sm_csv.empty()) {
            std::ostringstream csv;
            halfline::write_stat_csv(csv, rows);
            write_with_manifest(sm_csv, csv.str(), "simulate", config);
        }
        emit(sm_out, report.dump(2) + "\n", "simulate", config);
    });

    // ---- converge ----------------------------------------------------------
    auto* cv_cmd = app.add_subcommand("converge", "distance-to-limit sweep across N");
    std::string cv_regime, cv_ns = "50,100,200", cv_out;
    double cv_alpha = 0, cv_beta = 0, cv_a = 1, cv_b = 1, cv_x0 = 0.5, cv_t = 0.5;
    std::int64_t cv_reps = 100000;
    std::uint64_t cv_seed = 1;
    int cv_threads = 0, cv_bins = 50;
    apply_default(cv_cmd->add_option("--regime", cv_regime), cfg, "regime", cv_regime);
    apply_default(cv_cmd->add_option("--alpha", cv_alpha), cfg, "alpha", cv_alpha);
    apply_default(cv_cmd->add_option("--beta", cv_beta), cfg, "beta", cv_beta);
    apply_default(cv_cmd->add_option("--A", cv_a), cfg, "A", cv_a);
    apply_default(cv_cmd->add_option("--B", cv_b), cfg, "B", cv_b);
    apply_default(cv_cmd->add_option("--N", cv_ns), cfg, "N", cv_ns);
    apply_default(cv_cmd->add_option("--x0", cv_x0), cfg, "x0", cv_x0);
    apply_default(cv_cmd->add_option("--t", cv_t), cfg, "t", cv_t);
    apply_default(cv_cmd->add_option("--replicates", cv_reps), cfg, "replicates", cv_reps);
    apply_default(cv_cmd->add_option("--seed", cv_seed), cfg, "seed", cv_seed);
    apply_default(cv_cmd->add_option("--threads", cv_threads), cfg, "threads", cv_threads);
    apply_default(cv_cmd->add_option("--bins", cv_bins), cfg, "bins", cv_bins);
    cv_cmd->add_option("--out", cv_out);
    cv_cmd->callback([&] {
        halfline::SweepConfig scfg;
        if (!cv_regime.empty()) {
            const halfline::WalkRates rates = regime_representative(cv_regime);
            scfg.alpha = rates.alpha;
            scfg.beta = rates.beta;
            scfg.big_a = rates.big_a;
            scfg.big_b = rates.big_b;
        } else {
            scfg.alpha = cv_alpha;
            scfg.beta = cv_beta;
            scfg.big_a = cv_a;
            scfg.big_b = cv_b;
        }
        std::stringstream ss(cv_ns);
        std::string tok;
        while (std::getline(ss, tok, ',')) scfg.scale_ns.push_back(std::stoll(tok));
        scfg.x0 = cv_x0;
        scfg.t = cv_t;
        scfg.replicates = cv_reps;
        scfg.base_seed = cv_seed;
        scfg.threads = cv_threads;
        scfg.bins = cv_bins;

        const auto rows = halfline::convergence_sweep(scfg);
        CsvBuilder csv;
        csv.header(
            "N,regime,ks,cemetery_mass_diff,origin_atom_diff,expectation_gap,"
            "emp_cemetery,emp_origin_atom,alive_positive");
        for (const auto& row : rows)
            csv.row(row.scale_n, halfline::to_string(row.regime), row.report.ks,
                    row.report.cemetery_mass_diff, row.report.origin_atom_diff,
                    row.report.expectation_gap, row.report.emp_cemetery,
                    row.report.emp_origin_atom, row.report.alive_positive);
        emit(cv_out, csv.str(), "converge",
             json{{"regime", cv_regime},
                  {"alpha", scfg.alpha},
                  {"beta", scfg.beta},
                  {"A", scfg.big_a},
                  {"B", scfg.big_b},
                  {"N", cv_ns},
                  {"x0", cv_x0},
                  {"t", cv_t},
                  {"replicates", cv_reps},
                  {"seed", cv_seed}});
    });

    // ---- pde ---------------------------------------------------------------
    auto* pde_cmd = app.add_subcommand("pde", "Wentzell-boundary heat solve");
    double pd_c1 = 0, pd_c2 = 1, pd_c3 = 0, pd_t = 0.5, pd_len = 0, pd_dx = 0, pd_dt = 0,
           pd_x0 = -1;
    std::string pd_payoff = "bump", pd_out;
    apply_default(pde_cmd->add_option("--c1", pd_c1)->required(), cfg, "c1", pd_c1);
    apply_default(pde_cmd->add_option("--c2", pd_c2)->required(), cfg, "c2", pd_c2);
    apply_default(pde_cmd->add_option("--c3", pd_c3)->required(), cfg, "c3", pd_c3);
    apply_default(pde_cmd->add_option("--t", pd_t), cfg, "t", pd_t);
    apply_default(pde_cmd->add_option("--L", pd_len), cfg, "L", pd_len);
    apply_default(pde_cmd->add_option("--dx", pd_dx), cfg, "dx", pd_dx);
    apply_default(pde_cmd->add_option("--dt", pd_dt), cfg, "dt", pd_dt);
    apply_default(pde_cmd->add_option("--payoff", pd_payoff), cfg, "payoff", pd_payoff);
    pde_cmd->add_option("--x0", pd_x0, "also print u(t, x0) to stderr");
    pde_cmd->add_option("--out", pd_out);
    pde_cmd->callback([&] {
        const double length = pd_len > 0 ? pd_len : std::ceil(12.0 * std::sqrt(pd_t) + 3.0);
        const double dx = pd_dx > 0 ? pd_dx : length / 2000.0;
        const double dt = pd_dt > 0 ? pd_dt : pd_t / 4000.0;
        const auto grid = halfline::wentzell_solve(
            {pd_c1, pd_c2, pd_c3}, named_payoff(pd_payoff), pd_t, dx, dt, length);
        std::ostringstream csv;
        grid.to_csv(csv);
        if (pd_x0 >= 0)
            std::cerr << "u(" << pd_t << ", " << pd_x0
                      << ") = " << format_double(grid.value_at(pd_x0)) << '\n';
        emit(pd_out, csv.str(), "pde",
             json{{"c1", pd_c1},
                  {"c2", pd_c2},
                  {"c3", pd_c3},
                  {"t", pd_t},
                  {"L", length},
                  {"dx", dx},
                  {"dt", dt},
                  {"payoff", pd_payoff}});
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "halfline: I/O error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "halfline: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "halfline: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "halfline: numerical failure: " << e.what() << '\n';
        return 4;
    }
}
