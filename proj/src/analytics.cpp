#include "halfline/analytics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace halfline {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_p(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("return probabilities: p must lie in (0,1)");
}

}  // namespace

const char* to_string(ReturnMethod method) {
    switch (method) {
        case ReturnMethod::ExactDp: return "dp";
        case ReturnMethod::PaperRecurrence: return "paper";
        case ReturnMethod::CorrectedRenewal: return "corrected";
        case ReturnMethod::Asymptotic: return "asymptotic";
    }
    return "unknown";
}

std::uint64_t catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: n must be >= 0");
    if (n > 36)
        throw std::overflow_error("catalan: C_n exceeds 64 bits for n > 36");
    // C_{k+1} = C_k * 2(2k+1) / (k+2); the product is divisible at every step.
    unsigned __int128 c = 1;
    for (int k = 0; k < n; ++k) {
        c = c * static_cast<unsigned>(2 * (2 * k + 1));
        c /= static_cast<unsigned>(k + 2);
    }
    return static_cast<std::uint64_t>(c);
}

double catalan_quarter_weight(std::int64_t j) {
    if (j < 1) throw std::invalid_argument("catalan_quarter_weight: j must be >= 1");
    // w_1 = 1, w_{j+1} = w_j (2j-1) / (2(j+1)).
    double w = 1.0;
    for (std::int64_t i = 1; i < j; ++i)
        w *= static_cast<double>(2 * i - 1) / static_cast<double>(2 * (i + 1));
    return w;
}

double catalan_mass_partial(std::int64_t terms) {
    double sum = 0.0, w = 1.0;
    for (std::int64_t j = 1; j <= terms; ++j) {
        sum += w;
        w *= static_cast<double>(2 * j - 1) / static_cast<double>(2 * (j + 1));
    }
    return sum;
}

double first_return_mass(std::int64_t j, double p) {
    require_p(p);
    return 0.5 * p * catalan_quarter_weight(j);
}

namespace {

// Distribution-vector propagation for the killing-free chain started at 0.
// In k steps the walk cannot pass site k, so truncating at the horizon is
// exact, not an approximation.
std::vector<double> exact_dp_values(double p, int horizon) {
    std::vector<double> f(static_cast<std::size_t>(horizon) + 1, 0.0);
    std::vector<double> dist(static_cast<std::size_t>(horizon) + 2, 0.0);
    std::vector<double> next(dist.size(), 0.0);
    dist[0] = 1.0;
    f[0] = 1.0;
    for (int k = 1; k <= horizon; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        next[0] = (1.0 - p) * dist[0] + 0.5 * dist[1];
        for (std::size_t m = 1; m + 1 < dist.size(); ++m)
            next[m] = 0.5 * dist[m + 1] + (m == 1 ? p * dist[0] : 0.5 * dist[m - 1]);
        dist.swap(next);
        f[static_cast<std::size_t>(k)] = dist[0];
    }
    return f;
}

std::vector<double> renewal_values(double p, int horizon, bool corrected) {
    std::vector<double> h(static_cast<std::size_t>(horizon) / 2 + 1, 0.0);
    for (std::int64_t j = 1; 2 * j <= horizon; ++j)
        h[static_cast<std::size_t>(j)] = first_return_mass(j, p);

    std::vector<double> f(static_cast<std::size_t>(horizon) + 1, 0.0);
    f[0] = 1.0;
    double stay_all = 1.0;  // (1-p)^k
    for (int k = 1; k <= horizon; ++k) {
        stay_all *= (1.0 - p);
        double acc = corrected ? (1.0 - p) * f[static_cast<std::size_t>(k - 1)] : stay_all;
        for (int j = 1; 2 * j <= k; ++j)
            acc += h[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(k - 2 * j)];
        f[static_cast<std::size_t>(k)] = acc;
    }
    return f;
}

}  // namespace

ReturnProbTable return_probabilities(double p, int horizon, ReturnMethod method) {
    require_p(p);
    if (horizon < 0) throw std::invalid_argument("return probabilities: horizon must be >= 0");
    ReturnProbTable table;
    table.p = p;
    table.method = method;
    switch (method) {
        case ReturnMethod::ExactDp:
            table.values = exact_dp_values(p, horizon);
            break;
        case ReturnMethod::PaperRecurrence:
            table.values = renewal_values(p, horizon, false);
            break;
        case ReturnMethod::CorrectedRenewal:
            table.values = renewal_values(p, horizon, true);
            break;
        case ReturnMethod::Asymptotic: {
            table.values.assign(static_cast<std::size_t>(horizon) + 1,
                                std::numeric_limits<double>::quiet_NaN());
            const double scale = 1.0 / (std::sqrt(2.0 * kPi) * (1.0 - p) * (1.0 - p));
            for (int k = 1; k <= horizon; ++k)
                table.values[static_cast<std::size_t>(k)] =
                    scale * std::pow(static_cast<double>(k), -1.5);
            table.disclaimer = true;
            break;
        }
    }
    return table;
}

SeriesPoly gf_coefficients(GfKind which, double p, int order) {
    require_p(p);
    if (order < 0) throw std::invalid_argument("gf_coefficients: order must be >= 0");
    switch (which) {
        case GfKind::G:
            return SeriesPoly::geometric(1.0 - p, order)
                .sub(SeriesPoly::constant(1.0, order));
        case GfKind::H:
            return SeriesPoly::constant(1.0, order)
                .sub(SeriesPoly::sqrt_one_minus_x(order))
                .scale(p);
        case GfKind::FPaper: {
            const SeriesPoly g_plus_one = SeriesPoly::geometric(1.0 - p, order);
            const SeriesPoly h = gf_coefficients(GfKind::H, p, order);
            const SeriesPoly denom =
                SeriesPoly::constant(1.0, order).sub(h.compose_x_squared());
            return g_plus_one.div(denom);
        }
    }
    throw std::logic_error("gf_coefficients: unreachable");
}

double expected_local_time(double p, int n, ReturnMethod method) {
    if (method == ReturnMethod::Asymptotic)
        throw std::invalid_argument("expected_local_time: asymptotic F_0 is undefined");
    const ReturnProbTable table = return_probabilities(p, n, method);
    double sum = 0.0;
    for (double v : table.values) sum += v;
    return sum;
}

double zeta_three_halves() {
    // Direct sum to M plus the Euler-Maclaurin tail
    //   M^{1-s}/(s-1) - M^{-s}/2 + s M^{-s-1}/12 - s(s+1)(s+2) M^{-s-3}/720.
    constexpr double s = 1.5;
    constexpr int m = 1000;
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) sum += std::pow(static_cast<double>(k), -s);
    const double md = static_cast<double>(m);
    sum += std::pow(md, 1.0 - s) / (s - 1.0);
    sum -= 0.5 * std::pow(md, -s);
    sum += s * std::pow(md, -s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * std::pow(md, -s - 3.0) / 720.0;
    return sum;
}

LocalTimeBound local_time_upper_bound(double p, std::int64_t n) {
    require_p(p);
    if (n < 1) throw std::invalid_argument("local_time_upper_bound: n must be >= 1");
    LocalTimeBound out;
    out.p = p;
    out.n = n;
    out.gamma = std::numeric_limits<double>::quiet_NaN();
    const double bracket =
        -zeta_three_halves() + 2.0 * std::sqrt(2.0) / std::sqrt(static_cast<double>(n));
    out.value = 1.0 / p + p / (std::sqrt(2.0 * kPi) * (1.0 - p) * (1.0 - p)) * bracket;
    return out;
}

LocalTimeBound local_time_upper_bound(const BoundaryParams& params, std::int64_t n) {
    LocalTimeBound out = local_time_upper_bound(params.origin_departure_prob(), n);
    out.gamma = std::min(params.alpha(), params.beta());
    return out;
}

LocalTimeScaling local_time_scaling(const BoundaryParams& params) {
    return {std::min(params.alpha(), params.beta()), -params.beta(),
            -params.beta() - 0.5};
}

std::vector<double> return_probabilities_rational(std::int64_t num, std::int64_t den,
                                                  int horizon, ReturnMethod method) {
    using boost::multiprecision::cpp_rational;
    if (den <= 0 || num <= 0 || num >= den)
        throw std::invalid_argument("return_probabilities_rational: p must lie in (0,1)");
    if (horizon < 0)
        throw std::invalid_argument("return_probabilities_rational: horizon must be >= 0");
    if (method == ReturnMethod::Asymptotic)
        throw std::invalid_argument("return_probabilities_rational: no rational asymptotic row");

    const cpp_rational p(num, den);
    const cpp_rational one(1);
    const cpp_rational half(1, 2);

    std::vector<cpp_rational> f(static_cast<std::size_t>(horizon) + 1);
    f[0] = one;

    if (method == ReturnMethod::ExactDp) {
        std::vector<cpp_rational> dist(static_cast<std::size_t>(horizon) + 2);
        std::vector<cpp_rational> next(dist.size());
        dist[0] = one;
        for (int k = 1; k <= horizon; ++k) {
            for (auto& v : next) v = 0;
            next[0] = (one - p) * dist[0] + half * dist[1];
            for (std::size_t m = 1; m + 1 < dist.size(); ++m)
                next[m] = half * dist[m + 1] + (m == 1 ? p * dist[0] : half * dist[m - 1]);
            dist.swap(next);
            f[static_cast<std::size_t>(k)] = dist[0];
        }
    } else {
        // h_j = (p/2) C_{j-1} / 4^{j-1}, exact.
        std::vector<cpp_rational> h(static_cast<std::size_t>(horizon) / 2 + 1);
        cpp_rational w = one;
        for (std::int64_t j = 1; 2 * j <= horizon; ++j) {
            h[static_cast<std::size_t>(j)] = p * half * w;
            w *= cpp_rational(2 * j - 1, 2 * (j + 1));
        }
        cpp_rational stay_all = one;
        const bool corrected = (method == ReturnMethod::CorrectedRenewal);
        for (int k = 1; k <= horizon; ++k) {
            stay_all *= (one - p);
            cpp_rational acc =
                corrected ? (one - p) * f[static_cast<std::size_t>(k - 1)] : stay_all;
            for (int j = 1; 2 * j <= k; ++j)
                acc += h[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(k - 2 * j)];
            f[static_cast<std::size_t>(k)] = acc;
        }
    }

    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = static_cast<double>(f[k]);
    return out;
}

}  // namespace halfline
