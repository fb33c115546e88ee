#include "halfline/series.hpp"

#include <cmath>
#include <stdexcept>

namespace halfline {

namespace {
void require_same_order(const SeriesPoly& a, const SeriesPoly& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("SeriesPoly: mismatched truncation orders");
}
}  // namespace

SeriesPoly::SeriesPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("SeriesPoly: empty coefficient list");
}

SeriesPoly SeriesPoly::zero(int order) {
    return SeriesPoly(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
}

SeriesPoly SeriesPoly::constant(double value, int order) {
    SeriesPoly s = zero(order);
    s.coeffs_[0] = value;
    return s;
}

SeriesPoly SeriesPoly::geometric(double ratio, int order) {
    SeriesPoly s = zero(order);
    double term = 1.0;
    for (int k = 0; k <= order; ++k) {
        s.coeffs_[static_cast<std::size_t>(k)] = term;
        term *= ratio;
    }
    return s;
}

SeriesPoly SeriesPoly::sqrt_one_minus_x(int order) {
    // sqrt(1-x) = sum binom(1/2, n) (-x)^n; ratio of consecutive coefficients
    // is (n - 3/2) / n.
    SeriesPoly s = zero(order);
    double c = 1.0;
    s.coeffs_[0] = c;
    for (int n = 1; n <= order; ++n) {
        c *= (static_cast<double>(n) - 1.5) / static_cast<double>(n);
        s.coeffs_[static_cast<std::size_t>(n)] = c;
    }
    return s;
}

SeriesPoly SeriesPoly::add(const SeriesPoly& other) const {
    require_same_order(*this, other);
    SeriesPoly out = *this;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] += other.coeffs_[k];
    return out;
}

SeriesPoly SeriesPoly::sub(const SeriesPoly& other) const {
    require_same_order(*this, other);
    SeriesPoly out = *this;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] -= other.coeffs_[k];
    return out;
}

SeriesPoly SeriesPoly::scale(double factor) const {
    SeriesPoly out = *this;
    for (double& c : out.coeffs_) c *= factor;
    return out;
}

SeriesPoly SeriesPoly::mul(const SeriesPoly& other) const {
    require_same_order(*this, other);
    SeriesPoly out = zero(order());
    const std::size_t n = coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            out.coeffs_[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    return out;
}

SeriesPoly SeriesPoly::div(const SeriesPoly& other) const {
    require_same_order(*this, other);
    if (other.coeffs_[0] == 0.0)
        throw std::domain_error("SeriesPoly: division by a series with zero constant term");
    SeriesPoly out = zero(order());
    const std::size_t n = coeffs_.size();
    for (std::size_t k = 0; k < n; ++k) {
        double acc = coeffs_[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= other.coeffs_[j] * out.coeffs_[k - j];
        out.coeffs_[k] = acc / other.coeffs_[0];
    }
    return out;
}

SeriesPoly SeriesPoly::compose_x_squared() const {
    SeriesPoly out = zero(order());
    for (int k = 0; 2 * k <= order(); ++k)
        out.coeffs_[static_cast<std::size_t>(2 * k)] = coeffs_[static_cast<std::size_t>(k)];
    return out;
}

SeriesPoly SeriesPoly::sqrt() const {
    if (!(coeffs_[0] > 0.0))
        throw std::domain_error("SeriesPoly: sqrt needs a positive constant term");
    SeriesPoly out = zero(order());
    out.coeffs_[0] = std::sqrt(coeffs_[0]);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        double acc = coeffs_[k];
        for (std::size_t j = 1; j < k; ++j) acc -= out.coeffs_[j] * out.coeffs_[k - j];
        out.coeffs_[k] = acc / (2.0 * out.coeffs_[0]);
    }
    return out;
}

}  // namespace halfline
