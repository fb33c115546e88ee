#pragma once

#include <vector>

namespace halfline {

// Truncated power series sum_{k=0..K} c_k x^k with arithmetic exact to the
// truncation order. Binary operations require matching orders.
class SeriesPoly {
  public:
    explicit SeriesPoly(std::vector<double> coeffs);
    static SeriesPoly zero(int order);
    static SeriesPoly constant(double value, int order);
    // sum_k ratio^k x^k
    static SeriesPoly geometric(double ratio, int order);
    // Binomial series of sqrt(1 - x).
    static SeriesPoly sqrt_one_minus_x(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    double coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    SeriesPoly add(const SeriesPoly& other) const;
    SeriesPoly sub(const SeriesPoly& other) const;
    SeriesPoly scale(double factor) const;
    SeriesPoly mul(const SeriesPoly& other) const;
    // Long division; throws std::domain_error when the divisor has zero
    // constant term.
    SeriesPoly div(const SeriesPoly& other) const;
    // f(x) -> f(x^2) at the same truncation order.
    SeriesPoly compose_x_squared() const;
    // Square root of a series with positive constant term (coefficient
    // recurrence); cross-checks the direct binomial construction.
    SeriesPoly sqrt() const;

  private:
    std::vector<double> coeffs_;
};

}  // namespace halfline
