#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "halfline/phase.hpp"

namespace halfline {

// Dense polynomial with double coefficients, lowest degree first.
class Poly {
  public:
    Poly() : c_{0.0} {}
    Poly(std::initializer_list<double> coeffs) : c_(coeffs) {}
    explicit Poly(std::vector<double> coeffs);

    double operator()(double x) const;
    Poly derivative() const;
    Poly operator+(const Poly& other) const;
    Poly operator-(const Poly& other) const;
    Poly operator*(const Poly& other) const;
    Poly scale(double factor) const;

    std::size_t degree() const { return c_.size() - 1; }
    double coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }

  private:
    std::vector<double> c_;
};

// Smooth test function on [0, inf) with analytically supplied derivatives up
// to fourth order. Two shapes:
//   gaussian:  Q(x) exp(-x^2 / (2 sigma^2)) -- rapidly decaying
//   windowed:  Q(x) (1 - (x/L)^2)^5 on [0, L], zero beyond -- compactly
//              supported and C^4 at the cut
class SmoothTestFunction {
  public:
    static SmoothTestFunction gaussian(const Poly& q, double sigma);
    static SmoothTestFunction windowed(const Poly& q, double cutoff);

    // Gaussian-envelope bump with prescribed f(0), f'(0), f''(0); `shape`
    // sets the remaining cubic coefficient of Q.
    static SmoothTestFunction with_origin_data(double f0, double f1, double f2,
                                               double shape, double sigma);

    double value(double x) const { return eval(0, x); }
    double d1(double x) const { return eval(1, x); }
    double d2(double x) const { return eval(2, x); }
    double d3(double x) const { return eval(3, x); }
    double d4(double x) const { return eval(4, x); }

    // sup |f^(deriv)| over [lo, hi], sampled.
    double sup_abs(int deriv, double lo, double hi, int samples = 4096) const;
    // Radius beyond which the function is numerically negligible.
    double support_radius() const;

  private:
    enum class Shape { Gaussian, Windowed };
    SmoothTestFunction(Shape shape, const Poly& q, double width);
    double eval(int deriv, double x) const;

    Shape shape_;
    double width_;           // sigma or cutoff
    std::vector<Poly> p_;    // polynomial factor of derivatives 0..4
};

// Bump whose origin data satisfy c1 f(0) - c2 f'(0) + (c3/2) f''(0) = 0 by
// construction. Where the triple leaves a second origin degree of freedom
// unconstrained, the curvature is set to zero so that origin-residual decay
// is visible against the constant background term.
SmoothTestFunction boundary_adapted_bump(const BoundaryTriple& triple, double f0, double f1,
                                         double shape = 0.0, double sigma = 1.0);

}  // namespace halfline
