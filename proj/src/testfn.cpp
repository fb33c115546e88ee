#include "halfline/testfn.hpp"

#include <cmath>
#include <stdexcept>

namespace halfline {

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
}

double Poly::operator()(double x) const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() == 1) return Poly{};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& other) const {
    std::vector<double> out(std::max(c_.size(), other.c_.size()), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + other.coeff(k);
    return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& other) const {
    std::vector<double> out(std::max(c_.size(), other.c_.size()), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) - other.coeff(k);
    return Poly(std::move(out));
}

Poly Poly::operator*(const Poly& other) const {
    std::vector<double> out(c_.size() + other.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < other.c_.size(); ++j)
            out[i + j] += c_[i] * other.c_[j];
    return Poly(std::move(out));
}

Poly Poly::scale(double factor) const {
    std::vector<double> out(c_);
    for (double& v : out) v *= factor;
    return Poly(std::move(out));
}

SmoothTestFunction::SmoothTestFunction(Shape shape, const Poly& q, double width)
    : shape_(shape), width_(width) {
    if (!(width > 0.0))
        throw std::invalid_argument("SmoothTestFunction: width must be positive");
    p_.reserve(5);
    if (shape == Shape::Gaussian) {
        // d/dx [P e^{-x^2/(2 s^2)}] = (P' - x P / s^2) e^{-x^2/(2 s^2)}
        const Poly minus_x_over_s2{0.0, -1.0 / (width * width)};
        p_.push_back(q);
        for (int k = 1; k <= 4; ++k)
            p_.push_back(p_.back().derivative() + minus_x_over_s2 * p_.back());
    } else {
        // f = Q W with W = (1 - (x/L)^2)^5 on [0, L]; plain product rule on
        // polynomials, evaluation branches to zero beyond the cutoff.
        const Poly w1{1.0, 0.0, -1.0 / (width * width)};
        Poly window{1.0};
        for (int i = 0; i < 5; ++i) window = window * w1;
        p_.push_back(q * window);
        for (int k = 1; k <= 4; ++k) p_.push_back(p_.back().derivative());
    }
}

SmoothTestFunction SmoothTestFunction::gaussian(const Poly& q, double sigma) {
    return SmoothTestFunction(Shape::Gaussian, q, sigma);
}

SmoothTestFunction SmoothTestFunction::windowed(const Poly& q, double cutoff) {
    return SmoothTestFunction(Shape::Windowed, q, cutoff);
}

SmoothTestFunction SmoothTestFunction::with_origin_data(double f0, double f1, double f2,
                                                        double shape, double sigma) {
    // f = Q e^{-x^2/(2 s^2)} gives f(0) = q0, f'(0) = q1, f''(0) = 2 q2 - q0/s^2.
    const double q2 = 0.5 * (f2 + f0 / (sigma * sigma));
    return gaussian(Poly{f0, f1, q2, shape}, sigma);
}

double SmoothTestFunction::eval(int deriv, double x) const {
    const Poly& p = p_[static_cast<std::size_t>(deriv)];
    if (shape_ == Shape::Gaussian)
        return p(x) * std::exp(-x * x / (2.0 * width_ * width_));
    if (x >= width_ || x <= -width_) return 0.0;
    return p(x);
}

double SmoothTestFunction::sup_abs(int deriv, double lo, double hi, int samples) const {
    double best = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / samples;
        best = std::max(best, std::abs(eval(deriv, x)));
    }
    return best;
}

double SmoothTestFunction::support_radius() const {
    if (shape_ == Shape::Windowed) return width_;
    // Beyond ~9 sigma the Gaussian factor is below 3e-18.
    return 9.0 * width_;
}

SmoothTestFunction boundary_adapted_bump(const BoundaryTriple& triple, double f0, double f1,
                                         double shape, double sigma) {
    double v0 = f0, v1 = f1, v2 = 0.0;
    if (triple.c3 > 0.0) {
        v2 = 2.0 * (triple.c2 * v1 - triple.c1 * v0) / triple.c3;
    } else if (triple.c2 > 0.0) {
        v1 = triple.c1 * v0 / triple.c2;
    } else {
        v0 = 0.0;  // pure killing: f must vanish at the origin
    }
    return SmoothTestFunction::with_origin_data(v0, v1, v2, shape, sigma);
}

}  // namespace halfline
