#pragma once

#include <cstddef>
#include <vector>

namespace symcone::rules {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;  // total weights: integral ~ sum w_i f(x_i)
};

/// Gauss-Legendre on (-1, 1).  Cached by n.
const Rule1D& gauss_legendre(std::size_t n);

/// Gauss-Legendre mapped to (a, b).
Rule1D gauss_legendre_ab(std::size_t n, double a, double b);

/// Generalized Gauss-Laguerre on (0, inf) with the weight factored back in:
/// sum w_i f(x_i) ~ int_0^inf f(t) dt for f ~ t^alpha e^{-t/scale} * smooth.
/// Exact for f = p(t) t^alpha e^{-t/scale}, deg p <= 2n-1.
Rule1D gauss_laguerre(std::size_t n, double alpha, double scale);

/// Rational map of Gauss-Legendre to (0, inf): t = a u/(1-u).
Rule1D rational_halfline(std::size_t n, double a);

/// Symmetric rational map of Gauss-Legendre to (-inf, inf): t = a v/(1-v^2).
Rule1D rational_fullline(std::size_t n, double a);

/// Double-exponential (exp-sinh) rule on (0, inf), t = a exp(sinh(u)).
/// Robust for algebraic tail decay with non-smooth asymptotic corrections.
Rule1D exp_sinh_halfline(std::size_t n, double a);

/// Periodic trapezoid on [0, 2pi).
Rule1D circle(std::size_t n);

}  // namespace symcone::rules
