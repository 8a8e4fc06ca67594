#pragma once

#include "symcone/cone.hpp"
#include "symcone/multiindex.hpp"
#include "symcone/quadrature.hpp"

namespace symcone {

/// Componentwise thresholds (j-1) d/2 below which the gamma integral of the
/// cone diverges; equals g0.
struct ConvergenceDomain {
    MultiIndex lower_bounds;
};
ConvergenceDomain gamma_domain(const Cone& cone);

/// Throws std::domain_error naming the failing component when s violates
/// s_j > (j-1) d/2.
void check_gamma_domain(const Cone& cone, const MultiIndex& s, const char* what);

/// log of the gamma function of the cone (product form).
double log_gamma_cone(const Cone& cone, const MultiIndex& s);

/// Gamma function of the cone, product form
///   (2 pi)^{(n-r)/2} prod_j Gamma(s_j - (j-1) d/2).
/// Throws on convergence violations and on overflow past exp(700).
double gamma_closed(const Cone& cone, const MultiIndex& s);

/// Defining integral of the gamma function, evaluated by quadrature over the
/// cone (trace-form measure).
quad::IntegralEstimate gamma_integral(const Cone& cone, const MultiIndex& s,
                                      const quad::QuadratureSpec& spec);

/// Beta function of the cone via the gamma ratio.
double beta_closed(const Cone& cone, const MultiIndex& p, const MultiIndex& q);

/// Defining integral of the beta function over the capped region
/// Omega ^ (e - Omega).
quad::IntegralEstimate beta_integral(const Cone& cone, const MultiIndex& p,
                                     const MultiIndex& q,
                                     const quad::QuadratureSpec& spec);

/// Rotated-frame beta integral
///   F(y) = int_{(y-Omega)^Omega} Delta*_{p*-n/r}(x) Delta*_{q*-n/r}(y-x) dx;
/// F(y) / Delta*_{p*+q*-n/r}(y) is y-independent and equals B(p*, q*).
quad::IntegralEstimate rotated_beta_integral(const Cone& cone, const MultiIndex& p,
                                             const MultiIndex& q, const Element& y,
                                             const quad::QuadratureSpec& spec);

/// Laplace transform of the generalized power function,
///   int_Omega e^{-(y|xi)} Delta_s(xi) Delta^{-n/r}(xi) dxi,
/// which equals gamma_closed(s) * Delta_s(y^{-1}).
quad::IntegralEstimate laplace_power(const Cone& cone, const MultiIndex& s,
                                     const Element& y,
                                     const quad::QuadratureSpec& spec);

/// Expected value of laplace_power.
double laplace_power_expected(const Cone& cone, const MultiIndex& s, const Element& y);

}  // namespace symcone
