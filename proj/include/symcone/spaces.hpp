#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "symcone/cone.hpp"
#include "symcone/cone_functions.hpp"
#include "symcone/quadrature.hpp"

namespace symcone {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Point z = x + iy of the tube domain over the cone; y must lie in the
/// open cone.
struct TubePoint {
    std::vector<double> x;
    Element y;

    CVec to_complex() const;
};

TubePoint tube_point(std::vector<double> x, Element y);
/// i * y with x = 0.
TubePoint itimes(const Element& y);

/// Determinant polynomial on the complexification: z_1^2 - z_2^2 - ... for
/// lorentz, z for the halfline.
Complex complex_determinant(const Cone& cone, const CVec& z);
/// First principal minor on the complexification (rotated flips the frame).
Complex complex_minor1(const Cone& cone, const CVec& z, bool rotated = false);

/// Generalized power with multi-index exponent, principal branch per factor.
/// Throws std::domain_error when a factor lands on (-inf, 0].
Complex complex_power(const Cone& cone, const CVec& z, const MultiIndex& s,
                      bool rotated = false);
/// Scalar power Delta^a(z), principal branch.
Complex complex_power(const Cone& cone, const CVec& z, double a);

/// Bergman kernel B_nu(z, w) = Delta^{-(nu + n/r)}((z - conj w)/i), with the
/// kernel constant set to one.
Complex bergman_kernel(const Cone& cone, double nu, const TubePoint& z,
                       const TubePoint& w);

/// (z - conj w)/i as a complex vector.
CVec kernel_argument(const TubePoint& z, const TubePoint& w);

/// A holomorphic test function on the tube with enough metadata for the norm
/// machinery: an evaluation callable, the natural imaginary offset governing
/// its decay, and (when available) an exact box-operator image.
struct AnalyticFunction {
    std::function<Complex(const TubePoint&)> eval;
    std::function<Complex(const TubePoint&)> box_exact;  // may be empty
    Element anchor;
    std::string label;

    Complex operator()(const TubePoint& z) const { return eval(z); }
    bool has_box() const { return bool(box_exact); }
};

/// f(z) = Delta^{-mu}((z - conj w)/i).
AnalyticFunction make_kernel_function(const Cone& cone, const TubePoint& w, double mu);

/// F(t z) as a new test function (anchor rescales accordingly).
AnalyticFunction dilate_function(const AnalyticFunction& f, double t);

struct NormResult {
    double value = 0.0;
    bool infinite = false;
    std::vector<quad::IntegralEstimate> inner_estimates;
    quad::IntegralEstimate outer_estimate;
};

/// Mixed norm (int_Omega (int_V |F(x+iy)|^p dx)^{q/p} Delta_nu(y)
/// Delta^{-n/r}(y) dy)^{1/q}; trace-form measures on both levels.
NormResult mixed_norm(const Cone& cone, const AnalyticFunction& F, double p, double q,
                      const MultiIndex& nu, const quad::QuadratureSpec& spec,
                      bool probe_divergence = false);

std::vector<Element> default_t_grid(const Cone& cone);

/// Generalized Hardy norm: sup over the t grid of
/// int int |F(x + i(y+t))|^p dx dmu_s(y); s = 0 gives the classical Hardy
/// norm, s > g0 the density Delta_s(t)/Gamma_Omega(s) Delta^{-n/r}(t) dt.
/// Singular Wallach parameters are rejected.
NormResult hardy_mu_norm(const Cone& cone, const AnalyticFunction& F, double p,
                         const MultiIndex& s, const std::vector<Element>& t_grid,
                         const quad::QuadratureSpec& spec);

/// J_alpha(y) = int_{R^n} |Delta_{-alpha}((x+iy)/i)| dx.
/// Requires alpha > g0* + n/r componentwise.
quad::IntegralEstimate J_alpha(const Cone& cone, const MultiIndex& alpha,
                               const Element& y, const quad::QuadratureSpec& spec);

/// int_Omega Delta_beta(y+t) Delta_s(y) Delta^{-n/r}(y) dy with a divergence
/// probe (the convergence boundary is checked empirically, not assumed).
quad::ProbeResult weighted_cone_integral(const Cone& cone, const MultiIndex& beta,
                                         const MultiIndex& s, const Element& t,
                                         const quad::QuadratureSpec& spec);

/// max over the grid of |F(z)| Delta_{nu/q + n/(rp)}(Im z) / ||F||.
double pointwise_bound_ratio(const Cone& cone, const AnalyticFunction& F, double p,
                             double q, const MultiIndex& nu,
                             const std::vector<TubePoint>& z_grid,
                             const quad::QuadratureSpec& spec);

/// Symbol of the box operator: Delta(xi).
double box_symbol(const Cone& cone, const Element& xi);

/// Central-difference application of the box operator (the constant
/// coefficient operator with symbol Delta against the trace pairing
/// e^{i(x|xi)}): (1/i) d/dx on the halfline,
/// (1/4)(-d^2/dx_1^2 + sum_k d^2/dx_k^2) on lorentz.  O(h^2).
Complex box_apply(const Cone& cone, const std::function<Complex(const TubePoint&)>& F,
                  const TubePoint& z, double h);

struct LatticeWindow {
    int k_min = -14;
    int k_max = 12;
    double tail_tol = 1e-10;
};

/// Discrete norm over the rank-1 lattice z_{j,k} = j delta 2^k + i 2^k,
/// normalized with the dyadic cell measures so the ratio to mixed_norm is a
/// bounded band.  Throws when the window tail is above tolerance.
NormResult lattice_norm_rank1(const Cone& cone, const AnalyticFunction& F, double p,
                              double q, const MultiIndex& nu, double delta,
                              const LatticeWindow& window = {});

}  // namespace symcone
