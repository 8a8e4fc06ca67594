#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symcone/multiindex.hpp"

namespace symcone {

/// Point of the ambient Jordan algebra V = R^n.
using Element = std::vector<double>;

enum class ConeKind { halfline, lorentz };

/// A concrete symmetric cone instance with its structure constants and a
/// fixed Jordan frame.
///
/// halfline:   V = R, Omega = (0,inf), rank 1.
/// lorentz(n): V = R^n (n >= 3), Omega = {y : y_1 > 0, y_1^2 - |ybar|^2 > 0},
///             rank 2, frame c_1 = (1,u)/2, c_2 = (1,-u)/2 for a unit
///             direction u in R^{n-1}.
///
/// The inner product is the trace form (x|y) = tr(x o y); on the lorentz
/// cone this equals twice the Euclidean dot product.  All Lebesgue measures
/// in this library are normalized to the trace form, which multiplies the
/// coordinate measure by volume_scale() = 2^{n/2} on the lorentz cone.
class Cone {
  public:
    static Cone halfline();
    static Cone lorentz(std::size_t n);                               // u = e_1
    static Cone lorentz(std::size_t n, std::vector<double> frame_u);  // |u| = 1

    ConeKind kind() const { return kind_; }
    std::size_t dim() const { return n_; }
    std::size_t rank() const { return r_; }
    double peirce_d() const { return d_; }
    double dim_over_rank() const { return double(n_) / double(r_); }
    const MultiIndex& g0() const { return g0_; }
    /// g0 reversed, the threshold showing up in rotated-frame conditions.
    MultiIndex g0_star() const { return star(g0_); }
    const std::vector<double>& frame_direction() const { return frame_u_; }

    Element identity() const;
    /// Factor between the coordinate Lebesgue measure and the trace-form
    /// Lebesgue measure: 2^{n/2} for lorentz, 1 for halfline.
    double volume_scale() const;

    std::string description() const;

  private:
    Cone(ConeKind k, std::size_t n, std::vector<double> u);

    ConeKind kind_;
    std::size_t n_;
    std::size_t r_;
    double d_;
    MultiIndex g0_;
    std::vector<double> frame_u_;  // empty for halfline
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;   // lambda_1 >= ... >= lambda_r
    std::vector<Element> idempotents;  // same order
};

Element jordan_product(const Cone& cone, const Element& x, const Element& y);
double trace_inner(const Cone& cone, const Element& x, const Element& y);
double trace_of(const Cone& cone, const Element& x);
SpectralDecomposition spectral(const Cone& cone, const Element& x);
double determinant(const Cone& cone, const Element& x);

/// Principal minor Delta_k for the fixed frame; rotated_minor gives the
/// minor Delta*_k for the reversed frame.
double principal_minor(const Cone& cone, std::size_t k, const Element& x);
double rotated_minor(const Cone& cone, std::size_t k, const Element& x);

/// Generalized power function Delta_s(x) = prod_k Delta_k(x)^{s_k - s_{k+1}}
/// for x in the open cone; with rotated = true the rotated minors are used.
double power_function(const Cone& cone, const MultiIndex& s, const Element& x,
                      bool rotated = false);

Element inverse(const Cone& cone, const Element& x);
bool in_cone(const Cone& cone, const Element& x);

/// Square root of a cone element through its spectral decomposition.
Element sqrt_element(const Cone& cone, const Element& x);

/// Quadratic representation P(a)x = 2 a o (a o x) - (a o a) o x.
Element quadratic_rep(const Cone& cone, const Element& a, const Element& x);

/// Membership in the Wallach set: s_1 = u_1, s_j = u_j +
/// (d/2) * sum_{i<j} sgn(u_i) for some u_j >= 0.
bool in_wallach(const Cone& cone, const MultiIndex& s);

Element scale(const Element& x, double t);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);

/// Parses a CLI cone string: "halfline" or "lorentz:<n>[:u=a,b,...]"
/// (u is normalized to unit length).
Cone parse_cone(const std::string& text);

}  // namespace symcone
