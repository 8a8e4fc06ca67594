#pragma once

#include <memory>

#include "symcone/spaces.hpp"

namespace symcone {

/// Measure mu_s on the closed cone: the point mass at 0 for s = 0 and the
/// density Delta_s(t)/Gamma_Omega(s) Delta^{-n/r}(t) dt for s > g0.  Other
/// Wallach parameters (singular boundary measures) are rejected.
struct MeasureSpec {
    MultiIndex s;
    enum class Kind { delta0, density } kind;

    static MeasureSpec make(const Cone& cone, MultiIndex s);
};

/// Density of mu_s at t (zero outside the cone).  Throws for delta0.
double mu_density(const Cone& cone, const MeasureSpec& ms, const Element& t);

/// Profile on the cone: f(xi) = sum_k c_k Delta_{a_k}(xi) e^{-(b_k|xi)}.
/// Every norm used in the verification suites has a gamma-function closed
/// form on this family, which keeps independent oracles available.
struct ProfileTerm {
    double coeff = 1.0;
    MultiIndex a;
    Element b;
};

struct ProfileFunction {
    std::vector<ProfileTerm> terms;
    std::string label;

    double operator()(const Cone& cone, const Element& xi) const;
    /// f(t xi), expressed inside the family (exact).
    ProfileFunction dilated(const Cone& cone, double t) const;
    /// Smallest decay element among the terms (scale anchor).
    Element decay_anchor() const;
    std::string describe() const;
};

ProfileFunction exp_profile(const Cone& cone, Element b);
ProfileFunction power_profile(const Cone& cone, MultiIndex a, Element b);

/// Synthesis F(z) = (2 pi)^{-n/2} int_Omega e^{i(z|xi)} f(xi)
/// Delta*_{w*}(2 xi) dxi; w is the weight multi-index (the measure parameter
/// s, or nu for the Bergman-space construction).
///
/// Two evaluation routes are kept: the Laplace-transform closed form of the
/// profile family (used when available: always on the halfline, scalar power
/// terms on lorentz) and a cached cone quadrature grid.  The grid route is
/// the defining integral; it aliases for |x| beyond its resolution, so norm
/// integrals use the closed route, and the two are cross-checked in tests.
class PwSynthesis {
  public:
    PwSynthesis(const Cone& cone, const MultiIndex& w, const ProfileFunction& f,
                const quad::QuadratureSpec& spec);

    Complex operator()(const TubePoint& z) const;
    /// The defining integral on the cached grid (resolution-limited in x).
    Complex eval_via_grid(const TubePoint& z) const;
    bool has_closed_form() const;
    std::size_t node_count() const;
    const Cone& cone() const { return cone_; }

    /// int_{R^n} |F(x+iy)|^2 dx by tensor quadrature on the slab grid.
    double slice_l2_tensor(const Element& y, const quad::QuadratureSpec& spec) const;
    /// Same integral by importance-sampled Monte Carlo (truncated-cauchy
    /// proposal on the null-coordinate slab); deterministic per seed.
    double slice_l2_monte_carlo(const Element& y, std::size_t samples,
                                std::uint64_t seed, double box_halfwidth) const;

  private:
    struct Grid;
    struct ClosedTerm {
        Complex coeff;      // includes 2^{sum w}, Gamma_Omega and (2 pi)^{-n/2}
        MultiIndex expo;    // fixed-frame power of (z + ib)/i, negated exponent
        Element b;
    };
    Cone cone_;
    std::shared_ptr<const Grid> grid_;
    std::vector<ClosedTerm> closed_;
    bool closed_ok_ = false;
};

/// AnalyticFunction wrapper around a synthesis (shares the cached grid).
AnalyticFunction make_pw_function(const Cone& cone, const MultiIndex& w,
                                  const ProfileFunction& f,
                                  const quad::QuadratureSpec& spec);

/// One-shot synthesis evaluation.
Complex pw_synthesize(const Cone& cone, const MultiIndex& s, const ProfileFunction& f,
                      const TubePoint& z, const quad::QuadratureSpec& spec);

/// ||f||_{L^2_{s*}} = (int_Omega |f|^2 Delta*_{s*}(2 xi) dxi)^{1/2}, the
/// profile-side norm of the synthesis isometry.
double h2mu_norm_via_profile(const Cone& cone, const MultiIndex& s,
                             const ProfileFunction& f,
                             const quad::QuadratureSpec& spec);

struct PlancherelResult {
    double lhs = 0.0;  // int |F(x+iy)|^2 dx
    double rhs = 0.0;  // int e^{-2(y|xi)} |f|^2 Delta*_{2s*}(xi) dxi
    double ratio = 0.0;
};

/// Slice Plancherel check; the ratio is y-independent up to one constant.
PlancherelResult plancherel_residual(const Cone& cone, const MultiIndex& s,
                                     const ProfileFunction& f, const Element& y,
                                     const quad::QuadratureSpec& spec);

struct EmbeddingResult {
    struct PerProfile {
        std::string label;
        double base_ratio = 0.0;       // ||F||_{A^{p,q}_nu} / ||F||_{H^2_mu}
        double fitted_exponent = 0.0;  // d log ratio / d log t over the sweep
        bool diverged = false;
    };
    std::vector<PerProfile> profiles;
    double max_ratio = 0.0;
};

/// Embedding ratio with a dilation sweep; the fitted exponent vanishes
/// exactly when nu/q + (n/(rp),...) = n/(2r) + s/2 componentwise.
EmbeddingResult embedding_ratio(const Cone& cone, const MultiIndex& s, double p,
                                double q, const MultiIndex& nu,
                                const std::vector<ProfileFunction>& profiles,
                                const quad::QuadratureSpec& spec,
                                const std::vector<double>& scales = {0.5, 0.7071,
                                                                     1.0, 1.4142, 2.0});

/// g(u) = int_{Omega ^ (u-Omega)} f(u-xi) f(xi) Delta*_{s*}(2(u-xi))
/// Delta*_{s*}(2 xi) dxi, the profile of F^2.
quad::IntegralEstimate square_pw_coefficient(const Cone& cone, const MultiIndex& s,
                                             const ProfileFunction& f, const Element& u,
                                             const quad::QuadratureSpec& spec);

/// int_Omega g(u)^2 / Delta*_{2s* + n/r}(u) du.
quad::IntegralEstimate square_pw_l2(const Cone& cone, const MultiIndex& s,
                                    const ProfileFunction& f,
                                    const quad::QuadratureSpec& spec);

struct Lemma8Result {
    double profile_norm = 0.0;  // ||f||_{L^2_{2(1-1/q) nu*}}
    double space_norm = 0.0;    // ||F||_{A^{2,q}_nu}
    double ratio = 0.0;
    bool finite = false;
};

/// Paley-Wiener construction of Bergman-space members: synthesis weight
/// Delta*_{nu*}(2 xi), profile measured in L^2_{2(1-1/q) nu*}.
Lemma8Result lemma8_membership(const Cone& cone, const MultiIndex& nu, double q,
                               const ProfileFunction& f,
                               const quad::QuadratureSpec& spec);

}  // namespace symcone
