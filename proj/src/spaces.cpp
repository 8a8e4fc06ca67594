#include "symcone/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace symcone {

namespace q = quad;

CVec TubePoint::to_complex() const {
    CVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = Complex(x[i], y[i]);
    return z;
}

TubePoint tube_point(std::vector<double> x, Element y) {
    return TubePoint{std::move(x), std::move(y)};
}

TubePoint itimes(const Element& y) {
    return TubePoint{std::vector<double>(y.size(), 0.0), y};
}

Complex complex_determinant(const Cone& cone, const CVec& z) {
    if (z.size() != cone.dim())
        throw std::invalid_argument("complex_determinant: dimension mismatch");
    if (cone.kind() == ConeKind::halfline) return z[0];
    Complex s = z[0] * z[0];
    for (std::size_t i = 1; i < z.size(); ++i) s -= z[i] * z[i];
    return s;
}

Complex complex_minor1(const Cone& cone, const CVec& z, bool rotated) {
    if (cone.kind() == ConeKind::halfline) return z[0];
    Complex dot = 0.0;
    const auto& u = cone.frame_direction();
    for (std::size_t i = 0; i < u.size(); ++i) dot += z[i + 1] * u[i];
    return rotated ? z[0] - dot : z[0] + dot;
}

namespace {

Complex principal_pow(Complex base, double expo, const char* what) {
    if (expo == 0.0) return 1.0;
    if (base.imag() == 0.0 && base.real() <= 0.0) {
        std::ostringstream os;
        os << what << ": factor " << base.real() << " lies on the branch cut";
        throw std::domain_error(os.str());
    }
    return std::pow(base, expo);
}

}  // namespace

Complex complex_power(const Cone& cone, const CVec& z, const MultiIndex& s,
                      bool rotated) {
    if (s.rank() != cone.rank())
        throw std::invalid_argument("complex_power: multi-index rank mismatch");
    if (cone.kind() == ConeKind::halfline)
        return principal_pow(z[0], s[0], "complex_power");
    Complex m1 = complex_minor1(cone, z, rotated);
    Complex m2 = complex_determinant(cone, z);
    return principal_pow(m1, s[0] - s[1], "complex_power") *
           principal_pow(m2, s[1], "complex_power");
}

Complex complex_power(const Cone& cone, const CVec& z, double a) {
    return principal_pow(complex_determinant(cone, z), a, "complex_power");
}

CVec kernel_argument(const TubePoint& z, const TubePoint& w) {
    // (z - conj w)/i = (y + v) - i(x - u) for w = u + iv
    CVec out(z.x.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = Complex(z.y[i] + w.y[i], -(z.x[i] - w.x[i]));
    return out;
}

Complex bergman_kernel(const Cone& cone, double nu, const TubePoint& z,
                       const TubePoint& w) {
    if (!(nu > cone.dim_over_rank() - 1.0))
        throw std::domain_error("bergman_kernel: nu must exceed n/r - 1");
    return complex_power(cone, kernel_argument(z, w), -(nu + cone.dim_over_rank()));
}

AnalyticFunction make_kernel_function(const Cone& cone, const TubePoint& w, double mu) {
    AnalyticFunction f;
    f.anchor = w.y;
    std::ostringstream os;
    os << "kernel(mu=" << mu << ",w=";
    for (std::size_t i = 0; i < w.x.size(); ++i)
        os << (i ? "," : "") << w.x[i] << "+" << w.y[i] << "i";
    os << ")";
    f.label = os.str();
    TubePoint wc = w;
    f.eval = [cone, wc, mu](const TubePoint& z) -> Complex {
        return complex_power(cone, kernel_argument(z, wc), -mu);
    };
    if (cone.kind() == ConeKind::halfline) {
        // (1/i) d/dz of ((z - conj w)/i)^{-mu}
        f.box_exact = [cone, wc, mu](const TubePoint& z) -> Complex {
            return mu * complex_power(cone, kernel_argument(z, wc), -mu - 1.0);
        };
    }
    return f;
}

AnalyticFunction dilate_function(const AnalyticFunction& f, double t) {
    AnalyticFunction g;
    g.anchor = scale(f.anchor, 1.0 / t);
    g.label = f.label + "@t=" + std::to_string(t);
    auto base_eval = f.eval;
    const std::size_t order = f.anchor.size() == 1 ? 1 : 2;  // order of the box operator
    g.eval = [base_eval, t](const TubePoint& z) -> Complex {
        TubePoint tz = z;
        for (auto& c : tz.x) c *= t;
        tz.y = scale(z.y, t);
        return base_eval(tz);
    };
    if (f.box_exact) {
        auto base_box = f.box_exact;
        g.box_exact = [base_box, t, order](const TubePoint& z) -> Complex {
            TubePoint tz = z;
            for (auto& c : tz.x) c *= t;
            tz.y = scale(z.y, t);
            return std::pow(t, double(order)) * base_box(tz);
        };
    }
    return g;
}

// ---------------------------------------------------------------------------
// norms

namespace {

q::QuadratureSpec outer_cone_spec(const q::QuadratureSpec& spec) {
    q::QuadratureSpec s = spec;
    // norm integrands have algebraic tails in y and possibly algebraic
    // boundary singularities: the double-exponential map handles both
    s.cone_map = q::AxisMap::exp_sinh;
    return s;
}

q::IntegralEstimate slab_power_integral(const Cone& cone, const AnalyticFunction& F,
                                        double p, const Element& y,
                                        const q::QuadratureSpec& spec) {
    Element anchor = y;
    if (F.anchor.size() == anchor.size()) anchor = add(anchor, F.anchor);
    q::Region slab = q::Region::slab_region(cone, anchor);
    TubePoint z{std::vector<double>(cone.dim(), 0.0), y};
    return q::integrate(
        slab,
        [&](std::span<const double> pt) -> Complex {
            std::copy(pt.begin(), pt.end(), z.x.begin());
            return std::pow(std::abs(F.eval(z)), p);
        },
        spec);
}

}  // namespace

NormResult mixed_norm(const Cone& cone, const AnalyticFunction& F, double p, double q_,
                      const MultiIndex& nu, const q::QuadratureSpec& spec,
                      bool probe_divergence) {
    if (!(p >= 1.0 && q_ >= 1.0))
        throw std::invalid_argument("mixed_norm: requires 1 <= p, q");
    if (nu.rank() != cone.rank())
        throw std::invalid_argument("mixed_norm: nu rank mismatch");
    NormResult out;
    MultiIndex w = shift(nu, -cone.dim_over_rank());
    q::Region outer = q::Region::cone_region(cone);
    q::QuadratureSpec ospec = outer_cone_spec(spec);
    Element y(cone.dim());
    auto integrand = [&](std::span<const double> pt) -> Complex {
        y.assign(pt.begin(), pt.end());
        q::IntegralEstimate inner = slab_power_integral(cone, F, p, y, spec);
        return std::pow(inner.real(), q_ / p) * power_function(cone, w, y);
    };
    if (probe_divergence) {
        q::ProbeResult pr = q::integrate_with_divergence_probe(outer, integrand, ospec);
        out.outer_estimate = pr.estimate;
        out.infinite = pr.diverged;
    } else {
        out.outer_estimate = q::integrate(outer, integrand, ospec);
    }
    double vq = out.outer_estimate.real();
    if (!(vq >= 0.0) || !std::isfinite(vq)) out.infinite = true;
    out.value = out.infinite ? std::numeric_limits<double>::infinity()
                             : std::pow(vq, 1.0 / q_);
    return out;
}

std::vector<Element> default_t_grid(const Cone& cone) {
    std::vector<Element> grid;
    for (int k = 3; k >= -10; --k)
        grid.push_back(scale(cone.identity(), std::pow(2.0, double(k))));
    return grid;
}

NormResult hardy_mu_norm(const Cone& cone, const AnalyticFunction& F, double p,
                         const MultiIndex& s, const std::vector<Element>& t_grid,
                         const q::QuadratureSpec& spec) {
    if (!in_wallach(cone, s))
        throw std::domain_error("hardy_mu_norm: s outside the Wallach set");
    bool zero = true;
    for (std::size_t j = 0; j < s.rank(); ++j) zero = zero && s[j] == 0.0;
    bool density = less(cone.g0(), s);
    if (!zero && !density)
        throw std::domain_error(
            "hardy_mu_norm: singular Wallach measure (neither 0 nor > g0)");
    if (t_grid.empty()) throw std::invalid_argument("hardy_mu_norm: empty t grid");

    NormResult out;
    double best = 0.0;
    if (zero) {
        for (const Element& t : t_grid) {
            q::IntegralEstimate sl = slab_power_integral(cone, F, p, t, spec);
            out.inner_estimates.push_back(sl);
            best = std::max(best, sl.real());
        }
    } else {
        double lg = log_gamma_cone(cone, s);
        MultiIndex w = shift(s, -cone.dim_over_rank());
        q::Region outer = q::Region::cone_region(cone);
        q::QuadratureSpec ospec = outer_cone_spec(spec);
        Element y(cone.dim());
        for (const Element& t : t_grid) {
            auto est = q::integrate(
                outer,
                [&](std::span<const double> pt) -> Complex {
                    y.assign(pt.begin(), pt.end());
                    q::IntegralEstimate inner =
                        slab_power_integral(cone, F, p, add(y, t), spec);
                    return inner.real() * power_function(cone, w, y) * std::exp(-lg);
                },
                ospec);
            out.inner_estimates.push_back(est);
            best = std::max(best, est.real());
        }
    }
    if (!out.inner_estimates.empty()) out.outer_estimate = out.inner_estimates.back();
    out.value = std::pow(best, 1.0 / p);
    return out;
}

quad::IntegralEstimate J_alpha(const Cone& cone, const MultiIndex& alpha,
                               const Element& y, const q::QuadratureSpec& spec) {
    MultiIndex bound = shift(cone.g0_star(), cone.dim_over_rank());
    if (!less(bound, alpha)) {
        std::ostringstream os;
        os << "J_alpha: requires alpha > g0* + n/r componentwise (alpha = "
           << to_string(alpha) << ", bound = " << to_string(bound) << ")";
        throw std::domain_error(os.str());
    }
    if (!in_cone(cone, y)) throw std::domain_error("J_alpha: y outside the open cone");
    q::Region slab = q::Region::slab_region(cone, y);
    MultiIndex neg = -1.0 * alpha;
    CVec v(cone.dim());
    return q::integrate(
        slab,
        [&](std::span<const double> pt) -> Complex {
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = Complex(y[i], -pt[i]);
            return std::abs(complex_power(cone, v, neg));
        },
        spec);
}

quad::ProbeResult weighted_cone_integral(const Cone& cone, const MultiIndex& beta,
                                         const MultiIndex& s, const Element& t,
                                         const q::QuadratureSpec& spec) {
    if (!in_cone(cone, t))
        throw std::domain_error("weighted_cone_integral: t outside the open cone");
    check_gamma_domain(cone, s, "weighted_cone_integral(s)");
    q::Region region = q::Region::cone_region(cone);
    q::QuadratureSpec rspec = outer_cone_spec(spec);
    MultiIndex sm = shift(s, -cone.dim_over_rank());
    Element y(cone.dim());
    return q::integrate_with_divergence_probe(
        region,
        [&](std::span<const double> pt) -> Complex {
            y.assign(pt.begin(), pt.end());
            return power_function(cone, beta, add(y, t)) * power_function(cone, sm, y);
        },
        rspec);
}

double pointwise_bound_ratio(const Cone& cone, const AnalyticFunction& F, double p,
                             double q_, const MultiIndex& nu,
                             const std::vector<TubePoint>& z_grid,
                             const q::QuadratureSpec& spec) {
    NormResult norm = mixed_norm(cone, F, p, q_, nu, spec);
    if (norm.infinite) throw std::domain_error("pointwise_bound_ratio: norm diverges");
    MultiIndex m = shift((1.0 / q_) * nu, cone.dim_over_rank() / p);
    double best = 0.0;
    for (const TubePoint& z : z_grid) {
        double v = std::abs(F.eval(z)) * power_function(cone, m, z.y) / norm.value;
        best = std::max(best, v);
    }
    return best;
}

double box_symbol(const Cone& cone, const Element& xi) { return determinant(cone, xi); }

Complex box_apply(const Cone& cone, const std::function<Complex(const TubePoint&)>& F,
                  const TubePoint& z, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("box_apply: h must be positive");
    if (!in_cone(cone, z.y)) throw std::domain_error("box_apply: stencil exits the tube");
    if (cone.kind() == ConeKind::halfline) {
        TubePoint zp = z, zm = z;
        zp.x[0] += h;
        zm.x[0] -= h;
        return (F(zp) - F(zm)) / (2.0 * h * Complex(0.0, 1.0));
    }
    // trace pairing e^{i(x|xi)} = e^{2i<x,xi>} fixes the 1/4 normalization
    Complex acc = 0.0;
    Complex center = F(z);
    for (std::size_t k = 0; k < cone.dim(); ++k) {
        TubePoint zp = z, zm = z;
        zp.x[k] += h;
        zm.x[k] -= h;
        Complex second = (F(zp) - 2.0 * center + F(zm)) / (h * h);
        acc += (k == 0 ? -second : second);
    }
    return acc / 4.0;
}

NormResult lattice_norm_rank1(const Cone& cone, const AnalyticFunction& F, double p,
                              double q_, const MultiIndex& nu, double delta,
                              const LatticeWindow& window) {
    if (cone.kind() != ConeKind::halfline)
        throw std::invalid_argument("lattice_norm_rank1: rank-1 cone only");
    if (!(delta > 0.0)) throw std::invalid_argument("lattice_norm_rank1: delta > 0");
    if (window.k_min < -18)
        throw std::invalid_argument("lattice_norm_rank1: k_min below -18 is infeasible");
    double mu = nu[0];
    long double total = 0.0L;
    double first_shell = 0.0, last_shell = 0.0;
    for (int k = window.k_min; k <= window.k_max; ++k) {
        double yk = std::pow(2.0, double(k));
        double hx = delta * yk;
        long double inner = 0.0L;
        TubePoint z{{0.0}, {yk}};
        inner += std::pow(std::abs(F.eval(z)), p) * hx;
        for (int sgn : {-1, 1}) {
            int idle = 0;
            for (int j = sgn;; j += sgn) {
                z.x[0] = double(j) * hx;
                double term = std::pow(std::abs(F.eval(z)), p) * hx;
                inner += term;
                if (term < window.tail_tol * double(inner)) {
                    if (++idle > 3) break;
                } else {
                    idle = 0;
                }
                if (std::abs(j) > 5000000)
                    throw std::runtime_error("lattice_norm_rank1: row did not decay");
            }
        }
        double cell = mu != 0.0 ? std::pow(yk, mu) * (std::pow(2.0, mu) - 1.0) / mu
                                : std::numbers::ln2_v<double>;
        double shell = std::pow(double(inner), q_ / p) * cell;
        total += shell;
        if (k == window.k_min) first_shell = shell;
        if (k == window.k_max) last_shell = shell;
    }
    double tot = double(total);
    if (!(tot > 0.0)) throw std::runtime_error("lattice_norm_rank1: empty sum");
    if (first_shell > 1e-3 * tot || last_shell > 1e-3 * tot)
        throw std::runtime_error("lattice_norm_rank1: window too small (tail estimate)");
    NormResult out;
    out.value = std::pow(tot, 1.0 / q_);
    return out;
}

}  // namespace symcone
