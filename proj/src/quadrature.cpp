#include "symcone/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "symcone/rules.hpp"

namespace symcone::quad {

namespace {

constexpr double kPi = std::numbers::pi;

struct Frame2 {  // eigenframe data of a lorentz(3) element
    double lam1 = 1.0, lam2 = 1.0;
    double u0 = 1.0, u1 = 0.0;  // unit direction of the bar part
};

Frame2 frame_of(const Cone& cone, const Element& y) {
    Frame2 f;
    if (cone.kind() == ConeKind::halfline) {
        f.lam1 = f.lam2 = y.empty() ? 1.0 : y[0];
        return f;
    }
    double m = std::hypot(y[1], y[2]);
    f.lam1 = y[0] + m;
    f.lam2 = y[0] - m;
    if (m > 0) {
        f.u0 = y[1] / m;
        f.u1 = y[2] / m;
    } else {
        f.u0 = cone.frame_direction()[0];
        f.u1 = cone.frame_direction()[1];
    }
    return f;
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

rules::Rule1D radial_rule(const QuadratureSpec& spec, std::size_t n, double alpha,
                          double scale) {
    switch (spec.cone_map) {
        case AxisMap::auto_select:
        case AxisMap::gauss_laguerre:
            return rules::gauss_laguerre(n, alpha, scale);
        case AxisMap::rational:
            return rules::rational_halfline(n, scale);
        case AxisMap::exp_sinh:
            return rules::exp_sinh_halfline(n, scale);
    }
    throw std::logic_error("unreachable");
}

std::size_t angular_count(const QuadratureSpec& spec, std::size_t n) {
    return spec.angular_nodes ? spec.angular_nodes : std::max<std::size_t>(8, n / 2);
}

}  // namespace

QuadratureSpec QuadratureSpec::with_nodes(std::size_t n) const {
    QuadratureSpec s = *this;
    s.nodes_per_axis = n;
    if (angular_nodes) s.angular_nodes = angular_nodes;
    return s;
}

QuadratureSpec QuadratureSpec::with_samples(std::size_t n) const {
    QuadratureSpec s = *this;
    s.sample_count = n;
    return s;
}

QuadratureSpec QuadratureSpec::with_scale(double a) const {
    QuadratureSpec s = *this;
    s.trunc_scale = a;
    return s;
}

std::string QuadratureSpec::key_value() const {
    std::ostringstream os;
    os << "scheme=" << (scheme == Scheme::tensor_gauss ? "tensor_gauss" : "monte_carlo")
       << " nodes=" << nodes_per_axis << " angular=" << angular_nodes
       << " samples=" << sample_count << " trunc_scale=" << trunc_scale
       << " seed=" << seed << " target_rel_tol=" << target_rel_tol;
    return os.str();
}

Region Region::cone_region(const Cone& c) {
    Region r{Kind::cone, c, {}, {}, {}, {}, {}, MeasureKind::trace_form};
    return r;
}

Region Region::cap_region(const Cone& c, Element y) {
    require(in_cone(c, y), "cone_cap requires y inside the open cone");
    Region r{Kind::cone_cap, c, std::move(y), {}, {}, {}, {}, MeasureKind::trace_form};
    return r;
}

Region Region::slab_region(const Cone& c) { return slab_region(c, c.identity()); }

Region Region::slab_region(const Cone& c, Element anchor, std::vector<double> center) {
    require(in_cone(c, anchor), "slab anchor must lie inside the open cone");
    require(center.empty() || center.size() == c.dim(), "slab center dimension");
    Region r{Kind::slab, c,  {}, std::move(anchor), std::move(center),
             {},         {}, MeasureKind::trace_form};
    return r;
}

Region Region::box_region(const Cone& c, std::vector<double> lo, std::vector<double> hi) {
    require(lo.size() == hi.size() && !lo.empty(), "box bounds mismatch");
    Region r{Kind::tube_box, c, {}, {}, {}, std::move(lo), std::move(hi),
             MeasureKind::trace_form};
    return r;
}

// ---------------------------------------------------------------------------
// tensor grids

NodeSet tensor_nodes(const Region& region, const QuadratureSpec& spec, int level) {
    std::size_t n = spec.nodes_per_axis << level;
    std::size_t m = angular_count(spec, n);
    const Cone& cone = region.cone;
    const double meas =
        region.measure == MeasureKind::trace_form ? cone.volume_scale() : 1.0;
    NodeSet out;

    if (region.kind == Region::Kind::cone) {
        if (cone.kind() == ConeKind::halfline) {
            rules::Rule1D r = radial_rule(spec, n, spec.alpha_min, spec.trunc_scale);
            out.dim = 1;
            out.points = r.nodes;
            out.weights = r.weights;
            return out;
        }
        require(cone.dim() == 3, "tensor_gauss cone grid implemented for lorentz(3)");
        // ordered spectral coordinates lam1 = l2 + mu:
        //   dx = 1/2 ((lam1-lam2)/2)^{n-2} dmu dl2 dtheta   (euclidean)
        rules::Rule1D rmu =
            radial_rule(spec, n, double(cone.dim() - 2) + spec.alpha_gap, spec.trunc_scale);
        rules::Rule1D rl2 = radial_rule(spec, n, spec.alpha_min, spec.trunc_scale * 0.5);
        rules::Rule1D rth = rules::circle(m);
        out.dim = 3;
        out.points.reserve(3 * n * n * m);
        out.weights.reserve(n * n * m);
        for (std::size_t i = 0; i < n; ++i) {
            double mu = rmu.nodes[i];
            for (std::size_t j = 0; j < n; ++j) {
                double l2 = rl2.nodes[j];
                double lam1 = l2 + mu;
                // drop fp-degenerate nodes: lam2/lam1 below double precision
                // makes the reconstructed point indistinguishable from the
                // boundary (their weight is negligible for any integrand the
                // grid converges on)
                if (l2 <= 1e-13 * lam1) continue;
                double x0 = 0.5 * (lam1 + l2);
                double xr = 0.5 * (lam1 - l2);
                // the laguerre alpha hints only steer node placement; the
                // geometric jacobian is carried explicitly here
                double jac = 0.5 * std::pow(0.5 * mu, double(cone.dim() - 2));
                double wij = rmu.weights[i] * rl2.weights[j] * jac * meas;
                for (std::size_t k = 0; k < m; ++k) {
                    double th = rth.nodes[k];
                    out.points.push_back(x0);
                    out.points.push_back(xr * std::cos(th));
                    out.points.push_back(xr * std::sin(th));
                    out.weights.push_back(wij * rth.weights[k]);
                }
            }
        }
        return out;
    }

    if (region.kind == Region::Kind::cone_cap) {
        // pull back to the standard cap at e through x = P(y^{1/2}) w,
        // |det| = Delta(y)^{n/r}; the cap at e is the spectral unit box.
        const Element& y = region.cap_y;
        double dety = determinant(cone, y);
        double pull = std::pow(dety, cone.dim_over_rank());
        if (cone.kind() == ConeKind::halfline) {
            rules::Rule1D r = rules::gauss_legendre_ab(n, 0.0, 1.0);
            out.dim = 1;
            out.points.resize(n);
            out.weights.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                out.points[i] = y[0] * r.nodes[i];
                out.weights[i] = pull * r.weights[i];
            }
            return out;
        }
        require(cone.dim() == 3, "tensor_gauss cap grid implemented for lorentz(3)");
        Element ysq = sqrt_element(cone, y);
        rules::Rule1D rt = rules::gauss_legendre_ab(n, 0.0, 1.0);
        rules::Rule1D rw = rules::gauss_legendre_ab(n, 0.0, 1.0);
        rules::Rule1D rth = rules::circle(m);
        out.dim = 3;
        out.points.reserve(3 * n * n * m);
        out.weights.reserve(n * n * m);
        Element w_el(3);
        for (std::size_t i = 0; i < n; ++i) {
            double t = rt.nodes[i];  // lam1 of w
            for (std::size_t j = 0; j < n; ++j) {
                double ww = rw.nodes[j];
                double l1 = t, l2 = t * ww;  // 0 < l2 < l1 < 1
                double x0 = 0.5 * (l1 + l2);
                double xr = 0.5 * (l1 - l2);
                double jac = 0.5 * std::pow(xr, double(cone.dim() - 2)) * t;
                double wij = rt.weights[i] * rw.weights[j] * jac * meas * pull;
                for (std::size_t k = 0; k < m; ++k) {
                    double th = rth.nodes[k];
                    w_el[0] = x0;
                    w_el[1] = xr * std::cos(th);
                    w_el[2] = xr * std::sin(th);
                    Element x = quadratic_rep(cone, ysq, w_el);
                    out.points.insert(out.points.end(), x.begin(), x.end());
                    out.weights.push_back(wij * rth.weights[k]);
                }
            }
        }
        return out;
    }

    if (region.kind == Region::Kind::slab) {
        if (cone.kind() == ConeKind::halfline) {
            double a = spec.trunc_scale * region.anchor[0];
            rules::Rule1D r = rules::rational_fullline(n, a);
            out.dim = 1;
            out.points = r.nodes;
            double c0 = region.center.empty() ? 0.0 : region.center[0];
            for (double& x : out.points) x += c0;
            out.weights = r.weights;
            for (double& w : out.weights) w *= meas;
            return out;
        }
        require(cone.dim() == 3, "tensor_gauss slab grid implemented for lorentz(3)");
        // null-plane coordinates u = x0 - rho, v = x0 + rho over the full
        // plane (double cover in (rho, phi)):
        //   dx = |v - u|/8 du dv dphi
        // which keeps the light-ray concentrations of tube kernels aligned
        // with the coordinate axes.
        Frame2 fr = frame_of(cone, region.anchor);
        double g = spec.trunc_scale * std::sqrt(fr.lam1 * fr.lam2);
        rules::Rule1D ru = rules::rational_fullline(n, g);
        rules::Rule1D rv = rules::rational_fullline(n, g);
        rules::Rule1D rth = rules::circle(m);
        out.dim = 3;
        out.points.reserve(3 * n * n * m);
        out.weights.reserve(n * n * m);
        double p0 = -fr.u1, p1 = fr.u0;  // orthogonal direction
        for (std::size_t i = 0; i < n; ++i) {
            double uu = ru.nodes[i];
            for (std::size_t j = 0; j < n; ++j) {
                double vv = rv.nodes[j];
                double x0 = 0.5 * (uu + vv);
                double rho = 0.5 * (vv - uu);
                double wij = ru.weights[i] * rv.weights[j] * std::abs(vv - uu) / 8.0 * meas;
                for (std::size_t k = 0; k < m; ++k) {
                    double c = std::cos(rth.nodes[k]), s = std::sin(rth.nodes[k]);
                    double c0 = region.center.empty() ? 0.0 : region.center[0];
                    double c1 = region.center.empty() ? 0.0 : region.center[1];
                    double c2 = region.center.empty() ? 0.0 : region.center[2];
                    out.points.push_back(c0 + x0);
                    out.points.push_back(c1 + rho * (c * fr.u0 + s * p0));
                    out.points.push_back(c2 + rho * (c * fr.u1 + s * p1));
                    out.weights.push_back(wij * rth.weights[k]);
                }
            }
        }
        return out;
    }

    // tube_box: plain Gauss-Legendre box
    const std::size_t dim = region.box_lo.size();
    out.dim = dim;
    std::vector<rules::Rule1D> ax;
    ax.reserve(dim);
    for (std::size_t d = 0; d < dim; ++d)
        ax.push_back(rules::gauss_legendre_ab(n, region.box_lo[d], region.box_hi[d]));
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> pt(dim);
    while (true) {
        double w = meas;
        for (std::size_t d = 0; d < dim; ++d) {
            pt[d] = ax[d].nodes[idx[d]];
            w *= ax[d].weights[idx[d]];
        }
        out.points.insert(out.points.end(), pt.begin(), pt.end());
        out.weights.push_back(w);
        std::size_t d = 0;
        for (; d < dim; ++d) {
            if (++idx[d] < n) break;
            idx[d] = 0;
        }
        if (d == dim) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

std::complex<double> sum_over(const NodeSet& ns, const Integrand& f, std::size_t* evals) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::complex<double> v = f(ns.point(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream os;
            os << "non-finite integrand sample at (";
            auto p = ns.point(i);
            for (std::size_t d = 0; d < p.size(); ++d) os << (d ? "," : "") << p[d];
            os << ")";
            throw std::runtime_error(os.str());
        }
        re += (long double)(ns.weights[i] * v.real());
        im += (long double)(ns.weights[i] * v.imag());
    }
    if (evals) *evals += ns.size();
    return {double(re), double(im)};
}

struct McCtx {
    const Region& region;
    const QuadratureSpec& spec;
};

// One Monte Carlo sample: fills `pt` and returns weight = jacobian/pdf
// (already including the measure normalization).
double mc_sample(const McCtx& ctx, std::mt19937_64& rng, std::vector<double>& pt) {
    const Cone& cone = ctx.region.cone;
    const double meas =
        ctx.region.measure == MeasureKind::trace_form ? cone.volume_scale() : 1.0;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto cauchy = [&](double scale) {
        return scale * std::tan(kPi * (unif(rng) - 0.5));
    };
    auto expo = [&](double scale) { return -scale * std::log1p(-unif(rng)); };

    switch (ctx.region.kind) {
        case Region::Kind::cone: {
            if (cone.kind() == ConeKind::halfline) {
                double a = ctx.spec.trunc_scale;
                double t = expo(a);
                pt[0] = t;
                return a * std::exp(t / a) * meas;  // 1/pdf
            }
            const std::size_t n = cone.dim();
            double a = ctx.spec.trunc_scale;
            double mu = expo(a);
            double l2 = expo(a * 0.5);
            if (l2 <= 1e-13 * (l2 + mu)) l2 = 1e-12 * (l2 + mu);
            // direction uniform on S^{n-2}
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::vector<double> w(n - 1);
            double nrm = 0.0;
            for (auto& c : w) {
                c = gauss(rng);
                nrm += c * c;
            }
            nrm = std::sqrt(nrm);
            double lam1 = l2 + mu;
            pt[0] = 0.5 * (lam1 + l2);
            double xr = 0.5 * (lam1 - l2);
            for (std::size_t i = 1; i < n; ++i) pt[i] = xr * w[i - 1] / nrm;
            double sphere = 2.0 * std::pow(kPi, 0.5 * double(n - 1)) /
                            std::tgamma(0.5 * double(n - 1));
            double jac = 0.5 * std::pow(0.5 * mu, double(n - 2)) * sphere;
            double inv_pdf = a * std::exp(mu / a) * (0.5 * a) * std::exp(l2 / (0.5 * a));
            return jac * inv_pdf * meas;
        }
        case Region::Kind::cone_cap: {
            const Element& y = ctx.region.cap_y;
            double pull = std::pow(determinant(cone, y), cone.dim_over_rank());
            if (cone.kind() == ConeKind::halfline) {
                pt[0] = y[0] * unif(rng);
                return pull * meas;
            }
            const std::size_t n = cone.dim();
            Element ysq = sqrt_element(cone, y);
            double t = unif(rng), w = unif(rng);
            double l1 = t, l2 = t * w;
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::vector<double> dir(n - 1);
            double nrm = 0.0;
            for (auto& c : dir) {
                c = gauss(rng);
                nrm += c * c;
            }
            nrm = std::sqrt(nrm);
            Element w_el(n);
            w_el[0] = 0.5 * (l1 + l2);
            double xr = 0.5 * (l1 - l2);
            for (std::size_t i = 1; i < n; ++i) w_el[i] = xr * dir[i - 1] / nrm;
            Element x = quadratic_rep(cone, ysq, w_el);
            for (std::size_t i = 0; i < n; ++i) pt[i] = x[i];
            double sphere = 2.0 * std::pow(kPi, 0.5 * double(n - 1)) /
                            std::tgamma(0.5 * double(n - 1));
            double jac = 0.5 * std::pow(xr, double(n - 2)) * t * sphere;
            return jac * pull * meas;
        }
        case Region::Kind::slab: {
            Frame2 fr = frame_of(cone, ctx.region.anchor);
            if (cone.kind() == ConeKind::halfline) {
                double a = ctx.spec.trunc_scale * fr.lam1;
                double u = unif(rng);
                double x = a * std::tan(kPi * (u - 0.5));
                pt[0] = (ctx.region.center.empty() ? 0.0 : ctx.region.center[0]) + x;
                double pdf = a / (kPi * (a * a + x * x));
                return meas / pdf;
            }
            const std::size_t n = cone.dim();
            double a = ctx.spec.trunc_scale * std::sqrt(fr.lam1 * fr.lam2);
            double inv_pdf = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                double x = cauchy(a);
                pt[i] = (ctx.region.center.empty() ? 0.0 : ctx.region.center[i]) + x;
                inv_pdf *= kPi * (a * a + x * x) / a;
            }
            return inv_pdf * meas;
        }
        case Region::Kind::tube_box: {
            double vol = 1.0;
            for (std::size_t d = 0; d < ctx.region.box_lo.size(); ++d) {
                pt[d] = ctx.region.box_lo[d] +
                        (ctx.region.box_hi[d] - ctx.region.box_lo[d]) * unif(rng);
                vol *= ctx.region.box_hi[d] - ctx.region.box_lo[d];
            }
            return vol * meas;
        }
    }
    throw std::logic_error("unreachable");
}

IntegralEstimate run_monte_carlo(const Region& region, const Integrand& f,
                                 const QuadratureSpec& spec, std::size_t samples) {
    std::size_t dim =
        region.kind == Region::Kind::tube_box ? region.box_lo.size() : region.cone.dim();
    std::vector<double> pt(dim);
    McCtx ctx{region, spec};
    constexpr std::size_t kChunk = 65536;
    long double sr = 0.0L, si = 0.0L, s2 = 0.0L;
    std::size_t done = 0, chunk_id = 0;
    while (done < samples) {
        std::size_t c = std::min(kChunk, samples - done);
        std::mt19937_64 rng(spec.seed + 0x9e3779b97f4a7c15ULL * (chunk_id + 1));
        for (std::size_t i = 0; i < c; ++i) {
            double w = mc_sample(ctx, rng, pt);
            std::complex<double> v = f(std::span<const double>(pt.data(), dim));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::runtime_error("non-finite integrand sample (monte_carlo)");
            double wr = w * v.real(), wi = w * v.imag();
            sr += wr;
            si += wi;
            s2 += (long double)(wr * wr + wi * wi);
        }
        done += c;
        ++chunk_id;
    }
    IntegralEstimate est;
    double n = double(samples);
    est.value = {double(sr / n), double(si / n)};
    double second = double(s2 / n);
    double var = std::max(0.0, second - std::norm(est.value));
    est.error_estimate = std::sqrt(var / n);
    est.evaluations = samples;
    est.converged = est.error_estimate <= spec.target_rel_tol * std::abs(est.value) ||
                    est.error_estimate == 0.0;
    return est;
}

}  // namespace

IntegralEstimate integrate(const Region& region, const Integrand& f,
                           const QuadratureSpec& spec) {
    if (spec.scheme == Scheme::monte_carlo)
        return run_monte_carlo(region, f, spec, spec.sample_count);

    IntegralEstimate est;
    NodeSet fine = tensor_nodes(region, spec, 0);
    est.value = sum_over(fine, f, &est.evaluations);
    // coarse companion level for the error estimate
    QuadratureSpec half = spec.with_nodes(std::max<std::size_t>(4, spec.nodes_per_axis / 2));
    if (half.angular_nodes == 0 && spec.angular_nodes != 0)
        half.angular_nodes = std::max<std::size_t>(4, spec.angular_nodes / 2);
    NodeSet coarse = tensor_nodes(region, half, 0);
    std::complex<double> low = sum_over(coarse, f, &est.evaluations);
    est.error_estimate = std::abs(est.value - low);
    est.converged = est.error_estimate <= spec.target_rel_tol * std::abs(est.value) ||
                    est.error_estimate == 0.0;
    return est;
}

IntegralEstimate refine(const IntegralEstimate& previous, const Region& region,
                        const Integrand& f, const QuadratureSpec& spec) {
    IntegralEstimate est;
    if (spec.scheme == Scheme::monte_carlo) {
        est = run_monte_carlo(region, f, spec, spec.sample_count * 2);
    } else {
        NodeSet fine = tensor_nodes(region, spec, 1);
        est.value = sum_over(fine, f, &est.evaluations);
    }
    est.error_estimate = std::abs(est.value - previous.value);
    est.converged = est.error_estimate <= spec.target_rel_tol * std::abs(est.value);
    return est;
}

ProbeResult integrate_with_divergence_probe(const Region& region, const Integrand& f,
                                            const QuadratureSpec& spec) {
    ProbeResult pr;
    pr.estimate = integrate(region, f, spec);
    IntegralEstimate refined = refine(pr.estimate, region, f, spec);
    IntegralEstimate wide = integrate(region, f, spec.with_scale(spec.trunc_scale * 4.0));
    double base = std::abs(refined.value);
    pr.scale_drift = base > 0 ? std::abs(wide.value - refined.value) / base : 0.0;
    double refine_drift =
        base > 0 ? std::abs(refined.value - pr.estimate.value) / base : 0.0;
    pr.diverged = pr.scale_drift > 0.05 || refine_drift > 0.05;
    pr.estimate = refined;
    pr.estimate.converged = !pr.diverged && pr.estimate.converged;
    return pr;
}

}  // namespace symcone::quad
