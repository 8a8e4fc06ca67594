#include "symcone/paley_wiener.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "symcone/rules.hpp"

namespace symcone {

namespace q = quad;

namespace {
constexpr double kPi = std::numbers::pi;

double max_eigenvalue(const Cone& cone, const Element& y) {
    return spectral(cone, y).eigenvalues.front();
}

}  // namespace

MeasureSpec MeasureSpec::make(const Cone& cone, MultiIndex s) {
    if (!in_wallach(cone, s))
        throw std::domain_error("MeasureSpec: s outside the Wallach set");
    bool zero = true;
    for (std::size_t j = 0; j < s.rank(); ++j) zero = zero && s[j] == 0.0;
    if (zero) return MeasureSpec{std::move(s), Kind::delta0};
    if (less(cone.g0(), s)) return MeasureSpec{std::move(s), Kind::density};
    throw std::domain_error("MeasureSpec: singular Wallach parameter unsupported");
}

double mu_density(const Cone& cone, const MeasureSpec& ms, const Element& t) {
    if (ms.kind == MeasureSpec::Kind::delta0)
        throw std::domain_error("mu_density: the point mass at 0 has no density");
    if (!in_cone(cone, t)) return 0.0;
    double lg = log_gamma_cone(cone, ms.s);
    return power_function(cone, shift(ms.s, -cone.dim_over_rank()), t) * std::exp(-lg);
}

double ProfileFunction::operator()(const Cone& cone, const Element& xi) const {
    double v = 0.0;
    for (const auto& term : terms)
        v += term.coeff * power_function(cone, term.a, xi) *
             std::exp(-trace_inner(cone, term.b, xi));
    return v;
}

ProfileFunction ProfileFunction::dilated(const Cone& cone, double t) const {
    (void)cone;
    ProfileFunction g = *this;
    for (auto& term : g.terms) {
        term.coeff *= std::pow(t, term.a.sum());
        term.b = scale(term.b, t);
    }
    g.label = label + "@t=" + std::to_string(t);
    return g;
}

Element ProfileFunction::decay_anchor() const {
    if (terms.empty()) throw std::logic_error("empty profile");
    return terms.front().b;
}

std::string ProfileFunction::describe() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k) os << " + ";
        os << terms[k].coeff << "*D_(" << to_string(terms[k].a) << ")*exp(-(b|.)), b=";
        for (std::size_t i = 0; i < terms[k].b.size(); ++i)
            os << (i ? "," : "") << terms[k].b[i];
    }
    return os.str();
}

ProfileFunction exp_profile(const Cone& cone, Element b) {
    ProfileFunction f;
    f.terms.push_back({1.0, MultiIndex::constant(cone.rank(), 0.0), std::move(b)});
    f.label = "exp";
    return f;
}

ProfileFunction power_profile(const Cone& cone, MultiIndex a, Element b) {
    (void)cone;
    ProfileFunction f;
    f.label = "pow(" + to_string(a) + ")";
    f.terms.push_back({1.0, std::move(a), std::move(b)});
    return f;
}

// ---------------------------------------------------------------------------
// synthesis grid

struct PwSynthesis::Grid {
    std::vector<double> xi;    // dim-strided nodes
    std::vector<double> coef;  // weight * f * Delta*_{w*}(2 xi) * (2 pi)^{-n/2}
    std::size_t dim = 1;
    double pair = 1.0;  // (x|xi) = pair * <x, xi>
    // structured axes (lorentz(3)) for separable-phase evaluation
    bool structured = false;
    std::vector<double> mu, l2, cth, sth;
    std::size_t Nl = 0, Mth = 0;
    Element anchor;

    std::size_t size() const { return coef.size(); }
};

PwSynthesis::PwSynthesis(const Cone& cone, const MultiIndex& w, const ProfileFunction& f,
                         const q::QuadratureSpec& spec)
    : cone_(cone) {
    // Laplace-transform closed form of the profile family.  On the halfline
    //   int xi^{a+w} e^{-(b - iz) xi} dxi = Gamma(a+w+1) (b-iz)^{-(a+w+1)};
    // on lorentz, for scalar power terms Delta^a, the rotated-frame transform
    //   int e^{i(z|xi)} Delta*_tau(xi) e^{-(b|xi)} dxi
    //     = Gamma_Omega(tau + n/r) Delta_{(tau+n/r)*}((z+ib)/i)^{-1}.
    closed_ok_ = true;
    const double nr = cone.dim_over_rank();
    for (const auto& term : f.terms) {
        ClosedTerm ct;
        ct.b = term.b;
        if (cone.kind() == ConeKind::halfline) {
            double kappa = term.a[0] + w[0] + 1.0;
            if (!(kappa > 0.0)) {
                closed_ok_ = false;
                break;
            }
            ct.coeff = term.coeff * std::pow(2.0, w[0]) * std::tgamma(kappa) *
                       std::pow(2.0 * kPi, -0.5);
            ct.expo = MultiIndex{kappa};
        } else {
            bool scalar_a = true;
            for (std::size_t j = 1; j < term.a.rank(); ++j)
                scalar_a = scalar_a && term.a[j] == term.a[0];
            if (!scalar_a) {
                closed_ok_ = false;
                break;
            }
            MultiIndex tau = shift(star(w), term.a[0]);
            MultiIndex tilde = shift(tau, nr);
            try {
                double lg = log_gamma_cone(cone, tilde);
                ct.coeff = term.coeff * std::pow(2.0, w.sum()) * std::exp(lg) *
                           std::pow(2.0 * kPi, -0.5 * double(cone.dim()));
            } catch (const std::domain_error&) {
                closed_ok_ = false;
                break;
            }
            ct.expo = star(tilde);
        }
        closed_.push_back(std::move(ct));
    }
    if (!closed_ok_) closed_.clear();

    auto grid = std::make_shared<Grid>();
    grid->anchor = f.decay_anchor();
    grid->dim = cone.dim();
    grid->pair = cone.kind() == ConeKind::halfline ? 1.0 : 2.0;
    const double nhalf = std::pow(2.0 * kPi, -0.5 * double(cone.dim()));
    const MultiIndex ws = star(w);
    const Element b = f.decay_anchor();

    if (cone.kind() == ConeKind::halfline) {
        double sc = spec.trunc_scale / b[0];
        double alpha = std::max(-0.9, w[0] + (f.terms.empty() ? 0.0 : f.terms[0].a[0]));
        rules::Rule1D r = rules::gauss_laguerre(spec.nodes_per_axis, alpha, sc);
        Element xi(1);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            xi[0] = r.nodes[i];
            double weight = power_function(cone, ws, scale(xi, 2.0));
            grid->xi.push_back(xi[0]);
            grid->coef.push_back(r.weights[i] * f(cone, xi) * weight * nhalf);
        }
        grid_ = std::move(grid);
        return;
    }
    if (cone.dim() != 3)
        throw std::invalid_argument("PwSynthesis: lorentz grids implemented for n = 3");

    const std::size_t Nl = spec.nodes_per_axis;
    const std::size_t Mth =
        spec.angular_nodes ? spec.angular_nodes : std::max<std::size_t>(8, Nl / 2);
    double rate = trace_of(cone, b) / double(cone.rank());
    double sc = spec.trunc_scale / rate;
    double amin = std::max(-0.9, ws[1] + spec.alpha_min);
    rules::Rule1D rmu = rules::gauss_laguerre(Nl, double(cone.dim() - 2), sc);
    rules::Rule1D rl2 = rules::gauss_laguerre(Nl, amin, 0.5 * sc);
    rules::Rule1D rth = rules::circle(Mth);
    grid->structured = true;
    grid->Nl = Nl;
    grid->Mth = Mth;
    grid->mu = rmu.nodes;
    grid->l2 = rl2.nodes;
    grid->cth.resize(Mth);
    grid->sth.resize(Mth);
    for (std::size_t m = 0; m < Mth; ++m) {
        grid->cth[m] = std::cos(rth.nodes[m]);
        grid->sth[m] = std::sin(rth.nodes[m]);
    }
    grid->coef.assign(Nl * Nl * Mth, 0.0);
    grid->xi.assign(3 * Nl * Nl * Mth, 0.0);
    const double meas = cone.volume_scale();
    Element xi(3);
    for (std::size_t j = 0; j < Nl; ++j) {
        double l2v = grid->l2[j];
        for (std::size_t i = 0; i < Nl; ++i) {
            double muv = grid->mu[i];
            double lam1 = l2v + muv;
            if (l2v <= 1e-13 * lam1) continue;
            double x0 = 0.5 * (lam1 + l2v);
            double xr = 0.5 * (lam1 - l2v);
            double jac = 0.5 * std::pow(0.5 * muv, double(cone.dim() - 2));
            double wij = rmu.weights[i] * rl2.weights[j] * jac * meas;
            for (std::size_t m = 0; m < Mth; ++m) {
                xi[0] = x0;
                xi[1] = xr * grid->cth[m];
                xi[2] = xr * grid->sth[m];
                std::size_t idx = (j * Nl + i) * Mth + m;
                double weight = power_function(cone, ws, scale(xi, 2.0), /*rotated=*/true);
                grid->coef[idx] = wij * rth.weights[m] * f(cone, xi) * weight * nhalf;
                grid->xi[3 * idx] = xi[0];
                grid->xi[3 * idx + 1] = xi[1];
                grid->xi[3 * idx + 2] = xi[2];
            }
        }
    }
    grid_ = std::move(grid);
}

std::size_t PwSynthesis::node_count() const { return grid_->size(); }

bool PwSynthesis::has_closed_form() const { return closed_ok_; }

Complex PwSynthesis::operator()(const TubePoint& z) const {
    if (closed_ok_) {
        Complex acc = 0.0;
        CVec w(cone_.dim());
        for (const auto& ct : closed_) {
            // (z + ib)/i = (y + b) - i x
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] = Complex(z.y[i] + ct.b[i], -z.x[i]);
            acc += ct.coeff / complex_power(cone_, w, ct.expo);
        }
        return acc;
    }
    return eval_via_grid(z);
}

Complex PwSynthesis::eval_via_grid(const TubePoint& z) const {
    const Grid& g = *grid_;
    Complex acc = 0.0;
    if (!g.structured) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            double ph = g.pair * z.x[0] * g.xi[k];
            double dec = std::exp(-g.pair * z.y[0] * g.xi[k]);
            acc += g.coef[k] * dec * Complex(std::cos(ph), std::sin(ph));
        }
        return acc;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.coef[k] == 0.0) continue;
        const double* xi = &g.xi[3 * k];
        double dot_x = z.x[0] * xi[0] + z.x[1] * xi[1] + z.x[2] * xi[2];
        double dot_y = z.y[0] * xi[0] + z.y[1] * xi[1] + z.y[2] * xi[2];
        double ph = g.pair * dot_x;
        acc += g.coef[k] * std::exp(-g.pair * dot_y) * Complex(std::cos(ph), std::sin(ph));
    }
    return acc;
}

double PwSynthesis::slice_l2_tensor(const Element& y,
                                    const q::QuadratureSpec& spec) const {
    Element anchor = add(y, grid_->anchor);
    q::Region slab = q::Region::slab_region(cone_, anchor);
    TubePoint z{std::vector<double>(cone_.dim(), 0.0), y};
    auto est = q::integrate(
        slab,
        [&](std::span<const double> pt) -> Complex {
            std::copy(pt.begin(), pt.end(), z.x.begin());
            return std::norm((*this)(z));
        },
        spec);
    return est.real();
}

double PwSynthesis::slice_l2_monte_carlo(const Element& y, std::size_t samples,
                                         std::uint64_t seed,
                                         double box_halfwidth) const {
    const Grid& g = *grid_;
    const double R = box_halfwidth;
    if (!(R > 0.0)) throw std::invalid_argument("slice_l2_monte_carlo: box required");
    constexpr std::size_t kChunk = 65536;

    if (!g.structured) {
        std::vector<double> dec(g.size());
        for (std::size_t k = 0; k < g.size(); ++k)
            dec[k] = g.coef[k] * std::exp(-g.pair * y[0] * g.xi[k]);
        double gam = R / 8.0;
        double mass = 2.0 / kPi * std::atan(R / gam);
        long double acc = 0.0L;
        std::size_t done = 0, chunk = 0;
        TubePoint z{{0.0}, y};
        while (done < samples) {
            std::size_t c = std::min(kChunk, samples - done);
            std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (chunk + 1));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (std::size_t i = 0; i < c; ++i) {
                double x = gam * std::tan(mass * kPi * (unif(rng) - 0.5));
                double pdf = gam / (kPi * (gam * gam + x * x)) / mass;
                Complex F = 0.0;
                if (closed_ok_) {
                    z.x[0] = x;
                    F = (*this)(z);
                } else {
                    for (std::size_t k = 0; k < g.size(); ++k) {
                        double ph = g.pair * x * g.xi[k];
                        F += dec[k] * Complex(std::cos(ph), std::sin(ph));
                    }
                }
                acc += std::norm(F) / pdf;
            }
            done += c;
            ++chunk;
        }
        return double(acc / samples) * cone_.volume_scale();
    }

    // lorentz(3): null-plane importance sampling; on the grid route the
    // phases factor as 2<x,xi> = (2 x0) l2_j + mu_i (x0 + <xbar, omega_m>)
    const std::size_t Nl = g.Nl, Mth = g.Mth, K = g.size();
    std::vector<double> dec(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        if (g.coef[k] == 0.0) continue;
        const double* xi = &g.xi[3 * k];
        double dot_y = y[0] * xi[0] + y[1] * xi[1] + y[2] * xi[2];
        dec[k] = g.coef[k] * std::exp(-2.0 * dot_y);
    }
    double gam = R / 8.0;
    double mass = 2.0 / kPi * std::atan(R / gam);
    std::vector<Complex> A(Nl), B(Nl * Mth);
    std::vector<double> cgrid(Mth);
    long double acc = 0.0L;
    std::size_t done = 0, chunk = 0;
    TubePoint z{{0.0, 0.0, 0.0}, y};
    while (done < samples) {
        std::size_t c = std::min(kChunk, samples - done);
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (chunk + 1));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (std::size_t sidx = 0; sidx < c; ++sidx) {
            double uu = gam * std::tan(mass * kPi * (unif(rng) - 0.5));
            double vv = gam * std::tan(mass * kPi * (unif(rng) - 0.5));
            double phi = 2.0 * kPi * unif(rng);
            double pu = gam / (kPi * (gam * gam + uu * uu)) / mass;
            double pv = gam / (kPi * (gam * gam + vv * vv)) / mass;
            double x0 = 0.5 * (uu + vv);
            double rho = 0.5 * (vv - uu);
            double x1 = rho * std::cos(phi), x2 = rho * std::sin(phi);
            Complex F = 0.0;
            if (closed_ok_) {
                z.x[0] = x0;
                z.x[1] = x1;
                z.x[2] = x2;
                F = (*this)(z);
            } else {
                for (std::size_t j = 0; j < Nl; ++j) {
                    double ph = 2.0 * x0 * g.l2[j];
                    A[j] = Complex(std::cos(ph), std::sin(ph));
                }
                for (std::size_t m = 0; m < Mth; ++m)
                    cgrid[m] = x0 + x1 * g.cth[m] + x2 * g.sth[m];
                for (std::size_t i = 0; i < Nl; ++i) {
                    double mui = g.mu[i];
                    for (std::size_t m = 0; m < Mth; ++m) {
                        double ph = mui * cgrid[m];
                        B[i * Mth + m] = Complex(std::cos(ph), std::sin(ph));
                    }
                }
                for (std::size_t j = 0; j < Nl; ++j) {
                    Complex S = 0.0;
                    const double* dj = &dec[j * Nl * Mth];
                    for (std::size_t im = 0; im < Nl * Mth; ++im) S += dj[im] * B[im];
                    F += A[j] * S;
                }
            }
            double jac = std::abs(vv - uu) / 8.0;
            acc += std::norm(F) * jac / (pu * pv) * (2.0 * kPi);
        }
        done += c;
        ++chunk;
    }
    return double(acc / samples) * cone_.volume_scale();
}

AnalyticFunction make_pw_function(const Cone& cone, const MultiIndex& w,
                                  const ProfileFunction& f,
                                  const q::QuadratureSpec& spec) {
    auto synth = std::make_shared<PwSynthesis>(cone, w, f, spec);
    AnalyticFunction out;
    out.anchor = f.decay_anchor();
    out.label = "pw[" + f.label + ";w=" + to_string(w) + "]";
    out.eval = [synth](const TubePoint& z) -> Complex { return (*synth)(z); };
    return out;
}

Complex pw_synthesize(const Cone& cone, const MultiIndex& s, const ProfileFunction& f,
                      const TubePoint& z, const q::QuadratureSpec& spec) {
    PwSynthesis synth(cone, s, f, spec);
    return synth(z);
}

double h2mu_norm_via_profile(const Cone& cone, const MultiIndex& s,
                             const ProfileFunction& f, const q::QuadratureSpec& spec) {
    MultiIndex ss = star(s);
    const Element b = f.decay_anchor();
    double rate = 2.0 * trace_of(cone, b) / double(cone.rank());
    q::QuadratureSpec sp = spec;
    sp.trunc_scale = spec.trunc_scale / rate;
    sp.alpha_min = std::max(-0.9, ss.rank() > 1 ? ss[1] : ss[0]);
    q::Region region = q::Region::cone_region(cone);
    Element xi(cone.dim());
    auto est = q::integrate(
        region,
        [&](std::span<const double> pt) -> Complex {
            xi.assign(pt.begin(), pt.end());
            double fv = f(cone, xi);
            return fv * fv * power_function(cone, ss, scale(xi, 2.0), /*rotated=*/true);
        },
        sp);
    return std::sqrt(est.real());
}

PlancherelResult plancherel_residual(const Cone& cone, const MultiIndex& s,
                                     const ProfileFunction& f, const Element& y,
                                     const q::QuadratureSpec& spec) {
    if (!in_cone(cone, y))
        throw std::domain_error("plancherel_residual: y outside the open cone");
    PwSynthesis synth(cone, s, f, spec);
    PlancherelResult out;
    if (spec.scheme == q::Scheme::monte_carlo) {
        double box = 10.0 * max_eigenvalue(cone, add(y, f.decay_anchor()));
        out.lhs = synth.slice_l2_monte_carlo(y, spec.sample_count, spec.seed, box);
    } else {
        q::QuadratureSpec slab = spec;
        slab.nodes_per_axis = std::max<std::size_t>(48, spec.nodes_per_axis);
        if (cone.kind() != ConeKind::halfline)
            slab.angular_nodes = std::max<std::size_t>(16, spec.angular_nodes);
        out.lhs = synth.slice_l2_tensor(y, slab);
    }
    MultiIndex s2 = 2.0 * star(s);
    const Element b = f.decay_anchor();
    double rate = 2.0 * trace_of(cone, add(y, b)) / double(cone.rank());
    q::QuadratureSpec sp = spec;
    sp.scheme = q::Scheme::tensor_gauss;
    sp.trunc_scale = spec.trunc_scale / rate;
    sp.alpha_min = std::max(-0.9, s2.rank() > 1 ? s2[1] : s2[0]);
    Element xi(cone.dim());
    auto est = q::integrate(
        q::Region::cone_region(cone),
        [&](std::span<const double> pt) -> Complex {
            xi.assign(pt.begin(), pt.end());
            double fv = f(cone, xi);
            return fv * fv * std::exp(-2.0 * trace_inner(cone, y, xi)) *
                   power_function(cone, s2, xi, /*rotated=*/true);
        },
        sp);
    out.rhs = est.real();
    out.ratio = out.lhs / out.rhs;
    return out;
}

EmbeddingResult embedding_ratio(const Cone& cone, const MultiIndex& s, double p,
                                double q_, const MultiIndex& nu,
                                const std::vector<ProfileFunction>& profiles,
                                const q::QuadratureSpec& spec,
                                const std::vector<double>& scales) {
    EmbeddingResult out;
    for (const ProfileFunction& f : profiles) {
        EmbeddingResult::PerProfile rec;
        rec.label = f.label;
        std::vector<double> lt, lr;
        for (double t : scales) {
            ProfileFunction ft = f.dilated(cone, t);
            AnalyticFunction F = make_pw_function(cone, s, ft, spec);
            NormResult an = mixed_norm(cone, F, p, q_, nu, spec);
            // hardy grid scaled with the dilation so its sup shortfall is
            // scale-invariant and cancels from the fitted exponent
            std::vector<Element> grid;
            for (const Element& g : default_t_grid(cone)) grid.push_back(scale(g, t));
            NormResult hn = hardy_mu_norm(cone, F, 2.0, s, grid, spec);
            if (an.infinite || !(hn.value > 0.0)) {
                rec.diverged = true;
                break;
            }
            double ratio = an.value / hn.value;
            if (t == 1.0) rec.base_ratio = ratio;
            lt.push_back(std::log(t));
            lr.push_back(std::log(ratio));
        }
        if (!rec.diverged && lt.size() >= 2) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < lt.size(); ++i) {
                sx += lt[i];
                sy += lr[i];
                sxx += lt[i] * lt[i];
                sxy += lt[i] * lr[i];
            }
            double n = double(lt.size());
            rec.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        }
        out.max_ratio = std::max(out.max_ratio, rec.base_ratio);
        out.profiles.push_back(std::move(rec));
    }
    return out;
}

quad::IntegralEstimate square_pw_coefficient(const Cone& cone, const MultiIndex& s,
                                             const ProfileFunction& f, const Element& u,
                                             const q::QuadratureSpec& spec) {
    if (!in_cone(cone, u))
        throw std::domain_error("square_pw_coefficient: u outside the open cone");
    MultiIndex ss = star(s);
    q::Region cap = q::Region::cap_region(cone, u);
    Element xi(cone.dim());
    return q::integrate(
        cap,
        [&](std::span<const double> pt) -> Complex {
            xi.assign(pt.begin(), pt.end());
            Element rest = sub(u, xi);
            return f(cone, rest) * f(cone, xi) *
                   power_function(cone, ss, scale(rest, 2.0), /*rotated=*/true) *
                   power_function(cone, ss, scale(xi, 2.0), /*rotated=*/true);
        },
        spec);
}

quad::IntegralEstimate square_pw_l2(const Cone& cone, const MultiIndex& s,
                                    const ProfileFunction& f,
                                    const q::QuadratureSpec& spec) {
    MultiIndex w = shift(2.0 * star(s), cone.dim_over_rank());
    const Element b = f.decay_anchor();
    double rate = trace_of(cone, b) / double(cone.rank());
    q::QuadratureSpec outer = spec;
    outer.trunc_scale = spec.trunc_scale / rate;
    outer.alpha_min = 1.0;  // g vanishes algebraically at the vertex
    Element u(cone.dim());
    return q::integrate(
        q::Region::cone_region(cone),
        [&](std::span<const double> pt) -> Complex {
            u.assign(pt.begin(), pt.end());
            double g = square_pw_coefficient(cone, s, f, u, spec).real();
            return g * g / power_function(cone, w, u, /*rotated=*/true);
        },
        outer);
}

Lemma8Result lemma8_membership(const Cone& cone, const MultiIndex& nu, double q_,
                               const ProfileFunction& f,
                               const q::QuadratureSpec& spec) {
    if (!(q_ >= 2.0)) throw std::invalid_argument("lemma8_membership: q >= 2 required");
    if (!less(cone.g0(), nu))
        throw std::invalid_argument("lemma8_membership: nu must exceed g0");
    Lemma8Result out;
    MultiIndex profile_weight = 2.0 * (1.0 - 1.0 / q_) * nu;
    out.profile_norm = h2mu_norm_via_profile(cone, profile_weight, f, spec);
    AnalyticFunction F = make_pw_function(cone, nu, f, spec);
    NormResult an = mixed_norm(cone, F, 2.0, q_, nu, spec);
    out.space_norm = an.value;
    out.finite = !an.infinite && std::isfinite(an.value);
    out.ratio = out.finite ? out.space_norm / out.profile_norm : 0.0;
    return out;
}

}  // namespace symcone
