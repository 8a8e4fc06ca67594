#include "symcone/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace symcone {

namespace q = quad;

double OperatorParams::sigma() const {
    double s = 0.0;
    for (double b : beta) s += b;
    return s / double(m);
}

bool OperatorParams::condition_c1() const {
    return sigma() > cone.dim_over_rank() - 1.0;
}

bool OperatorParams::condition_c2() const {
    double nr1 = cone.dim_over_rank() - 1.0;
    double nmin = *std::min_element(nu.begin(), nu.end());
    if (nr1 == 0.0) return nmin > 0.0;  // quotient treated as +inf
    return p < 1.0 + double(m) * (nmin / nr1 - 1.0);
}

bool OperatorParams::condition_c3() const {
    double nr = cone.dim_over_rank();
    double inv_pp = p > 1.0 ? (p - 1.0) / p : 0.0;  // 1/p'
    double s = sigma();
    for (std::size_t j = 0; j < m; ++j) {
        double need = inv_pp * s - nr / p + double(m) / p * (2.0 * nr - 1.0 + nu[j]);
        if (!(beta[j] > need)) return false;
        // existence of the splitting exponents behind the kernel bound
        if (!(inv_pp * (s + 2.0 * nr - 1.0) < nr + beta[j])) return false;
    }
    return true;
}

bool OperatorParams::admissible() const {
    return condition_c1() && condition_c2() && condition_c3();
}

bool in_tau(const Cone& cone, double p, double q_, double nu) {
    double nr = cone.dim_over_rank();
    double edge = nr - 1.0;  // max component of g0 and of g0*
    if (!(nu > edge)) return false;
    if (!(p > 1.0)) return false;
    double pp = p / (p - 1.0);
    if (!(pp * (nu + nr) > 2.0 * nr - 1.0)) return false;  // slice integrability
    if (!(q_ > 1.0)) return true;
    double qq = q_ / (q_ - 1.0);
    double w = nu + (qq / pp) * nr - qq * (nu + nr);
    return w < -edge;
}

bool in_sigma(const Cone& cone, double nu, double p) { return in_tau(cone, p, p, nu); }

bool beta_sufficiently_large(const Cone& cone, double beta, double p, double q_,
                             double nu, double margin) {
    return in_tau(cone, p, q_, nu) && beta - margin >= nu &&
           in_tau(cone, p, q_, beta - margin);
}

// ---------------------------------------------------------------------------

namespace {

q::QuadratureSpec outer_spec(const q::QuadratureSpec& spec) {
    q::QuadratureSpec s = spec;
    s.cone_map = q::AxisMap::exp_sinh;
    return s;
}

std::vector<double> mean_center(const std::vector<TubePoint>& zs, std::size_t dim) {
    std::vector<double> c(dim, 0.0);
    if (zs.empty()) return c;
    for (const auto& z : zs)
        for (std::size_t i = 0; i < dim; ++i) c[i] += z.x[i];
    for (double& v : c) v /= double(zs.size());
    return c;
}

// memoized values of P_nu f at repeated tube nodes
struct ProjectionCache {
    const Cone& cone;
    double nu;
    const AnalyticFunction& f;
    const q::QuadratureSpec& spec;
    std::map<std::vector<double>, Complex> memo;

    Complex operator()(const TubePoint& z) {
        std::vector<double> key;
        key.reserve(2 * z.x.size());
        key.insert(key.end(), z.x.begin(), z.x.end());
        key.insert(key.end(), z.y.begin(), z.y.end());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Complex v = bergman_project(cone, nu, f, z, spec);
        memo.emplace(std::move(key), v);
        return v;
    }
};

}  // namespace

quad::IntegralEstimate tube_integral(const Cone& cone,
                                     const std::function<Complex(const TubePoint&)>& g,
                                     const MultiIndex& weight, const Element& anchor,
                                     const q::QuadratureSpec& spec) {
    q::Region outer = q::Region::cone_region(cone);
    q::QuadratureSpec ospec = outer_spec(spec);
    Element slab_anchor = anchor.size() == cone.dim() ? anchor : cone.identity();
    TubePoint z{std::vector<double>(cone.dim(), 0.0), Element(cone.dim(), 0.0)};
    return q::integrate(
        outer,
        [&](std::span<const double> pt) -> Complex {
            z.y.assign(pt.begin(), pt.end());
            double wpow = power_function(cone, weight, z.y);
            if (wpow == 0.0 || !std::isfinite(wpow)) return 0.0;
            q::Region slab = q::Region::slab_region(cone, add(z.y, slab_anchor));
            auto inner = q::integrate(
                slab,
                [&](std::span<const double> xpt) -> Complex {
                    std::copy(xpt.begin(), xpt.end(), z.x.begin());
                    return g(z);
                },
                spec);
            return inner.value * wpow;
        },
        ospec);
}

Complex bergman_project(const Cone& cone, double nu, const AnalyticFunction& f,
                        const TubePoint& z, const q::QuadratureSpec& spec) {
    if (!(nu > cone.dim_over_rank() - 1.0))
        throw std::domain_error("bergman_project: nu must exceed n/r - 1");
    const double nr = cone.dim_over_rank();
    MultiIndex weight = MultiIndex::constant(cone.rank(), nu - nr);
    q::Region outer = q::Region::cone_region(cone);
    q::QuadratureSpec ospec = outer_spec(spec);
    Element anchor = f.anchor.size() == cone.dim() ? f.anchor : cone.identity();
    TubePoint w{std::vector<double>(cone.dim(), 0.0), Element(cone.dim(), 0.0)};
    auto est = q::integrate(
        outer,
        [&](std::span<const double> pt) -> Complex {
            w.y.assign(pt.begin(), pt.end());
            double wpow = power_function(cone, weight, w.y);
            if (wpow == 0.0 || !std::isfinite(wpow)) return 0.0;
            q::Region slab = q::Region::slab_region(cone, add(w.y, anchor), z.x);
            auto inner = q::integrate(
                slab,
                [&](std::span<const double> xpt) -> Complex {
                    std::copy(xpt.begin(), xpt.end(), w.x.begin());
                    return bergman_kernel(cone, nu, z, w) * f.eval(w);
                },
                spec);
            return inner.value * wpow;
        },
        ospec);
    return est.value;
}

Complex t_beta_apply(const OperatorParams& params,
                     const std::vector<AnalyticFunction>& fs,
                     const std::vector<TubePoint>& zs, const q::QuadratureSpec& spec) {
    if (fs.size() != params.m || zs.size() != params.m)
        throw std::invalid_argument("t_beta_apply: tuple length mismatch");
    const Cone& cone = params.cone;
    const double nr = cone.dim_over_rank();
    MultiIndex weight = MultiIndex::constant(cone.rank(), params.sigma() - nr);
    std::vector<double> center = mean_center(zs, cone.dim());
    q::Region outer = q::Region::cone_region(cone);
    q::QuadratureSpec ospec = outer_spec(spec);
    TubePoint w{std::vector<double>(cone.dim(), 0.0), Element(cone.dim(), 0.0)};
    auto est = q::integrate(
        outer,
        [&](std::span<const double> pt) -> Complex {
            w.y.assign(pt.begin(), pt.end());
            double wpow = power_function(cone, weight, w.y);
            if (wpow == 0.0 || !std::isfinite(wpow)) return 0.0;
            q::Region slab =
                q::Region::slab_region(cone, add(w.y, cone.identity()), center);
            auto inner = q::integrate(
                slab,
                [&](std::span<const double> xpt) -> Complex {
                    std::copy(xpt.begin(), xpt.end(), w.x.begin());
                    Complex val = 1.0;
                    for (std::size_t j = 0; j < params.m; ++j) {
                        val *= fs[j].eval(w);
                        val *= complex_power(cone, kernel_argument(zs[j], w),
                                             -(nr + params.beta[j]) / double(params.m));
                    }
                    return val;
                },
                spec);
            return inner.value * wpow;
        },
        ospec);
    return est.value;
}

Complex s_beta_apply(const OperatorParams& params, int k,
                     const std::vector<AnalyticFunction>& fs,
                     const std::vector<TubePoint>& zs, const q::QuadratureSpec& spec) {
    if (fs.size() != params.m || zs.size() != params.m)
        throw std::invalid_argument("s_beta_apply: tuple length mismatch");
    if (k >= 0 && std::size_t(k) >= params.m)
        throw std::out_of_range("s_beta_apply: k out of range");
    const Cone& cone = params.cone;
    const double nr = cone.dim_over_rank();
    MultiIndex weight = MultiIndex::constant(cone.rank(), params.sigma() - nr);
    std::vector<ProjectionCache> proj;
    proj.reserve(params.m);
    for (std::size_t j = 0; j < params.m; ++j)
        proj.push_back(ProjectionCache{cone, params.nu[j], fs[j], spec, {}});
    std::vector<double> center = mean_center(zs, cone.dim());
    q::Region outer = q::Region::cone_region(cone);
    q::QuadratureSpec ospec = outer_spec(spec);
    TubePoint w{std::vector<double>(cone.dim(), 0.0), Element(cone.dim(), 0.0)};
    auto est = q::integrate(
        outer,
        [&](std::span<const double> pt) -> Complex {
            w.y.assign(pt.begin(), pt.end());
            double wpow = power_function(cone, weight, w.y);
            if (wpow == 0.0 || !std::isfinite(wpow)) return 0.0;
            q::Region slab =
                q::Region::slab_region(cone, add(w.y, cone.identity()), center);
            auto inner = q::integrate(
                slab,
                [&](std::span<const double> xpt) -> Complex {
                    std::copy(xpt.begin(), xpt.end(), w.x.begin());
                    Complex kernels = 1.0;
                    for (std::size_t j = 0; j < params.m; ++j)
                        kernels *=
                            complex_power(cone, kernel_argument(zs[j], w),
                                          -(nr + params.beta[j]) / double(params.m));
                    Complex mid = 0.0;
                    for (std::size_t kk = 0; kk < params.m; ++kk) {
                        if (k >= 0 && std::size_t(k) != kk) continue;
                        Complex term = fs[kk].eval(w);
                        for (std::size_t j = 0; j < params.m; ++j)
                            if (j != kk) term *= proj[j](w);
                        mid += term;
                    }
                    return mid * kernels;
                },
                spec);
            return inner.value * wpow;
        },
        ospec);
    return est.value;
}

// ---------------------------------------------------------------------------
// norm-ratio experiments

namespace {

struct Stage {
    double value = 0.0;
    bool diverged = false;
};

Stage j_constant(const Cone& cone, double alpha, const q::QuadratureSpec& spec) {
    Stage st;
    MultiIndex a = MultiIndex::constant(cone.rank(), alpha);
    try {
        st.value = J_alpha(cone, a, cone.identity(), spec).real();
    } catch (const std::domain_error&) {
        st.diverged = true;
    }
    return st;
}

// W(y) = int Delta^{nu - n/r}(t) Delta^{n/r - alpha}(t + y) dt
double w_factor(const Cone& cone, double nu, double alpha, const Element& y,
                const q::QuadratureSpec& spec) {
    const double nr = cone.dim_over_rank();
    MultiIndex svec = MultiIndex::constant(cone.rank(), nu - nr);
    double bexp = nr - alpha;
    q::QuadratureSpec sp = outer_spec(spec);
    Element t(cone.dim());
    auto est = q::integrate(
        q::Region::cone_region(cone),
        [&](std::span<const double> pt) -> Complex {
            t.assign(pt.begin(), pt.end());
            double a = power_function(cone, svec, t);
            if (a == 0.0) return 0.0;
            double det = determinant(cone, add(t, y));
            double b = bexp * std::log(det);
            double lg = std::log(a) + b;
            return lg < -700.0 ? 0.0 : std::exp(lg);
        },
        sp);
    return est.real();
}

Stage w_probe(const Cone& cone, double nu, double alpha, const q::QuadratureSpec& spec) {
    Stage st;
    const double nr = cone.dim_over_rank();
    try {
        auto pr = weighted_cone_integral(
            cone, MultiIndex::constant(cone.rank(), nr - alpha),
            MultiIndex::constant(cone.rank(), nu), cone.identity(), spec);
        st.value = pr.estimate.real();
        st.diverged = pr.diverged;
    } catch (const std::domain_error&) {
        st.diverged = true;
    }
    return st;
}

// slab integral of prod_j |f_j(x+iy)| in log space; entries listed in proj
// (other than direct_k) are replaced by their projections
double product_slab_integral(const Cone& cone, const std::vector<AnalyticFunction>& fs,
                             const Element& y, const q::QuadratureSpec& spec,
                             const std::vector<ProjectionCache*>& proj = {},
                             std::size_t direct_k = SIZE_MAX) {
    Element anchor = y;
    for (const auto& f : fs)
        if (f.anchor.size() == anchor.size()) anchor = add(anchor, f.anchor);
    q::Region slab = q::Region::slab_region(cone, anchor);
    TubePoint z{std::vector<double>(cone.dim(), 0.0), y};
    auto est = q::integrate(
        slab,
        [&](std::span<const double> pt) -> Complex {
            std::copy(pt.begin(), pt.end(), z.x.begin());
            double lg = 0.0;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                double a = (!proj.empty() && j != direct_k) ? std::abs((*proj[j])(z))
                                                            : std::abs(fs[j].eval(z));
                if (a <= 0.0) return 0.0;
                lg += std::log(a);
            }
            return lg < -700.0 ? 0.0 : std::exp(lg);
        },
        spec);
    return est.real();
}

double lp_weighted_integral(const Cone& cone, const AnalyticFunction& f, double power,
                            double w, const q::QuadratureSpec& spec) {
    const double nr = cone.dim_over_rank();
    MultiIndex weight = MultiIndex::constant(cone.rank(), w - nr);
    auto est = tube_integral(
        cone,
        [&](const TubePoint& z) -> Complex {
            double a = std::abs(f.eval(z));
            return a > 0.0 ? std::exp(power * std::log(a)) : 0.0;
        },
        weight, f.anchor, spec);
    return est.real();
}

struct SweepAccumulator {
    std::vector<double> ratios;

    double drift() const {
        if (ratios.size() < 2) return 0.0;
        double lo = *std::min_element(ratios.begin(), ratios.end());
        double hi = *std::max_element(ratios.begin(), ratios.end());
        double mid = ratios[ratios.size() / 2];
        return mid > 0 ? (hi - lo) / mid : 0.0;
    }
    bool monotone() const {
        if (ratios.size() < 3) return false;
        bool inc = true, dec = true;
        for (std::size_t i = 1; i < ratios.size(); ++i) {
            inc = inc && ratios[i] >= ratios[i - 1];
            dec = dec && ratios[i] <= ratios[i - 1];
        }
        return inc || dec;
    }
};

// Tonelli pipeline shared by the thm1/thm7 experiments at p = 1: the
// positivized operator rearranges into one tube integral against the
// kernel-integrability factors J and W, each measured numerically with its
// own divergence probe.
void tonelli_cells(ExperimentSuite suite, const OperatorParams& params,
                   const FunctionTuple& tuple, const q::QuadratureSpec& spec,
                   const std::vector<double>& scales, ExperimentResult& out) {
    const Cone& cone = params.cone;
    const double nr = cone.dim_over_rank();
    const bool with_proj = suite == ExperimentSuite::thm7;
    if (params.p != 1.0)
        throw std::invalid_argument(
            "norm_ratio_experiment: the positivized rearrangement needs p = 1");
    if (with_proj && cone.kind() != ConeKind::halfline)
        throw std::invalid_argument("norm_ratio_experiment(thm7): halfline sample only");

    std::vector<double> alpha(params.m);
    for (std::size_t j = 0; j < params.m; ++j)
        alpha[j] = (nr + params.beta[j]) / double(params.m);

    double logK = 0.0;
    bool stage_div = false;
    for (std::size_t j = 0; j < params.m; ++j) {
        Stage kj = j_constant(cone, alpha[j], spec);
        Stage wj = w_probe(cone, params.nu[j], alpha[j], spec);
        if (kj.diverged || wj.diverged) {
            stage_div = true;
            std::ostringstream os;
            os << tuple.label << ": factor " << j + 1 << " stage divergence (J "
               << (kj.diverged ? "diverged" : "ok") << ", W "
               << (wj.diverged ? "diverged" : "ok") << ")";
            out.notes.push_back(os.str());
        }
        if (!kj.diverged) logK += std::log(std::max(kj.value, 1e-300));
    }
    if (stage_div) out.divergence_signature = true;

    q::QuadratureSpec ospec = outer_spec(spec);
    q::NodeSet outer = q::tensor_nodes(q::Region::cone_region(cone), ospec);
    MultiIndex sw = MultiIndex::constant(cone.rank(), params.sigma() - nr);

    SweepAccumulator sweep;
    for (double t : scales) {
        std::vector<AnalyticFunction> fs;
        for (const auto& f : tuple.fs) fs.push_back(dilate_function(f, t));
        std::vector<ProjectionCache> proj;
        std::vector<ProjectionCache*> pptr;
        if (with_proj) {
            proj.reserve(params.m);
            for (std::size_t j = 0; j < params.m; ++j)
                proj.push_back(ProjectionCache{cone, params.nu[j], fs[j], spec, {}});
            for (auto& pc : proj) pptr.push_back(&pc);
        }

        long double lhs_red = 0.0L;
        Element y(cone.dim());
        for (std::size_t i = 0; i < outer.size(); ++i) {
            auto pt = outer.point(i);
            y.assign(pt.begin(), pt.end());
            double X = 0.0;
            if (with_proj) {
                for (std::size_t kk = 0; kk < params.m; ++kk)
                    X += product_slab_integral(cone, fs, y, spec, pptr, kk);
            } else {
                X = product_slab_integral(cone, fs, y, spec);
            }
            if (X <= 0.0) continue;
            double lg = std::log(X) + std::log(power_function(cone, sw, y));
            for (std::size_t j = 0; j < params.m; ++j) {
                double Wj = w_factor(cone, params.nu[j], alpha[j], y, spec);
                if (Wj <= 0.0) {
                    lg = -std::numeric_limits<double>::infinity();
                    break;
                }
                lg += std::log(Wj);
            }
            if (std::isfinite(lg)) lhs_red += outer.weights[i] * std::exp(lg);
        }
        double lhs = double(lhs_red) * std::exp(logK);
        double rhs = 1.0;
        for (std::size_t k = 0; k < params.m; ++k) {
            if (with_proj) {
                rhs *= lp_weighted_integral(cone, fs[k], params.p, params.nu[k], spec);
            } else {
                // source norms carry the mp power (the scaling-consistent
                // reading of the product-space statement)
                double wk = double(params.m) * params.nu[k] +
                            double(params.m - 1) * nr;
                rhs *= std::pow(
                    lp_weighted_integral(cone, fs[k], double(params.m) * params.p, wk,
                                         spec),
                    1.0 / double(params.m));
            }
        }
        ExperimentCell cell;
        cell.label = tuple.label;
        cell.dilation = t;
        cell.lhs = lhs;
        cell.rhs = rhs;
        cell.ratio = rhs > 0 ? lhs / rhs : std::numeric_limits<double>::infinity();
        cell.diverged = stage_div;
        out.max_ratio = std::max(out.max_ratio, cell.ratio);
        sweep.ratios.push_back(cell.ratio);
        out.cells.push_back(std::move(cell));
    }
    out.max_drift = std::max(out.max_drift, sweep.drift());
    if (sweep.drift() > 0.10 && sweep.monotone()) out.divergence_signature = true;
}

void boxes_cells(const OperatorParams& params, const FunctionTuple& tuple,
                 const q::QuadratureSpec& spec, const std::vector<double>& scales,
                 ExperimentResult& out) {
    const Cone& cone = params.cone;
    const double nr = cone.dim_over_rank();
    const double p = params.p;
    const double q_ = 1.0;  // the mixed power of the box factor
    double nu0 = params.nu[0];
    for (const auto& f : tuple.fs)
        if (!f.has_box())
            throw std::invalid_argument("boxes experiment needs exact box images");
    SweepAccumulator sweep;
    for (double t : scales) {
        std::vector<AnalyticFunction> fs;
        for (const auto& f : tuple.fs) fs.push_back(dilate_function(f, t));
        const std::size_t mm = fs.size();
        double expo = double(mm) * (nu0 + nr) + q_ - 2.0 * nr;
        MultiIndex weight = MultiIndex::constant(cone.rank(), expo);
        std::vector<Complex> vals(mm);
        auto est = tube_integral(
            cone,
            [&](const TubePoint& z) -> Complex {
                for (std::size_t j = 0; j < mm; ++j) vals[j] = fs[j].eval(z);
                Complex box_sum = 0.0;
                for (std::size_t j = 0; j < mm; ++j) {
                    Complex term = fs[j].box_exact(z);
                    for (std::size_t k2 = 0; k2 < mm; ++k2)
                        if (k2 != j) term *= vals[k2];
                    box_sum += term;
                }
                double v = std::pow(std::abs(box_sum), q_);
                for (std::size_t j = 0; j < mm; ++j)
                    v *= std::pow(std::abs(vals[j]), p - q_);
                return v;
            },
            weight, fs[0].anchor, spec);
        double lhs = est.real();
        double rhs = std::pow(double(mm), q_);
        for (const auto& f : fs) {
            NormResult nres =
                mixed_norm(cone, f, p, p, MultiIndex::constant(cone.rank(), nu0), spec);
            rhs *= std::pow(nres.value, p);
        }
        ExperimentCell cell{tuple.label, t, lhs, rhs, lhs / rhs, false};
        out.max_ratio = std::max(out.max_ratio, cell.ratio);
        sweep.ratios.push_back(cell.ratio);
        out.cells.push_back(std::move(cell));
    }
    out.max_drift = std::max(out.max_drift, sweep.drift());
    if (sweep.drift() > 0.10 && sweep.monotone()) out.divergence_signature = true;
}

void lemma7_cells(const OperatorParams& params, const FunctionTuple& tuple,
                  const q::QuadratureSpec& spec, const std::vector<double>& scales,
                  ExperimentResult& out) {
    const Cone& cone = params.cone;
    const double nr = cone.dim_over_rank();
    SweepAccumulator sweep;
    for (double t : scales) {
        std::vector<AnalyticFunction> fs;
        for (const auto& f : tuple.fs) fs.push_back(dilate_function(f, t));
        double expo = double(params.m - 1) * nr - nr;
        for (double nk : params.nu) expo += nk;
        MultiIndex weight = MultiIndex::constant(cone.rank(), expo);
        auto est = tube_integral(
            cone,
            [&](const TubePoint& z) -> Complex {
                double lg = 0.0;
                for (const auto& f : fs) {
                    double a = std::abs(f.eval(z));
                    if (a <= 0.0) return 0.0;
                    lg += params.p * std::log(a);
                }
                return lg < -700.0 ? 0.0 : std::exp(lg);
            },
            weight, fs[0].anchor, spec);
        double rhs = 1.0;
        for (std::size_t k = 0; k < params.m; ++k) {
            NormResult nres = mixed_norm(
                cone, fs[k], params.p, params.p,
                MultiIndex::constant(cone.rank(), params.nu[k]), spec);
            rhs *= std::pow(nres.value, params.p);
        }
        ExperimentCell cell{tuple.label, t, est.real(), rhs, est.real() / rhs, false};
        out.max_ratio = std::max(out.max_ratio, cell.ratio);
        sweep.ratios.push_back(cell.ratio);
        out.cells.push_back(std::move(cell));
    }
    out.max_drift = std::max(out.max_drift, sweep.drift());
}

void prop_cells(ExperimentSuite suite, const OperatorParams& params,
                const FunctionTuple& tuple, const q::QuadratureSpec& spec,
                const std::vector<double>& scales, ExperimentResult& out) {
    const Cone& cone = params.cone;
    if (cone.kind() != ConeKind::halfline)
        throw std::invalid_argument("projection experiments: halfline sample only");
    const double nr = cone.dim_over_rank();
    const double ell = 2.0;  // iteration order
    SweepAccumulator sweep;
    for (double t : scales) {
        std::vector<AnalyticFunction> fs;
        for (const auto& f : tuple.fs) fs.push_back(dilate_function(f, t));
        double lhs = 0.0, rhs = 1.0;
        if (suite == ExperimentSuite::prop1) {
            ProjectionCache pc{cone, params.nu[0], fs[0], spec, {}};
            MultiIndex weight = MultiIndex::constant(
                cone.rank(), ell * params.nu[0] + (ell - 1.0) * nr - nr);
            auto est = tube_integral(
                cone,
                [&](const TubePoint& z) -> Complex {
                    return std::pow(std::abs(pc(z)), ell * params.p);
                },
                weight, fs[0].anchor, spec);
            lhs = std::pow(est.real(), 1.0 / (ell * params.p));
            MultiIndex w0 = MultiIndex::constant(cone.rank(), params.nu[0] - nr);
            auto rest = tube_integral(
                cone,
                [&](const TubePoint& z) -> Complex {
                    return std::pow(std::abs(fs[0].eval(z)), params.p);
                },
                w0, fs[0].anchor, spec);
            rhs = std::pow(rest.real(), 1.0 / params.p);
        } else {
            std::vector<ProjectionCache> proj;
            proj.reserve(params.m);
            for (std::size_t j = 0; j < params.m; ++j)
                proj.push_back(ProjectionCache{cone, params.nu[j], fs[j], spec, {}});
            double expo = -2.0 * nr;
            for (double nk : params.nu) expo += ell * (nk + nr);
            MultiIndex weight = MultiIndex::constant(cone.rank(), expo);
            auto est = tube_integral(
                cone,
                [&](const TubePoint& z) -> Complex {
                    double lg = 0.0;
                    for (std::size_t j = 0; j < params.m; ++j) {
                        double a = std::abs(proj[j](z));
                        if (a <= 0.0) return 0.0;
                        lg += ell * params.p * std::log(a);
                    }
                    return lg < -700.0 ? 0.0 : std::exp(lg);
                },
                weight, fs[0].anchor, spec);
            lhs = est.real();
            for (std::size_t k = 0; k < params.m; ++k) {
                MultiIndex wk = MultiIndex::constant(cone.rank(), params.nu[k] - nr);
                auto rest = tube_integral(
                    cone,
                    [&](const TubePoint& z) -> Complex {
                        return std::pow(std::abs(fs[k].eval(z)), params.p);
                    },
                    wk, fs[k].anchor, spec);
                rhs *= std::pow(rest.real(), ell);
            }
        }
        ExperimentCell cell{tuple.label, t, lhs, rhs, lhs / rhs, false};
        out.max_ratio = std::max(out.max_ratio, cell.ratio);
        sweep.ratios.push_back(cell.ratio);
        out.cells.push_back(std::move(cell));
    }
    out.max_drift = std::max(out.max_drift, sweep.drift());
}

}  // namespace

ExperimentResult norm_ratio_experiment(ExperimentSuite suite,
                                       const OperatorParams& params,
                                       const std::vector<FunctionTuple>& sample,
                                       const q::QuadratureSpec& spec,
                                       const std::vector<double>& scales) {
    if (sample.empty())
        throw std::invalid_argument("norm_ratio_experiment: empty function sample");
    ExperimentResult out;
    switch (suite) {
        case ExperimentSuite::thm1: out.suite = "thm1"; break;
        case ExperimentSuite::thm7: out.suite = "thm7"; break;
        case ExperimentSuite::boxes: out.suite = "boxes"; break;
        case ExperimentSuite::lemma7: out.suite = "lemma7"; break;
        case ExperimentSuite::prop1: out.suite = "prop1"; break;
        case ExperimentSuite::prop2: out.suite = "prop2"; break;
    }
    for (const FunctionTuple& tuple : sample) {
        switch (suite) {
            case ExperimentSuite::thm1:
            case ExperimentSuite::thm7:
                tonelli_cells(suite, params, tuple, spec, scales, out);
                break;
            case ExperimentSuite::boxes:
                boxes_cells(params, tuple, spec, scales, out);
                break;
            case ExperimentSuite::lemma7:
                lemma7_cells(params, tuple, spec, scales, out);
                break;
            case ExperimentSuite::prop1:
            case ExperimentSuite::prop2:
                prop_cells(suite, params, tuple, spec, scales, out);
                break;
        }
    }
    return out;
}

ReprResult reproducing_ratio_check(const OperatorParams& params, ReprFormula formula,
                                   const std::vector<AnalyticFunction>& fs,
                                   const std::vector<std::pair<TubePoint, TubePoint>>& pairs,
                                   const q::QuadratureSpec& spec) {
    const Cone& cone = params.cone;
    const double nr = cone.dim_over_rank();
    ReprResult out;
    if (pairs.empty()) {
        out.vacuous = true;
        return out;
    }

    for (const auto& [z1, z2] : pairs) {
        Complex lhs, rhs;
        if (formula == ReprFormula::repr2) {
            if (fs.size() != params.m)
                throw std::invalid_argument("repr2 needs an m-tuple of functions");
            std::vector<TubePoint> zs{z1, z2};
            zs.resize(params.m, z2);
            lhs = 1.0;
            for (std::size_t j = 0; j < params.m; ++j) lhs *= fs[j].eval(zs[j]);
            rhs = t_beta_apply(params, fs, zs, spec);
        } else if (formula == ReprFormula::prod) {
            if (fs.size() != params.m)
                throw std::invalid_argument("prod needs an m-tuple of functions");
            std::vector<TubePoint> zs{z1, z2};
            zs.resize(params.m, z2);
            lhs = 1.0;
            for (std::size_t j = 0; j < params.m; ++j)
                lhs *= bergman_project(cone, params.nu[j], fs[j], zs[j], spec);
            rhs = s_beta_apply(params, 0, fs, zs, spec);
        } else {
            // repr1 / rep: two-point representation through f * P_nu f with
            // the symmetric kernel exponent (n/r + beta)/2 on each factor
            const AnalyticFunction& f = fs.front();
            double nu0 = params.nu[0];
            double beta0 = params.beta[0];
            Complex p1 = bergman_project(cone, nu0, f, z1, spec);
            Complex p2 = bergman_project(cone, nu0, f, z2, spec);
            lhs = p1 * p2;
            ProjectionCache pc{cone, nu0, f, spec, {}};
            MultiIndex weight = MultiIndex::constant(cone.rank(), beta0 - nr);
            std::vector<double> center = mean_center({z1, z2}, cone.dim());
            q::Region outer = q::Region::cone_region(cone);
            q::QuadratureSpec ospec = outer_spec(spec);
            Element anchor = f.anchor.size() == cone.dim() ? f.anchor : cone.identity();
            TubePoint w{std::vector<double>(cone.dim(), 0.0), Element(cone.dim(), 0.0)};
            auto est = q::integrate(
                outer,
                [&](std::span<const double> pt) -> Complex {
                    w.y.assign(pt.begin(), pt.end());
                    double wpow = power_function(cone, weight, w.y);
                    if (wpow == 0.0 || !std::isfinite(wpow)) return 0.0;
                    q::Region slab =
                        q::Region::slab_region(cone, add(w.y, anchor), center);
                    auto inner = q::integrate(
                        slab,
                        [&](std::span<const double> xpt) -> Complex {
                            std::copy(xpt.begin(), xpt.end(), w.x.begin());
                            Complex k1 = complex_power(cone, kernel_argument(z1, w),
                                                       -0.5 * (nr + beta0));
                            Complex k2 = complex_power(cone, kernel_argument(z2, w),
                                                       -0.5 * (nr + beta0));
                            return f.eval(w) * pc(w) * k1 * k2;
                        },
                        spec);
                    return inner.value * wpow;
                },
                ospec);
            rhs = est.value;
        }
        if (std::abs(lhs) < 1e-14 * (1.0 + std::abs(rhs))) {
            ++out.skipped;
            continue;
        }
        out.pair_ratios.push_back(std::abs(rhs / lhs));
    }
    out.vacuous = out.pair_ratios.empty();
    if (!out.vacuous) {
        double mean = 0;
        for (double r : out.pair_ratios) mean += r;
        mean /= double(out.pair_ratios.size());
        double var = 0;
        for (double r : out.pair_ratios) var += (r - mean) * (r - mean);
        out.cv = std::sqrt(var / double(out.pair_ratios.size())) / mean;
    }
    return out;
}

}  // namespace symcone
