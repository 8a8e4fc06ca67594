#include "symcone/cone_functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace symcone {

namespace {

quad::QuadratureSpec hinted(const quad::QuadratureSpec& spec, double alpha_gap,
                            double alpha_min) {
    quad::QuadratureSpec s = spec;
    s.alpha_gap = alpha_gap;
    s.alpha_min = alpha_min;
    return s;
}

}  // namespace

ConvergenceDomain gamma_domain(const Cone& cone) { return {cone.g0()}; }

void check_gamma_domain(const Cone& cone, const MultiIndex& s, const char* what) {
    if (s.rank() != cone.rank())
        throw std::invalid_argument(std::string(what) + ": multi-index rank mismatch");
    for (std::size_t j = 0; j < s.rank(); ++j) {
        double bound = double(j) * cone.peirce_d() / 2.0;
        if (!(s[j] > bound)) {
            std::ostringstream os;
            os << what << ": component " << j + 1 << " violates convergence (s_" << j + 1
               << " = " << s[j] << " <= " << bound << ")";
            throw std::domain_error(os.str());
        }
    }
}

double log_gamma_cone(const Cone& cone, const MultiIndex& s) {
    check_gamma_domain(cone, s, "gamma");
    double lg = 0.5 * double(cone.dim() - cone.rank()) * std::log(2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < s.rank(); ++j)
        lg += std::lgamma(s[j] - double(j) * cone.peirce_d() / 2.0);
    return lg;
}

double gamma_closed(const Cone& cone, const MultiIndex& s) {
    double lg = log_gamma_cone(cone, s);
    if (lg > 700.0) throw std::overflow_error("gamma_closed: value exceeds exp(700)");
    return std::exp(lg);
}

quad::IntegralEstimate gamma_integral(const Cone& cone, const MultiIndex& s,
                                      const quad::QuadratureSpec& spec) {
    check_gamma_domain(cone, s, "gamma_integral");
    const double nr = cone.dim_over_rank();
    quad::Region region = quad::Region::cone_region(cone);
    MultiIndex sm = shift(s, -nr);
    double a_min = sm[s.rank() - 1];
    quad::QuadratureSpec sp = hinted(spec, 0.0, a_min > -1.0 ? a_min : 0.0);
    Element xi(cone.dim());
    return quad::integrate(
        region,
        [&](std::span<const double> p) -> std::complex<double> {
            xi.assign(p.begin(), p.end());
            double dec = std::exp(-trace_of(cone, xi));
            return dec * power_function(cone, sm, xi);
        },
        sp);
}

double beta_closed(const Cone& cone, const MultiIndex& p, const MultiIndex& q) {
    check_gamma_domain(cone, p, "beta(p)");
    check_gamma_domain(cone, q, "beta(q)");
    double lg = log_gamma_cone(cone, p) + log_gamma_cone(cone, q) -
                log_gamma_cone(cone, p + q);
    if (lg > 700.0) throw std::overflow_error("beta_closed: value exceeds exp(700)");
    return std::exp(lg);
}

quad::IntegralEstimate beta_integral(const Cone& cone, const MultiIndex& p,
                                     const MultiIndex& q,
                                     const quad::QuadratureSpec& spec) {
    check_gamma_domain(cone, p, "beta_integral(p)");
    check_gamma_domain(cone, q, "beta_integral(q)");
    const double nr = cone.dim_over_rank();
    quad::Region region = quad::Region::cap_region(cone, cone.identity());
    MultiIndex pm = shift(p, -nr), qm = shift(q, -nr);
    Element x(cone.dim());
    Element e = cone.identity();
    return quad::integrate(
        region,
        [&](std::span<const double> pt) -> std::complex<double> {
            x.assign(pt.begin(), pt.end());
            return power_function(cone, pm, x) * power_function(cone, qm, sub(e, x));
        },
        spec);
}

quad::IntegralEstimate rotated_beta_integral(const Cone& cone, const MultiIndex& p,
                                             const MultiIndex& q, const Element& y,
                                             const quad::QuadratureSpec& spec) {
    check_gamma_domain(cone, p, "rotated_beta(p)");
    check_gamma_domain(cone, q, "rotated_beta(q)");
    if (!in_cone(cone, y))
        throw std::domain_error("rotated_beta_integral: y outside the open cone");
    const double nr = cone.dim_over_rank();
    quad::Region region = quad::Region::cap_region(cone, y);
    MultiIndex pm = shift(star(p), -nr), qm = shift(star(q), -nr);
    Element x(cone.dim());
    return quad::integrate(
        region,
        [&](std::span<const double> pt) -> std::complex<double> {
            x.assign(pt.begin(), pt.end());
            return power_function(cone, pm, x, /*rotated=*/true) *
                   power_function(cone, qm, sub(y, x), /*rotated=*/true);
        },
        spec);
}

quad::IntegralEstimate laplace_power(const Cone& cone, const MultiIndex& s,
                                     const Element& y,
                                     const quad::QuadratureSpec& spec) {
    check_gamma_domain(cone, s, "laplace_power");
    if (!in_cone(cone, y)) throw std::domain_error("laplace_power: y outside the open cone");
    const double nr = cone.dim_over_rank();
    quad::Region region = quad::Region::cone_region(cone);
    MultiIndex sm = shift(s, -nr);
    double a_min = sm[s.rank() - 1];
    // match the laguerre decay assumption to e^{-(y|xi)}
    double rate = trace_of(cone, y) / double(cone.rank());
    quad::QuadratureSpec sp = hinted(spec, 0.0, a_min > -1.0 ? a_min : 0.0);
    sp.trunc_scale = spec.trunc_scale / rate;
    Element xi(cone.dim());
    return quad::integrate(
        region,
        [&](std::span<const double> p) -> std::complex<double> {
            xi.assign(p.begin(), p.end());
            double dec = std::exp(-trace_inner(cone, y, xi));
            return dec * power_function(cone, sm, xi);
        },
        sp);
}

double laplace_power_expected(const Cone& cone, const MultiIndex& s, const Element& y) {
    return gamma_closed(cone, s) * power_function(cone, s, inverse(cone, y));
}

}  // namespace symcone
