#include <stdexcept>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "symcone/cone_functions.hpp"

using namespace symcone;
namespace q = symcone::quad;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
}  // namespace

TEST_CASE("gamma_closed halfline reduces to the classical gamma") {
    Cone h = Cone::halfline();
    CHECK(gamma_closed(h, {3.0}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(gamma_closed(h, {0.5}) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    // recursion
    for (double s : {0.3, 1.1, 2.7, 6.0})
        CHECK(gamma_closed(h, {s + 1.0}) ==
              doctest::Approx(s * gamma_closed(h, {s})).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_closed(h, {-1.0}), std::domain_error);
}

TEST_CASE("gamma_closed lorentz(3) product form") {
    Cone l = Cone::lorentz(3);
    CHECK(gamma_closed(l, {2.0, 1.5}) == doctest::Approx(kSqrt2Pi).epsilon(1e-13));
    // sqrt(2 pi) Gamma(3) Gamma(1.5)
    CHECK(gamma_closed(l, {3.0, 2.0}) ==
          doctest::Approx(kSqrt2Pi * 2.0 * std::tgamma(1.5)).epsilon(1e-13));
    { MultiIndex bad{1.0, 0.4}; CHECK_THROWS_AS(gamma_closed(l, bad), std::domain_error); }
    { MultiIndex bad{1.0, 0.5}; CHECK_THROWS_AS(gamma_closed(l, bad), std::domain_error); }
}

TEST_CASE("gamma_integral matches gamma_closed: halfline") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    for (double s : {1.5, 2.0, 3.0}) {
        auto est = gamma_integral(h, {s}, spec);
        CHECK(std::abs(est.real() / gamma_closed(h, {s}) - 1.0) < 1e-10);
    }
}

TEST_CASE("gamma_integral matches gamma_closed: lorentz(3)") {
    Cone l = Cone::lorentz(3);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    spec.angular_nodes = 32;
    for (MultiIndex s : {MultiIndex{2.0, 1.5}, MultiIndex{3.0, 2.0}, MultiIndex{2.5, 1.0}}) {
        auto est = gamma_integral(l, s, spec);
        CHECK(std::abs(est.real() / gamma_closed(l, s) - 1.0) < 1e-4);
    }
}

TEST_CASE("beta identities") {
    Cone h = Cone::halfline();
    CHECK(beta_closed(h, {2.0}, {3.0}) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    // symmetry on random admissible pairs
    Cone l = Cone::lorentz(3);
    for (auto [p, qq] : {std::pair<MultiIndex, MultiIndex>{{2.0, 1.5}, {3.0, 1.0}},
                         {{1.5, 0.8}, {2.5, 2.0}}}) {
        CHECK(beta_closed(l, p, qq) == doctest::Approx(beta_closed(l, qq, p)));
    }
    // derived value: 2 pi / (sqrt(2 pi) Gamma(4) Gamma(2.5))
    double expect = 2.0 * kPi / (kSqrt2Pi * 6.0 * std::tgamma(2.5));
    CHECK(beta_closed(l, {2.0, 1.5}, {2.0, 1.5}) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("beta_integral against beta_closed") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    auto est = beta_integral(h, {2.0}, {3.0}, spec);
    CHECK(std::abs(est.real() * 12.0 - 1.0) < 1e-10);
    auto one = beta_integral(h, {1.0}, {1.0}, spec);
    CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-10));

    Cone l = Cone::lorentz(3);
    q::QuadratureSpec spec3;
    spec3.nodes_per_axis = 48;
    spec3.angular_nodes = 32;
    MultiIndex p{2.0, 1.5};
    auto est3 = beta_integral(l, p, p, spec3);
    CHECK(std::abs(est3.real() / beta_closed(l, p, p) - 1.0) < 1e-3);
}

TEST_CASE("rotated beta: ratio constancy and value at e") {
    Cone l = Cone::lorentz(3);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 40;
    spec.angular_nodes = 24;
    MultiIndex p{2.0, 1.5};
    MultiIndex ps = star(p);
    double b = beta_closed(l, ps, ps);
    MultiIndex expo = shift(ps + ps, -l.dim_over_rank());
    std::vector<Element> ys = {l.identity(), {2.0, 0, 0}, {2.0, 1.0, 0.0},
                               {1.5, 0.3, 0.6}, {3.0, -0.5, 1.0}};
    std::vector<double> ratios;
    for (const auto& y : ys) {
        auto est = rotated_beta_integral(l, p, p, y, spec);
        ratios.push_back(est.real() / power_function(l, expo, y, /*rotated=*/true));
    }
    CHECK(std::abs(ratios[0] / b - 1.0) < 1e-3);
    double mean = 0;
    for (double r : ratios) mean += r;
    mean /= ratios.size();
    double var = 0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    double cv = std::sqrt(var / ratios.size()) / mean;
    CHECK(cv < 0.005);
}

TEST_CASE("rotated beta on the halfline is the classical scaling") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    // F(y) = B(p,q) y^{p+q-1}
    for (double y : {1.0, 2.0, 0.5}) {
        auto est = rotated_beta_integral(h, {2.0}, {3.0}, {y}, spec);
        CHECK(est.real() ==
              doctest::Approx(std::pow(y, 4.0) / 12.0).epsilon(1e-10));
    }
}

TEST_CASE("laplace transform of the power function") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    auto est = laplace_power(h, {1.0}, {2.0}, spec);
    CHECK(est.real() == doctest::Approx(0.5).epsilon(1e-10));

    Cone l = Cone::lorentz(3);
    q::QuadratureSpec spec3;
    spec3.nodes_per_axis = 48;
    spec3.angular_nodes = 32;
    MultiIndex s{2.0, 1.5};
    for (Element y : {Element{1.0, 0, 0}, Element{2.0, 0, 0}, Element{2.0, 1.0, 0.0}}) {
        auto est3 = laplace_power(l, s, y, spec3);
        double expect = laplace_power_expected(l, s, y);
        CHECK(std::abs(est3.real() / expect - 1.0) < 1e-3);
    }
    // frozen reference values
    CHECK(laplace_power_expected(l, s, {1.0, 0, 0}) == doctest::Approx(kSqrt2Pi));
    CHECK(laplace_power_expected(l, s, {2.0, 0, 0}) ==
          doctest::Approx(kSqrt2Pi * std::pow(2.0, -3.5)).epsilon(1e-12));
}

TEST_CASE("laplace homogeneity in y") {
    Cone l = Cone::lorentz(3);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 40;
    spec.angular_nodes = 24;
    MultiIndex s{2.0, 1.0};
    Element y{1.5, 0.4, -0.2};
    auto base = laplace_power(l, s, y, spec);
    auto scaled = laplace_power(l, s, scale(y, 2.0), spec);
    CHECK(scaled.real() / base.real() ==
          doctest::Approx(std::pow(2.0, -s.sum())).epsilon(1e-6));
}
