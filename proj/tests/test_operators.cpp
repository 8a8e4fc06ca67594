#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "symcone/operators.hpp"

using namespace symcone;
namespace q = symcone::quad;

namespace {
constexpr double kPi = std::numbers::pi;

AnalyticFunction scale_values(const AnalyticFunction& f, double c) {
    AnalyticFunction g = f;
    auto base = f.eval;
    g.eval = [base, c](const TubePoint& z) { return c * base(z); };
    if (f.box_exact) {
        auto bb = f.box_exact;
        g.box_exact = [bb, c](const TubePoint& z) { return c * bb(z); };
    }
    return g;
}
}  // namespace

TEST_CASE("operator parameter conditions") {
    Cone h = Cone::halfline();
    OperatorParams p1{h, 2, {6.0, 6.0}, {3.0, 3.0}, 1.0};
    CHECK(p1.condition_c1());
    CHECK(p1.condition_c2());  // n/r = 1 quotient treated as +inf
    CHECK_FALSE(p1.condition_c3());
    OperatorParams p2{h, 2, {8.0, 8.0}, {3.0, 3.0}, 1.0};
    CHECK(p2.admissible());

    Cone l = Cone::lorentz(3);
    OperatorParams q1{l, 2, {10.0, 10.0}, {3.0, 3.0}, 1.0};
    CHECK(q1.admissible());
    OperatorParams q2{l, 2, {6.0, 6.0}, {3.0, 3.0}, 1.0};
    CHECK(q2.condition_c1());
    CHECK_FALSE(q2.condition_c3());
    // c2 boundary on lorentz: p < 1 + m (min nu / (n/r - 1) - 1) = 11
    OperatorParams q3{l, 2, {10.0, 10.0}, {3.0, 3.0}, 10.9};
    CHECK(q3.condition_c2());
    q3.p = 11.1;
    CHECK_FALSE(q3.condition_c2());
}

TEST_CASE("kernel integrability predicates") {
    Cone h = Cone::halfline();
    CHECK(in_sigma(h, 1.0, 2.0));
    CHECK_FALSE(in_sigma(h, 1.0, 1.0));  // p' = inf excluded
    CHECK(in_tau(h, 2.0, 2.0, 1.0));
    CHECK_FALSE(in_tau(h, 2.0, 2.0, -0.5));
    Cone l = Cone::lorentz(3);
    CHECK(in_tau(l, 2.0, 2.0, 2.0));
    CHECK_FALSE(in_tau(l, 2.0, 2.0, 0.4));  // below the g0 edge
    CHECK(beta_sufficiently_large(h, 8.0, 2.0, 2.0, 1.0));
    CHECK_FALSE(beta_sufficiently_large(h, 1.2, 2.0, 2.0, 1.0));
}

TEST_CASE("bergman projection reproduces analytic members up to one constant") {
    Cone h = Cone::halfline();
    AnalyticFunction f = make_kernel_function(h, itimes({1.0}), 3.0);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    std::vector<TubePoint> zs = {itimes({1.0}), tube_point({0.5}, {0.5}),
                                 tube_point({-0.7}, {2.0}), tube_point({1.5}, {1.0}),
                                 tube_point({0.2}, {0.25})};
    std::vector<double> ratios;
    for (const auto& z : zs) {
        Complex pf = bergman_project(h, 1.0, f, z, spec);
        ratios.push_back(std::abs(pf / f.eval(z)));
        // kernel constant of the rank-1 tube with unit kernel constants
        CHECK(std::abs(pf / f.eval(z) - kPi) < 2e-3 * kPi);
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK((hi - lo) / lo < 1e-2);
}

TEST_CASE("projection is linear") {
    Cone h = Cone::halfline();
    AnalyticFunction f = make_kernel_function(h, itimes({1.0}), 3.0);
    AnalyticFunction g = make_kernel_function(h, tube_point({0.5}, {2.0}), 4.0);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 32;
    TubePoint z = tube_point({0.3}, {0.9});
    Complex pf = bergman_project(h, 1.0, f, z, spec);
    Complex pg = bergman_project(h, 1.0, g, z, spec);
    AnalyticFunction comb;
    comb.anchor = {1.0};
    auto fe = f.eval, ge = g.eval;
    comb.eval = [fe, ge](const TubePoint& zz) { return 2.0 * fe(zz) - 0.5 * ge(zz); };
    comb.label = "comb";
    Complex pc = bergman_project(h, 1.0, comb, z, spec);
    CHECK(std::abs(pc - (2.0 * pf - 0.5 * pg)) < 1e-10 * std::abs(pc));
}

TEST_CASE("t_beta with m = 1 is the weighted projection") {
    Cone h = Cone::halfline();
    AnalyticFunction f = make_kernel_function(h, itimes({1.0}), 4.0);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    OperatorParams params{h, 1, {2.0}, {2.0}, 1.0};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(-1.5, 1.5), uy(0.3, 2.5);
    for (int i = 0; i < 10; ++i) {
        TubePoint z = tube_point({ux(rng)}, {uy(rng)});
        Complex a = t_beta_apply(params, {f}, {z}, spec);
        Complex b = bergman_project(h, 2.0, f, z, spec);
        CHECK(std::abs(a - b) < 1e-8 * std::abs(b));
    }
}

TEST_CASE("t_beta symmetry for identical factors") {
    Cone h = Cone::halfline();
    AnalyticFunction f = make_kernel_function(h, itimes({1.0}), 3.0);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 40;
    OperatorParams params{h, 2, {6.0, 6.0}, {1.0, 1.0}, 1.0};
    TubePoint z1 = itimes({0.5}), z2 = tube_point({0.4}, {1.5});
    Complex a = t_beta_apply(params, {f, f}, {z1, z2}, spec);
    Complex b = t_beta_apply(params, {f, f}, {z2, z1}, spec);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("multipoint representation: ratio constancy over dyadic pairs") {
    Cone h = Cone::halfline();
    AnalyticFunction f = make_kernel_function(h, itimes({1.0}), 3.0);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    OperatorParams params{h, 2, {6.0, 6.0}, {1.0, 1.0}, 1.0};
    std::vector<std::pair<TubePoint, TubePoint>> pairs = {
        {itimes({0.5}), itimes({0.75})},
        {itimes({1.0}), itimes({1.5})},
        {itimes({2.0}), itimes({3.0})}};
    auto res = reproducing_ratio_check(params, ReprFormula::repr2, {f, f}, pairs, spec);
    REQUIRE_FALSE(res.vacuous);
    CHECK(res.cv < 1e-2);
}

TEST_CASE("s_beta: reduction, additivity and projection factor") {
    Cone h = Cone::halfline();
    AnalyticFunction f = make_kernel_function(h, itimes({1.0}), 3.0);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 32;
    OperatorParams one{h, 1, {4.0}, {1.0}, 1.0};
    TubePoint z = itimes({1.0});
    Complex sv = s_beta_apply(one, 0, {f}, {z}, spec);
    Complex tv = t_beta_apply(one, {f}, {z}, spec);
    CHECK(std::abs(sv - tv) < 1e-6 * std::abs(tv));

    OperatorParams two{h, 2, {6.0, 6.0}, {1.0, 1.0}, 1.0};
    std::vector<TubePoint> zs = {itimes({0.8}), tube_point({0.3}, {1.2})};
    Complex s0 = s_beta_apply(two, 0, {f, f}, zs, spec);
    Complex s1 = s_beta_apply(two, 1, {f, f}, zs, spec);
    Complex sall = s_beta_apply(two, -1, {f, f}, zs, spec);
    CHECK(std::abs(sall - (s0 + s1)) < 1e-10 * std::abs(sall));
    // analytic factors: each projection contributes the constant pi (nu = 1),
    // so S_{beta,k} = pi T_beta on this sample
    Complex t2 = t_beta_apply(two, {f, f}, zs, spec);
    CHECK(std::abs(s0 / (kPi * t2) - 1.0) < 1e-4);
}

TEST_CASE("two-point projection representation (rep): ratio constancy") {
    Cone h = Cone::halfline();
    AnalyticFunction f = make_kernel_function(h, itimes({1.0}), 3.0);
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 40;
    OperatorParams params{h, 1, {8.0}, {1.0}, 2.0};
    std::vector<std::pair<TubePoint, TubePoint>> pairs = {
        {itimes({0.5}), itimes({1.0})},
        {itimes({1.0}), itimes({2.0})},
        {itimes({2.0}), itimes({4.0})}};
    auto res = reproducing_ratio_check(params, ReprFormula::rep, {f}, pairs, spec);
    REQUIRE_FALSE(res.vacuous);
    CHECK(res.cv < 0.02);
    // degenerate: the zero function skips every pair
    AnalyticFunction zero;
    zero.anchor = {1.0};
    zero.label = "zero";
    zero.eval = [](const TubePoint&) { return Complex(0.0, 0.0); };
    auto vac = reproducing_ratio_check(params, ReprFormula::rep, {zero}, pairs, spec);
    CHECK(vac.vacuous);
    CHECK(vac.skipped == pairs.size());
}

TEST_CASE("thm1 experiment on the halfline: admissible vs violated") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 48;
    FunctionTuple tup;
    tup.fs = {make_kernel_function(h, itimes({1.0}), 9.5),
              make_kernel_function(h, itimes({1.5}), 10.0)};
    tup.label = "kernel-pair";
    std::vector<double> scales = {0.5, 1.0, 2.0};

    OperatorParams good{h, 2, {8.0, 8.0}, {3.0, 3.0}, 1.0};
    REQUIRE(good.admissible());
    auto res = norm_ratio_experiment(ExperimentSuite::thm1, good, {tup}, spec, scales);
    CHECK_FALSE(res.divergence_signature);
    CHECK(std::isfinite(res.max_ratio));
    CHECK(res.max_ratio > 0.0);
    CHECK(res.max_drift < 0.10);

    OperatorParams bad{h, 2, {6.0, 6.0}, {3.0, 3.0}, 1.0};
    REQUIRE_FALSE(bad.condition_c3());
    auto res2 = norm_ratio_experiment(ExperimentSuite::thm1, bad, {tup}, spec, scales);
    CHECK(res2.divergence_signature);
}

TEST_CASE("value scaling leaves experiment ratios invariant") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 32;
    FunctionTuple tup;
    tup.fs = {make_kernel_function(h, itimes({1.0}), 4.0),
              make_kernel_function(h, itimes({1.0}), 5.0)};
    tup.label = "pair";
    FunctionTuple scaled;
    scaled.fs = {scale_values(tup.fs[0], 3.7), scale_values(tup.fs[1], 3.7)};
    scaled.label = "scaled-pair";
    OperatorParams params{h, 2, {0.0, 0.0}, {2.0, 3.0}, 2.0};
    std::vector<double> scales = {1.0};
    auto a = norm_ratio_experiment(ExperimentSuite::lemma7, params, {tup}, spec, scales);
    auto b =
        norm_ratio_experiment(ExperimentSuite::lemma7, params, {scaled}, spec, scales);
    CHECK(a.cells[0].ratio == doctest::Approx(b.cells[0].ratio).epsilon(1e-10));
    CHECK(a.cells[0].ratio > 0.0);
}

TEST_CASE("box inequality experiment on the halfline") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 40;
    FunctionTuple tup;
    tup.fs = {make_kernel_function(h, itimes({1.0}), 3.0),
              make_kernel_function(h, itimes({1.0}), 4.0)};
    tup.label = "pair";
    OperatorParams params{h, 2, {0.0, 0.0}, {1.0, 1.0}, 2.0};
    auto res = norm_ratio_experiment(ExperimentSuite::boxes, params, {tup}, spec,
                                     {0.5, 1.0, 2.0});
    CHECK(std::isfinite(res.max_ratio));
    CHECK(res.max_ratio > 0.0);
    CHECK(res.max_drift < 0.10);
}

TEST_CASE("projection iteration experiments stay bounded on the sample") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    spec.nodes_per_axis = 24;
    FunctionTuple tup;
    tup.fs = {make_kernel_function(h, itimes({1.0}), 3.0)};
    tup.label = "single";
    OperatorParams params{h, 1, {4.0}, {1.0}, 2.0};
    auto p1 = norm_ratio_experiment(ExperimentSuite::prop1, params, {tup}, spec,
                                    {0.5, 1.0, 2.0});
    CHECK(std::isfinite(p1.max_ratio));
    CHECK(p1.max_ratio > 0.0);
    CHECK(p1.max_drift < 0.15);

    FunctionTuple pair;
    pair.fs = {make_kernel_function(h, itimes({1.0}), 3.0),
               make_kernel_function(h, itimes({1.5}), 4.0)};
    pair.label = "pair";
    OperatorParams params2{h, 2, {4.0, 4.0}, {1.0, 1.5}, 2.0};
    auto p2 = norm_ratio_experiment(ExperimentSuite::prop2, params2, {pair}, spec,
                                    {1.0, 2.0});
    CHECK(std::isfinite(p2.max_ratio));
    CHECK(p2.max_ratio > 0.0);
}

TEST_CASE("empty sample is rejected") {
    Cone h = Cone::halfline();
    q::QuadratureSpec spec;
    OperatorParams params{h, 1, {4.0}, {1.0}, 1.0};
    CHECK_THROWS_AS(
        norm_ratio_experiment(ExperimentSuite::thm1, params, {}, spec, {1.0}),
        std::invalid_argument);
}
