#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "symcone/cone.hpp"

using namespace symcone;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double norm2(const Element& x) {
    double s = 0;
    for (double c : x) s += c * c;
    return std::sqrt(s);
}

Element random_cone_point(const Cone& cone, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.1, 4.0);
    if (cone.kind() == ConeKind::halfline) return {unif(rng)};
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    Element x(cone.dim());
    double lam1 = unif(rng), lam2 = unif(rng);
    if (lam1 < lam2) std::swap(lam1, lam2);
    Element bar(cone.dim() - 1);
    double n = 0;
    for (auto& c : bar) {
        c = dir(rng);
        n += c * c;
    }
    n = std::sqrt(n);
    x[0] = 0.5 * (lam1 + lam2);
    for (std::size_t i = 1; i < x.size(); ++i)
        x[i] = 0.5 * (lam1 - lam2) * bar[i - 1] / (n > 0 ? n : 1.0);
    return x;
}

}  // namespace

TEST_CASE("descriptor structure constants") {
    Cone h = Cone::halfline();
    CHECK(h.rank() == 1);
    CHECK(h.peirce_d() == 0.0);
    CHECK(h.g0() == MultiIndex{0.0});

    Cone l3 = Cone::lorentz(3);
    CHECK(l3.rank() == 2);
    CHECK(l3.peirce_d() == doctest::Approx(1.0));
    CHECK(l3.g0() == MultiIndex{0.0, 0.5});
    // (r-1) d/2 = n/r - 1
    CHECK((l3.rank() - 1) * l3.peirce_d() / 2.0 ==
          doctest::Approx(l3.dim_over_rank() - 1.0));

    Cone l5 = Cone::lorentz(5);
    CHECK(l5.peirce_d() == doctest::Approx(3.0));
    CHECK((l5.rank() - 1) * l5.peirce_d() / 2.0 ==
          doctest::Approx(l5.dim_over_rank() - 1.0));

    CHECK_THROWS(Cone::lorentz(3, {0.5, 0.5}));  // not unit
}

TEST_CASE("jordan product") {
    Cone h = Cone::halfline();
    CHECK(jordan_product(h, {3.0}, {4.0})[0] == doctest::Approx(12.0));

    Cone l = Cone::lorentz(3);
    Element e = l.identity();
    Element x{2.0, 1.0, 0.0};
    Element ex = jordan_product(l, e, x);
    CHECK(ex[0] == doctest::Approx(2.0));
    CHECK(ex[1] == doctest::Approx(1.0));
    CHECK(ex[2] == doctest::Approx(0.0));
    Element xx = jordan_product(l, x, x);
    CHECK(xx[0] == doctest::Approx(5.0));
    CHECK(xx[1] == doctest::Approx(4.0));
    CHECK(xx[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(jordan_product(l, {1.0}, x), std::invalid_argument);
}

TEST_CASE("trace form") {
    Cone l = Cone::lorentz(3);
    Element e = l.identity();
    CHECK(trace_inner(l, e, e) == doctest::Approx(2.0));
    CHECK(trace_inner(l, {2.0, 1.0, 0.0}, e) == doctest::Approx(4.0));
    Cone h = Cone::halfline();
    CHECK(trace_inner(h, {3.0}, {4.0}) == doctest::Approx(12.0));
}

TEST_CASE("spectral decomposition on stated points") {
    Cone l = Cone::lorentz(3);
    auto sd = spectral(l, l.identity());
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(sd.eigenvalues[1] == doctest::Approx(1.0));

    auto sd2 = spectral(l, {2.0, 1.0, 0.0});
    CHECK(sd2.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(sd2.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(sd2.idempotents[0][0] == doctest::Approx(0.5));
    CHECK(sd2.idempotents[0][1] == doctest::Approx(0.5));
    CHECK(sd2.idempotents[1][1] == doctest::Approx(-0.5));
    // x = 3 c1 + 1 c2
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(3.0 * sd2.idempotents[0][i] + sd2.idempotents[1][i] ==
              doctest::Approx(Element{2.0, 1.0, 0.0}[i]));

    Cone h = Cone::halfline();
    CHECK(spectral(h, {5.0}).eigenvalues[0] == doctest::Approx(5.0));
}

TEST_CASE("determinant and homogeneity") {
    Cone l = Cone::lorentz(3);
    CHECK(determinant(l, {2.0, 1.0, 0.0}) == doctest::Approx(3.0));
    CHECK(determinant(l, l.identity()) == doctest::Approx(1.0));
    CHECK(determinant(l, {4.0, 2.0, 0.0}) == doctest::Approx(12.0));
}

TEST_CASE("principal and rotated minors") {
    Cone l = Cone::lorentz(3);  // u = (1,0)
    Element x{2.0, 1.0, 0.0};
    CHECK(principal_minor(l, 1, x) == doctest::Approx(3.0));
    CHECK(rotated_minor(l, 1, x) == doctest::Approx(1.0));
    CHECK(principal_minor(l, 2, x) == doctest::Approx(3.0));
    CHECK(principal_minor(l, 1, l.identity()) == doctest::Approx(1.0));
    CHECK_THROWS_AS(principal_minor(l, 3, x), std::out_of_range);

    // Peirce projection oracle: Delta_1(x) = (x|c1)/(c1|c1)
    auto sd = spectral(l, l.identity());
    Element c1{0.5, 0.5, 0.0};
    CHECK(principal_minor(l, 1, x) ==
          doctest::Approx(trace_inner(l, x, c1) / trace_inner(l, c1, c1)));
}

TEST_CASE("power function") {
    Cone l = Cone::lorentz(3);
    Element x{2.0, 1.0, 0.0};
    CHECK(power_function(l, {2.0, 1.5}, l.identity()) == doctest::Approx(1.0));
    CHECK(power_function(l, {2.0, 2.0}, x) == doctest::Approx(9.0));
    CHECK(power_function(l, {1.0, 0.0}, x) == doctest::Approx(3.0));
    Element outside{1.0, 2.0, 0.0};
    MultiIndex s10{1.0, 0.0};
    CHECK_THROWS_AS(power_function(l, s10, outside), std::domain_error);
}

TEST_CASE("inverse") {
    Cone l = Cone::lorentz(3);
    Element inv = inverse(l, {2.0, 1.0, 0.0});
    CHECK(inv[0] == doctest::Approx(2.0 / 3.0));
    CHECK(inv[1] == doctest::Approx(-1.0 / 3.0));
    Element e = inverse(l, l.identity());
    CHECK(e[0] == doctest::Approx(1.0));
    Cone h = Cone::halfline();
    CHECK(inverse(h, {4.0})[0] == doctest::Approx(0.25));
    Element singular{1.0, 1.0, 0.0};
    CHECK_THROWS_AS(inverse(l, singular), std::domain_error);
}

TEST_CASE("in_cone and minor characterization") {
    Cone l = Cone::lorentz(3);
    CHECK_FALSE(in_cone(l, {1.0, 2.0, 0.0}));
    CHECK(in_cone(l, {2.0, 1.0, 0.0}));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        Element x{u(rng), u(rng), u(rng)};
        bool minors = principal_minor(l, 1, x) > 0 && principal_minor(l, 2, x) > 0;
        CHECK(in_cone(l, x) == minors);
    }
}

TEST_CASE("wallach membership") {
    Cone l = Cone::lorentz(3);
    CHECK(in_wallach(l, {0.0, 0.0}));
    CHECK(in_wallach(l, {1.0, 1.5}));   // u = (1, 1)
    CHECK(in_wallach(l, {1.0, 0.5}));   // u = (1, 0)
    CHECK_FALSE(in_wallach(l, {1.0, 0.4}));
    CHECK(in_wallach(l, {0.0, 0.3}));   // u = (0, 0.3)
    CHECK_FALSE(in_wallach(l, {-0.1, 0.0}));
    Cone h = Cone::halfline();
    CHECK(in_wallach(h, {2.0}));
    CHECK_FALSE(in_wallach(h, {-0.5}));
}

TEST_CASE("frame laws on lorentz") {
    Cone l = Cone::lorentz(3);
    auto sd = spectral(l, {2.0, 1.0, 0.5});
    const Element &c1 = sd.idempotents[0], &c2 = sd.idempotents[1];
    Element c1c1 = jordan_product(l, c1, c1);
    Element c1c2 = jordan_product(l, c1, c2);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(c1c1[i] == doctest::Approx(c1[i]).epsilon(1e-12));
        CHECK(std::abs(c1c2[i]) < 1e-12);
        CHECK(c1[i] + c2[i] == doctest::Approx(l.identity()[i]).epsilon(1e-12));
    }
    CHECK(trace_of(l, c1) == doctest::Approx(1.0));
}

TEST_CASE("algebra property sweep: 1000 random points") {
    std::mt19937_64 rng(42);
    for (const Cone& cone : {Cone::halfline(), Cone::lorentz(3), Cone::lorentz(4)}) {
        for (int trial = 0; trial < 1000; ++trial) {
            Element x = random_cone_point(cone, rng);
            auto sd = spectral(cone, x);
            // reconstruction
            Element rec(cone.dim(), 0.0);
            double prod = 1.0, sum = 0.0;
            for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
                prod *= sd.eigenvalues[i];
                sum += sd.eigenvalues[i];
                for (std::size_t c = 0; c < rec.size(); ++c)
                    rec[c] += sd.eigenvalues[i] * sd.idempotents[i][c];
            }
            CHECK(norm2(sub(rec, x)) / norm2(x) < 1e-12);
            CHECK(rel_diff(prod, determinant(cone, x)) < 1e-12);
            CHECK(rel_diff(sum, trace_of(cone, x)) < 1e-12);
            // inverse law
            Element xi = inverse(cone, x);
            Element ee = jordan_product(cone, x, xi);
            CHECK(norm2(sub(ee, cone.identity())) < 1e-12);
        }
    }
}

TEST_CASE("power homogeneity on random points") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ts(0.1, 10.0);
    Cone l = Cone::lorentz(3);
    MultiIndex s{1.7, 0.4};
    for (int i = 0; i < 200; ++i) {
        Element x = random_cone_point(l, rng);
        double t = ts(rng);
        double lhs = power_function(l, s, scale(x, t));
        double rhs = std::pow(t, s.sum()) * power_function(l, s, x);
        CHECK(rel_diff(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("rotated/fixed consistency under reflection through the frame axis") {
    Cone l = Cone::lorentz(3);  // u = (1,0)
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Element x = random_cone_point(l, rng);
        Element xr = x;
        xr[1] = -xr[1];  // negate the component along u
        CHECK(determinant(l, x) == doctest::Approx(determinant(l, xr)));
        CHECK(principal_minor(l, 1, xr) == doctest::Approx(rotated_minor(l, 1, x)));
        MultiIndex s{1.3, 0.6};
        CHECK(power_function(l, s, xr) ==
              doctest::Approx(power_function(l, s, x, /*rotated=*/true)));
    }
}

TEST_CASE("quadratic representation maps the cone and scales the determinant") {
    Cone l = Cone::lorentz(3);
    Element y{2.0, 0.5, 0.3};
    Element ysq = sqrt_element(l, y);
    Element img = quadratic_rep(l, ysq, l.identity());
    for (std::size_t i = 0; i < 3; ++i) CHECK(img[i] == doctest::Approx(y[i]));
    // det P(a) x = det(a)^2 det(x)
    Element x{1.5, 0.2, -0.4};
    CHECK(determinant(l, quadratic_rep(l, y, x)) ==
          doctest::Approx(determinant(l, y) * determinant(l, y) * determinant(l, x)));
}

TEST_CASE("cone parsing") {
    Cone c = parse_cone("lorentz:3:u=0,1");
    CHECK(c.frame_direction()[0] == doctest::Approx(0.0));
    CHECK(c.frame_direction()[1] == doctest::Approx(1.0));
    Cone c2 = parse_cone("lorentz:4");
    CHECK(c2.dim() == 4);
    CHECK(parse_cone("halfline").kind() == ConeKind::halfline);
    CHECK_THROWS(parse_cone("cube"));
    // normalization
    Cone c3 = parse_cone("lorentz:3:u=2,0");
    CHECK(c3.frame_direction()[0] == doctest::Approx(1.0));
}
