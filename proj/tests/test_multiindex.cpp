#include <stdexcept>
#include "doctest.h"
#include "symcone/multiindex.hpp"

using namespace symcone;

TEST_CASE("star reverses and is an involution") {
    MultiIndex s{1.0, 2.0};
    CHECK(star(s) == MultiIndex{2.0, 1.0});
    CHECK(star(star(s)) == s);
    MultiIndex t{1.0, 2.0, 3.0};
    CHECK(star(t) == MultiIndex{3.0, 2.0, 1.0});
}

TEST_CASE("shift adds the scalar componentwise") {
    MultiIndex s{1.0, 2.0};
    CHECK(shift(s, 0.5) == MultiIndex{1.5, 2.5});
}

TEST_CASE("less is componentwise strict") {
    CHECK(less(MultiIndex{0.0, 0.4}, MultiIndex{0.1, 0.5}));
    CHECK_FALSE(less(MultiIndex{0.0, 0.5}, MultiIndex{0.1, 0.5}));
    CHECK_FALSE(less(MultiIndex{1.0, 0.0}, MultiIndex{0.5, 0.5}));
}

TEST_CASE("parse round trip") {
    MultiIndex s = parse_multiindex("2,1.5");
    CHECK(s.rank() == 2);
    CHECK(s[0] == doctest::Approx(2.0));
    CHECK(s[1] == doctest::Approx(1.5));
    CHECK(to_string(s) == "2,1.5");
    CHECK_THROWS_AS(parse_multiindex(""), std::invalid_argument);
}
