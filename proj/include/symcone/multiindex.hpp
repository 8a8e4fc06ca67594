#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace symcone {

/// Real exponent vector indexed by the rank of a cone.  Carries the s, nu,
/// beta parameters of power functions, weights and measures.
struct MultiIndex {
    std::vector<double> e;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<double> v) : e(std::move(v)) {}
    MultiIndex(std::initializer_list<double> v) : e(v) {}

    static MultiIndex constant(std::size_t r, double value);

    std::size_t rank() const { return e.size(); }
    double operator[](std::size_t j) const { return e[j]; }
    double& operator[](std::size_t j) { return e[j]; }

    double sum() const;

    bool operator==(const MultiIndex& o) const { return e == o.e; }
};

/// Reversal (t_1,...,t_r) -> (t_r,...,t_1).
MultiIndex star(const MultiIndex& s);

/// Componentwise shift by a scalar.
MultiIndex shift(const MultiIndex& s, double a);

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator*(double c, const MultiIndex& a);

/// Componentwise strict order: s < t iff s_j < t_j for every j.
bool less(const MultiIndex& s, const MultiIndex& t);

std::string to_string(const MultiIndex& s);

/// Parses "2,1.5" style comma lists.
MultiIndex parse_multiindex(const std::string& text);

}  // namespace symcone
