#include "symcone/multiindex.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace symcone {

MultiIndex MultiIndex::constant(std::size_t r, double value) {
    return MultiIndex(std::vector<double>(r, value));
}

double MultiIndex::sum() const {
    return std::accumulate(e.begin(), e.end(), 0.0);
}

MultiIndex star(const MultiIndex& s) {
    MultiIndex out = s;
    std::reverse(out.e.begin(), out.e.end());
    return out;
}

MultiIndex shift(const MultiIndex& s, double a) {
    MultiIndex out = s;
    for (double& x : out.e) x += a;
    return out;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("multi-index rank mismatch");
    MultiIndex out = a;
    for (std::size_t j = 0; j < b.rank(); ++j) out.e[j] += b.e[j];
    return out;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("multi-index rank mismatch");
    MultiIndex out = a;
    for (std::size_t j = 0; j < b.rank(); ++j) out.e[j] -= b.e[j];
    return out;
}

MultiIndex operator*(double c, const MultiIndex& a) {
    MultiIndex out = a;
    for (double& x : out.e) x *= c;
    return out;
}

bool less(const MultiIndex& s, const MultiIndex& t) {
    if (s.rank() != t.rank()) throw std::invalid_argument("multi-index rank mismatch");
    for (std::size_t j = 0; j < s.rank(); ++j)
        if (!(s.e[j] < t.e[j])) return false;
    return true;
}

std::string to_string(const MultiIndex& s) {
    std::ostringstream os;
    for (std::size_t j = 0; j < s.rank(); ++j) {
        if (j) os << ',';
        os << s.e[j];
    }
    return os.str();
}

MultiIndex parse_multiindex(const std::string& text) {
    MultiIndex out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.e.push_back(std::stod(tok));
    }
    if (out.e.empty()) throw std::invalid_argument("empty multi-index: '" + text + "'");
    return out;
}

}  // namespace symcone
