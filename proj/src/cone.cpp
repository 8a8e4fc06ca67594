#include "symcone/cone.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace symcone {

namespace {

void check_dim(const Cone& cone, const Element& x, const char* what) {
    if (x.size() != cone.dim()) {
        std::ostringstream os;
        os << what << ": element has dimension " << x.size() << ", cone expects "
           << cone.dim();
        throw std::invalid_argument(os.str());
    }
}

double norm_bar(const Element& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

double dot_bar(const Element& x, const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += x[i + 1] * u[i];
    return s;
}

}  // namespace

Cone::Cone(ConeKind k, std::size_t n, std::vector<double> u)
    : kind_(k), n_(n), frame_u_(std::move(u)) {
    if (kind_ == ConeKind::halfline) {
        r_ = 1;
        d_ = 0.0;  // defining relation is vacuous at rank 1
        g0_ = MultiIndex{0.0};
    } else {
        if (n_ < 3) throw std::invalid_argument("lorentz cone requires n >= 3");
        r_ = 2;
        d_ = double(n_) - 2.0;  // (r-1) d/2 = n/r - 1
        g0_ = MultiIndex{0.0, d_ / 2.0};
        if (frame_u_.size() != n_ - 1)
            throw std::invalid_argument("frame direction must have dimension n-1");
        double s = 0.0;
        for (double c : frame_u_) s += c * c;
        if (std::abs(std::sqrt(s) - 1.0) > 1e-9)
            throw std::invalid_argument("frame direction must have unit length");
    }
}

Cone Cone::halfline() { return Cone(ConeKind::halfline, 1, {}); }

Cone Cone::lorentz(std::size_t n) {
    std::vector<double> u(n - 1, 0.0);
    u[0] = 1.0;
    return Cone(ConeKind::lorentz, n, std::move(u));
}

Cone Cone::lorentz(std::size_t n, std::vector<double> frame_u) {
    return Cone(ConeKind::lorentz, n, std::move(frame_u));
}

Element Cone::identity() const {
    Element e(n_, 0.0);
    e[0] = 1.0;
    return e;
}

double Cone::volume_scale() const {
    return kind_ == ConeKind::halfline ? 1.0 : std::pow(2.0, double(n_) / 2.0);
}

std::string Cone::description() const {
    if (kind_ == ConeKind::halfline) return "halfline";
    std::ostringstream os;
    os << "lorentz:" << n_ << ":u=";
    for (std::size_t i = 0; i < frame_u_.size(); ++i) {
        if (i) os << ',';
        os << frame_u_[i];
    }
    return os.str();
}

Element jordan_product(const Cone& cone, const Element& x, const Element& y) {
    check_dim(cone, x, "jordan_product");
    check_dim(cone, y, "jordan_product");
    if (cone.kind() == ConeKind::halfline) return {x[0] * y[0]};
    Element z(cone.dim());
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    z[0] = dot;
    for (std::size_t i = 1; i < x.size(); ++i) z[i] = x[0] * y[i] + y[0] * x[i];
    return z;
}

double trace_of(const Cone& cone, const Element& x) {
    check_dim(cone, x, "trace_of");
    return cone.kind() == ConeKind::halfline ? x[0] : 2.0 * x[0];
}

double trace_inner(const Cone& cone, const Element& x, const Element& y) {
    check_dim(cone, x, "trace_inner");
    check_dim(cone, y, "trace_inner");
    if (cone.kind() == ConeKind::halfline) return x[0] * y[0];
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    return 2.0 * dot;
}

SpectralDecomposition spectral(const Cone& cone, const Element& x) {
    check_dim(cone, x, "spectral");
    SpectralDecomposition sd;
    if (cone.kind() == ConeKind::halfline) {
        sd.eigenvalues = {x[0]};
        sd.idempotents = {{1.0}};
        return sd;
    }
    const std::size_t n = cone.dim();
    double m = norm_bar(x);
    std::vector<double> dir(n - 1);
    if (m > 0.0) {
        for (std::size_t i = 0; i + 1 < n; ++i) dir[i] = x[i + 1] / m;
    } else {
        dir = cone.frame_direction();  // eigenvalues equal; any frame works
    }
    Element c1(n), c2(n);
    c1[0] = c2[0] = 0.5;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        c1[i + 1] = 0.5 * dir[i];
        c2[i + 1] = -0.5 * dir[i];
    }
    sd.eigenvalues = {x[0] + m, x[0] - m};
    sd.idempotents = {std::move(c1), std::move(c2)};
    return sd;
}

double determinant(const Cone& cone, const Element& x) {
    check_dim(cone, x, "determinant");
    if (cone.kind() == ConeKind::halfline) return x[0];
    double s = x[0] * x[0];
    for (std::size_t i = 1; i < x.size(); ++i) s -= x[i] * x[i];
    return s;
}

double principal_minor(const Cone& cone, std::size_t k, const Element& x) {
    check_dim(cone, x, "principal_minor");
    if (k < 1 || k > cone.rank()) throw std::out_of_range("minor index out of range");
    if (cone.kind() == ConeKind::halfline) return x[0];
    if (k == 2) return determinant(cone, x);
    return x[0] + dot_bar(x, cone.frame_direction());
}

double rotated_minor(const Cone& cone, std::size_t k, const Element& x) {
    check_dim(cone, x, "rotated_minor");
    if (k < 1 || k > cone.rank()) throw std::out_of_range("minor index out of range");
    if (cone.kind() == ConeKind::halfline) return x[0];
    if (k == 2) return determinant(cone, x);
    return x[0] - dot_bar(x, cone.frame_direction());
}

double power_function(const Cone& cone, const MultiIndex& s, const Element& x,
                      bool rotated) {
    check_dim(cone, x, "power_function");
    if (s.rank() != cone.rank())
        throw std::invalid_argument("power_function: multi-index rank mismatch");
    if (!in_cone(cone, x))
        throw std::domain_error("power_function: element outside the open cone");
    if (cone.kind() == ConeKind::halfline) return std::pow(x[0], s[0]);
    double m1 = rotated ? rotated_minor(cone, 1, x) : principal_minor(cone, 1, x);
    double m2 = determinant(cone, x);
    return std::pow(m1, s[0] - s[1]) * std::pow(m2, s[1]);
}

Element inverse(const Cone& cone, const Element& x) {
    check_dim(cone, x, "inverse");
    double det = determinant(cone, x);
    if (det == 0.0) throw std::domain_error("inverse: singular element");
    if (cone.kind() == ConeKind::halfline) return {1.0 / x[0]};
    Element z(cone.dim());
    z[0] = x[0] / det;
    for (std::size_t i = 1; i < x.size(); ++i) z[i] = -x[i] / det;
    return z;
}

bool in_cone(const Cone& cone, const Element& x) {
    if (x.size() != cone.dim()) return false;
    if (cone.kind() == ConeKind::halfline) return x[0] > 0.0;
    return x[0] > norm_bar(x);
}

Element sqrt_element(const Cone& cone, const Element& x) {
    if (!in_cone(cone, x)) throw std::domain_error("sqrt_element: outside the cone");
    SpectralDecomposition sd = spectral(cone, x);
    Element z(cone.dim(), 0.0);
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
        double r = std::sqrt(sd.eigenvalues[i]);
        for (std::size_t c = 0; c < z.size(); ++c) z[c] += r * sd.idempotents[i][c];
    }
    return z;
}

Element quadratic_rep(const Cone& cone, const Element& a, const Element& x) {
    Element ax = jordan_product(cone, a, x);
    Element aax = jordan_product(cone, a, ax);
    Element a2 = jordan_product(cone, a, a);
    Element a2x = jordan_product(cone, a2, x);
    Element z(cone.dim());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = 2.0 * aax[i] - a2x[i];
    return z;
}

bool in_wallach(const Cone& cone, const MultiIndex& s) {
    if (s.rank() != cone.rank()) return false;
    double step = cone.peirce_d() / 2.0;
    double offset = 0.0;
    for (std::size_t j = 0; j < s.rank(); ++j) {
        double u = s[j] - offset;
        if (u < 0.0) return false;
        if (u > 0.0) offset += step;
    }
    return true;
}

Element scale(const Element& x, double t) {
    Element z = x;
    for (double& c : z) c *= t;
    return z;
}

Element add(const Element& x, const Element& y) {
    Element z = x;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
    return z;
}

Element sub(const Element& x, const Element& y) {
    Element z = x;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
    return z;
}

Cone parse_cone(const std::string& text) {
    if (text == "halfline") return Cone::halfline();
    if (text.rfind("lorentz:", 0) == 0) {
        std::string rest = text.substr(8);
        std::size_t colon = rest.find(':');
        std::string nstr = colon == std::string::npos ? rest : rest.substr(0, colon);
        std::size_t n = std::stoul(nstr);
        if (colon == std::string::npos) return Cone::lorentz(n);
        std::string opt = rest.substr(colon + 1);
        if (opt.rfind("u=", 0) != 0)
            throw std::invalid_argument("bad cone option: '" + opt + "'");
        MultiIndex u = parse_multiindex(opt.substr(2));
        if (u.rank() != n - 1)
            throw std::invalid_argument("frame direction must have n-1 components");
        double norm = 0.0;
        for (double c : u.e) norm += c * c;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::invalid_argument("frame direction must be nonzero");
        std::vector<double> uv = u.e;
        for (double& c : uv) c /= norm;
        return Cone::lorentz(n, std::move(uv));
    }
    throw std::invalid_argument("unknown cone '" + text +
                                "' (expected 'halfline' or 'lorentz:<n>[:u=...]')");
}

}  // namespace symcone
