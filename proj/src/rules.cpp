#include "symcone/rules.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace symcone::rules {

namespace {

// Eigenvalues of a symmetric tridiagonal matrix (diag d, off-diag e) together
// with the first component of each normalized eigenvector, via implicit QL
// with Wilkinson shifts.  Standard tql2 reduced to first-row tracking.
void tridiag_eigen(std::vector<double>& d, std::vector<double>& e,
                   std::vector<double>& first) {
    const std::size_t n = d.size();
    first.assign(n, 0.0);
    if (n == 0) return;
    first[0] = 1.0;
    if (n == 1) return;
    e.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        while (true) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 1e-16 * dd) break;
            }
            if (m == l) break;
            if (++iter > 80) throw std::runtime_error("tridiag_eigen failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
            double s = 1.0, c = 1.0, p = 0.0;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                double f1 = first[i + 1];
                first[i + 1] = s * first[i] + c * f1;
                first[i] = c * first[i] - s * f1;
            }
            if (r == 0.0 && m - l > 1) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // sort ascending by node
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t k = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(first[i], first[k]);
        }
    }
}

Rule1D golub_welsch(std::vector<double> diag, std::vector<double> off,
                    double log_beta0) {
    std::vector<double> first;
    tridiag_eigen(diag, off, first);
    Rule1D rule;
    rule.nodes = diag;
    rule.weights.resize(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        // store log weight; caller exponentiates with its own factors
        rule.weights[i] = log_beta0 + 2.0 * std::log(std::abs(first[i]));
    }
    return rule;
}

std::mutex cache_mutex;

}  // namespace

const Rule1D& gauss_legendre(std::size_t n) {
    static std::map<std::size_t, Rule1D> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> diag(n, 0.0), off(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        double kk = double(k);
        off[k - 1] = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    Rule1D r = golub_welsch(std::move(diag), std::move(off), std::log(2.0));
    for (double& w : r.weights) w = std::exp(w);
    return cache.emplace(n, std::move(r)).first->second;
}

Rule1D gauss_legendre_ab(std::size_t n, double a, double b) {
    const Rule1D& base = gauss_legendre(n);
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        r.nodes[i] = mid + half * base.nodes[i];
        r.weights[i] = half * base.weights[i];
    }
    return r;
}

Rule1D gauss_laguerre(std::size_t n, double alpha, double scale) {
    if (alpha <= -1.0) throw std::domain_error("gauss_laguerre requires alpha > -1");
    static std::map<std::pair<std::size_t, double>, Rule1D> cache;
    Rule1D base;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto key = std::make_pair(n, alpha);
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::vector<double> diag(n), off(n - 1);
            for (std::size_t k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
            for (std::size_t k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
            Rule1D r = golub_welsch(std::move(diag), std::move(off), std::lgamma(alpha + 1.0));
            // fold the weight function back in, in log space: w e^{x} x^{-alpha}
            for (std::size_t i = 0; i < n; ++i)
                r.weights[i] = std::exp(r.weights[i] + r.nodes[i] - alpha * std::log(r.nodes[i]));
            it = cache.emplace(key, std::move(r)).first;
        }
        base = it->second;
    }
    for (std::size_t i = 0; i < n; ++i) {
        base.nodes[i] *= scale;
        base.weights[i] *= scale;
    }
    return base;
}

Rule1D rational_halfline(std::size_t n, double a) {
    const Rule1D& base = gauss_legendre(n);
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = 0.5 * (base.nodes[i] + 1.0);
        double wu = 0.5 * base.weights[i];
        r.nodes[i] = a * u / (1.0 - u);
        r.weights[i] = wu * a / ((1.0 - u) * (1.0 - u));
    }
    return r;
}

Rule1D rational_fullline(std::size_t n, double a) {
    const Rule1D& base = gauss_legendre(n);
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = base.nodes[i];
        double s = 1.0 - v * v;
        r.nodes[i] = a * v / s;
        r.weights[i] = base.weights[i] * a * (1.0 + v * v) / (s * s);
    }
    return r;
}

Rule1D exp_sinh_halfline(std::size_t n, double a) {
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // window wide enough that endpoint powers t^{a} with a > -0.9 are
    // truncated below 1e-10 while t stays inside double range for |powers|<=6
    const double T = 4.6;
    double h = 2.0 * T / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        double t = -T + h * double(i);
        double sh = std::sinh(t);
        r.nodes[i] = a * std::exp(sh);
        r.weights[i] = h * a * std::cosh(t) * std::exp(sh);
    }
    return r;
}

Rule1D circle(std::size_t n) {
    Rule1D r;
    r.nodes.resize(n);
    r.weights.assign(n, 2.0 * std::numbers::pi / double(n));
    for (std::size_t i = 0; i < n; ++i)
        r.nodes[i] = 2.0 * std::numbers::pi * double(i) / double(n);
    return r;
}

}  // namespace symcone::rules
