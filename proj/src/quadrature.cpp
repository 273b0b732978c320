#include "qmi/quadrature.hpp"
#include "qmi/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace qmi {

namespace {

// Legendre P_n(t) and P_n'(t) on [-1, 1] via the three-term recurrence.
std::pair<double, double> legendre(int n, double t) {
    double p0 = 1.0, p1 = t;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    return {p1, dp};
}

Gauss1d build_gauss(int n) {
    if (n < 1 || n > 128) throw InvalidArgumentError("gauss_legendre order out of range");
    Gauss1d g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton.
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 64; ++it) {
            const auto [p, dp] = legendre(n, t);
            const double dt = p / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        const auto [p, dp] = legendre(n, t);
        (void)p;
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        // Map [-1,1] -> [0,1].
        g.x[i] = 0.5 * (1.0 - t); // cos ordering gives ascending x
        g.w[i] = 0.5 * w;
    }
    return g;
}

TriangleRule build_triangle_rule(int n) {
    const Gauss1d& g = gauss_legendre(n);
    TriangleRule r;
    r.a.reserve(static_cast<std::size_t>(n) * n);
    r.b.reserve(static_cast<std::size_t>(n) * n);
    r.w.reserve(static_cast<std::size_t>(n) * n);
    // Collapse the unit square onto the triangle: (u, v) -> (u, v(1-u)),
    // Jacobian (1-u).  Polynomial exactness: total degree 2n-2.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = g.x[i], v = g.x[j];
            r.a.push_back(u);
            r.b.push_back(v * (1.0 - u));
            r.w.push_back(g.w[i] * g.w[j] * (1.0 - u));
        }
    }
    return r;
}

} // namespace

const Gauss1d& gauss_legendre(int n) {
    static std::map<int, Gauss1d> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
    return it->second;
}

const TriangleRule& triangle_rule(int n_1d) {
    static std::map<int, TriangleRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n_1d);
    if (it == cache.end()) it = cache.emplace(n_1d, build_triangle_rule(n_1d)).first;
    return it->second;
}

const TriangleRule& triangle_rule_for_degree(int degree) {
    if (degree < 0) throw InvalidArgumentError("degree must be >= 0");
    return triangle_rule(degree / 2 + 1);
}

PanelPoints map_to_triangle(const TriangleRule& rule, const Triangle& t) {
    PanelPoints p;
    append_mapped(rule, t, p.x, p.y, p.w);
    return p;
}

void append_mapped(const TriangleRule& rule, const Triangle& t,
                   std::vector<double>& xs, std::vector<double>& ys,
                   std::vector<double>& ws) {
    const Vec2 e1 = t.v[1] - t.v[0];
    const Vec2 e2 = t.v[2] - t.v[0];
    const double jac = cross(e1, e2); // = 2 * area
    for (int k = 0; k < rule.points(); ++k) {
        const double a = rule.a[k], b = rule.b[k];
        xs.push_back(t.v[0].x + a * e1.x + b * e2.x);
        ys.push_back(t.v[0].y + a * e1.y + b * e2.y);
        ws.push_back(rule.w[k] * jac);
    }
}

} // namespace qmi
