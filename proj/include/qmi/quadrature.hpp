#pragma once

#include "qmi/geometry.hpp"

#include <vector>

namespace qmi {

/// Gauss-Legendre rule on [0, 1].  Nodes are generated at runtime by Newton
/// iteration on the Legendre recurrence, so no tabulated constants enter.
struct Gauss1d {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point rule, exact for polynomials of degree <= 2n-1.  Cached.
const Gauss1d& gauss_legendre(int n);

/// Quadrature rule on the reference triangle (0,0)-(1,0)-(0,1), built as a
/// collapsed tensor product of two n-point Gauss-Legendre rules.  Exact for
/// total degree <= 2n-2; weights sum to the reference area 1/2.
struct TriangleRule {
    std::vector<double> a; // first barycentric-style coordinate
    std::vector<double> b; // second coordinate
    std::vector<double> w;
    int points() const { return static_cast<int>(w.size()); }
};

/// Rule with n points per tensor direction (n^2 total).  Cached.
const TriangleRule& triangle_rule(int n_1d);

/// Smallest cached rule integrating total degree `degree` exactly.
const TriangleRule& triangle_rule_for_degree(int degree);

/// Physical-space quadrature points for one panel: weights carry the
/// Jacobian, so sum(w) equals the panel area exactly up to roundoff.
struct PanelPoints {
    std::vector<double> x, y, w;
};

PanelPoints map_to_triangle(const TriangleRule& rule, const Triangle& t);

/// Append mapped points of `t` to SoA arrays (used for whole-mesh caches).
void append_mapped(const TriangleRule& rule, const Triangle& t,
                   std::vector<double>& xs, std::vector<double>& ys,
                   std::vector<double>& ws);

} // namespace qmi
