#include "qmi/geometry.hpp"
#include "qmi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <ostream>

namespace qmi {

namespace {

constexpr double kPi = std::numbers::pi;

double segment_point_distance(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;
    return std::min({segment_point_distance(a, b, c), segment_point_distance(a, b, d),
                     segment_point_distance(c, d, a), segment_point_distance(c, d, b)});
}

void append_panel(TriangleMesh& mesh, const Triangle& t) {
    const double a = t.area();
    const double d = t.diameter();
    if (!(a > 1e-14 * d * d)) {
        throw InvalidArgumentError("degenerate mesh panel (area ~ 0)");
    }
    mesh.panels.push_back(t);
    mesh.areas.push_back(a);
    mesh.centroids.push_back(t.centroid());
}

} // namespace

double Triangle::diameter() const {
    return std::max({norm(v[1] - v[0]), norm(v[2] - v[1]), norm(v[0] - v[2])});
}

double Triangle::bounding_radius() const {
    const Vec2 c = centroid();
    return std::max({norm(v[0] - c), norm(v[1] - c), norm(v[2] - c)});
}

bool triangles_overlap(const Triangle& a, const Triangle& b) {
    // Separating axis test over the 6 edge normals.
    const Triangle* tris[2] = {&a, &b};
    for (const Triangle* t : tris) {
        for (int i = 0; i < 3; ++i) {
            const Vec2 e = t->v[(i + 1) % 3] - t->v[i];
            const Vec2 n{-e.y, e.x};
            double min_a = std::numeric_limits<double>::max(), max_a = -min_a;
            double min_b = min_a, max_b = max_a;
            for (int k = 0; k < 3; ++k) {
                min_a = std::min(min_a, dot(n, a.v[k]));
                max_a = std::max(max_a, dot(n, a.v[k]));
                min_b = std::min(min_b, dot(n, b.v[k]));
                max_b = std::max(max_b, dot(n, b.v[k]));
            }
            if (max_a < min_b || max_b < min_a) return false;
        }
    }
    return true;
}

double triangle_distance(const Triangle& a, const Triangle& b) {
    if (triangles_overlap(a, b)) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            best = std::min(best, segment_segment_distance(a.v[i], a.v[(i + 1) % 3],
                                                           b.v[j], b.v[(j + 1) % 3]));
        }
    }
    return best;
}

// ---- body shapes ------------------------------------------------------

void validate_shape(const BodyShape& s) {
    if (const auto* d = std::get_if<Disc>(&s)) {
        if (!(d->radius > 0.0)) throw InvalidArgumentError("disc radius must be > 0");
        return;
    }
    if (const auto* r = std::get_if<Rectangle>(&s)) {
        if (!(r->width > 0.0) || !(r->height > 0.0)) {
            throw InvalidArgumentError("rectangle sides must be > 0");
        }
        return;
    }
    const auto& poly = std::get<Polygon>(s);
    const auto& v = poly.vertices;
    if (v.size() < 3) throw InvalidArgumentError("polygon needs >= 3 vertices");
    double area2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t j = (i + 1) % v.size();
        const std::size_t k = (i + 2) % v.size();
        if (cross(v[j] - v[i], v[k] - v[j]) <= 0.0) {
            throw InvalidArgumentError(
                "polygon must be convex with counterclockwise vertices");
        }
        area2 += cross(v[i], v[j]);
    }
    if (!(area2 > 0.0)) throw InvalidArgumentError("polygon area must be > 0");
}

double shape_area(const BodyShape& s) {
    validate_shape(s);
    if (const auto* d = std::get_if<Disc>(&s)) return kPi * d->radius * d->radius;
    if (const auto* r = std::get_if<Rectangle>(&s)) return r->width * r->height;
    const auto& v = std::get<Polygon>(s).vertices;
    double area2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        area2 += cross(v[i], v[(i + 1) % v.size()]);
    }
    return 0.5 * area2;
}

double shape_half_width(const BodyShape& s) {
    if (const auto* d = std::get_if<Disc>(&s)) return d->radius;
    if (const auto* r = std::get_if<Rectangle>(&s)) return 0.5 * r->width;
    const auto& v = std::get<Polygon>(s).vertices;
    double lo = v[0].x, hi = v[0].x;
    for (const Vec2& p : v) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
    }
    return 0.5 * (hi - lo);
}

bool point_in_shape(const BodyShape& s, Vec2 center, Vec2 p) {
    const Vec2 q = p - center;
    if (const auto* d = std::get_if<Disc>(&s)) {
        return q.x * q.x + q.y * q.y <= d->radius * d->radius;
    }
    if (const auto* r = std::get_if<Rectangle>(&s)) {
        return std::abs(q.x) <= 0.5 * r->width && std::abs(q.y) <= 0.5 * r->height;
    }
    const auto& v = std::get<Polygon>(s).vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (cross(v[(i + 1) % v.size()] - v[i], q - v[i]) < 0.0) return false;
    }
    return true;
}

// ---- meshes ------------------------------------------------------------

double TriangleMesh::total_area() const {
    double s = 0.0;
    for (double a : areas) s += a;
    return s;
}

TriangleMesh mesh_disc(double radius, int refinement) {
    if (!(radius > 0.0)) throw InvalidArgumentError("disc radius must be > 0");
    if (refinement < 0 || refinement > 8) {
        throw InvalidArgumentError("disc refinement must be in [0, 8]");
    }
    const int n_rings = 2 << refinement; // 2^(refinement+1)
    // Ring radii r_j = R sin(pi j / (2 n)); spacing ~ cos near the rim, which
    // concentrates panels where the charge density ~ (R^2 - r^2)^(-1/2).
    std::vector<std::vector<Vec2>> rings(static_cast<std::size_t>(n_rings) + 1);
    rings[0] = {Vec2{0.0, 0.0}};
    for (int j = 1; j <= n_rings; ++j) {
        const double r = radius * std::sin(kPi * j / (2.0 * n_rings));
        const int m = 6 * j;
        rings[j].reserve(m);
        for (int i = 0; i < m; ++i) {
            const double th = 2.0 * kPi * i / m;
            rings[j].push_back({r * std::cos(th), r * std::sin(th)});
        }
    }

    TriangleMesh mesh;
    mesh.shape_tag = "disc";
    mesh.refinement_level = refinement;
    mesh.panels.reserve(static_cast<std::size_t>(6) * n_rings * n_rings);
    for (int j = 1; j <= n_rings; ++j) {
        const auto& in = rings[j - 1];
        const auto& out = rings[j];
        const int m_in = static_cast<int>(in.size());
        const int m_out = static_cast<int>(out.size());
        for (int s = 0; s < 6; ++s) {
            // Sector s: inner locals [0, j-1], outer locals [0, j].
            auto iv = [&](int t) { return in[(s * (j - 1) + t) % m_in]; };
            auto ov = [&](int t) { return out[(s * j + t) % m_out]; };
            for (int t = 0; t + 1 < j; ++t) {
                append_panel(mesh, {{iv(t), ov(t), ov(t + 1)}});
                append_panel(mesh, {{iv(t), ov(t + 1), iv(t + 1)}});
            }
            append_panel(mesh, {{iv(j - 1), ov(j - 1), ov(j)}});
        }
    }
    return mesh;
}

TriangleMesh mesh_rectangle(double width, double height, int n_per_side) {
    if (!(width > 0.0) || !(height > 0.0)) {
        throw InvalidArgumentError("rectangle sides must be > 0");
    }
    if (n_per_side < 1) throw InvalidArgumentError("n_per_side must be >= 1");
    TriangleMesh mesh;
    mesh.shape_tag = "rectangle";
    mesh.panels.reserve(static_cast<std::size_t>(2) * n_per_side * n_per_side);
    auto node = [&](int i, int j) -> Vec2 {
        return {width * (static_cast<double>(i) / n_per_side - 0.5),
                height * (static_cast<double>(j) / n_per_side - 0.5)};
    };
    for (int j = 0; j < n_per_side; ++j) {
        for (int i = 0; i < n_per_side; ++i) {
            const Vec2 p00 = node(i, j), p10 = node(i + 1, j);
            const Vec2 p01 = node(i, j + 1), p11 = node(i + 1, j + 1);
            append_panel(mesh, {{p00, p10, p11}});
            append_panel(mesh, {{p00, p11, p01}});
        }
    }
    return mesh;
}

TriangleMesh mesh_rectangle_graded(double width, double height,
                                   int nx, int ny, double ratio, int edge) {
    if (!(width > 0.0) || !(height > 0.0)) {
        throw InvalidArgumentError("rectangle sides must be > 0");
    }
    if (nx < 1 || ny < 1) throw InvalidArgumentError("grid counts must be >= 1");
    if (!(ratio >= 1.0)) throw InvalidArgumentError("grading ratio must be >= 1");
    if (edge < -1 || edge > 1) throw InvalidArgumentError("edge must be -1, 0 or 1");

    // Column widths form a geometric progression, narrowest at the graded edge.
    std::vector<double> xs(static_cast<std::size_t>(nx) + 1);
    xs[0] = 0.0;
    double w = 1.0, total = 0.0;
    std::vector<double> dw(nx);
    for (int i = 0; i < nx; ++i) {
        dw[i] = w;
        total += w;
        w *= ratio;
    }
    if (edge == 1) std::reverse(dw.begin(), dw.end()); // narrow columns at +x
    for (int i = 0; i < nx; ++i) xs[i + 1] = xs[i] + dw[i] / total * width;
    if (edge == 0) {
        for (int i = 0; i <= nx; ++i) xs[i] = width * (static_cast<double>(i) / nx);
    }

    TriangleMesh mesh;
    mesh.shape_tag = "rectangle";
    mesh.panels.reserve(static_cast<std::size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        const double y0 = height * (static_cast<double>(j) / ny - 0.5);
        const double y1 = height * (static_cast<double>(j + 1) / ny - 0.5);
        for (int i = 0; i < nx; ++i) {
            const double x0 = xs[i] - 0.5 * width;
            const double x1 = xs[i + 1] - 0.5 * width;
            append_panel(mesh, Triangle{{Vec2{x0, y0}, Vec2{x1, y0}, Vec2{x1, y1}}});
            append_panel(mesh, Triangle{{Vec2{x0, y0}, Vec2{x1, y1}, Vec2{x0, y1}}});
        }
    }
    return mesh;
}

TriangleMesh mesh_polygon(const Polygon& poly, int refinement) {
    validate_shape(BodyShape{poly});
    if (refinement < 0 || refinement > 8) {
        throw InvalidArgumentError("polygon refinement must be in [0, 8]");
    }
    const auto& v = poly.vertices;
    Vec2 c{0.0, 0.0};
    for (const Vec2& p : v) c = c + p;
    c = (1.0 / static_cast<double>(v.size())) * c;

    std::vector<Triangle> tris;
    for (std::size_t i = 0; i < v.size(); ++i) {
        tris.push_back({{c, v[i], v[(i + 1) % v.size()]}});
    }
    for (int r = 0; r < refinement; ++r) {
        std::vector<Triangle> next;
        next.reserve(tris.size() * 4);
        for (const Triangle& t : tris) {
            const Vec2 m01 = 0.5 * (t.v[0] + t.v[1]);
            const Vec2 m12 = 0.5 * (t.v[1] + t.v[2]);
            const Vec2 m20 = 0.5 * (t.v[2] + t.v[0]);
            next.push_back({{t.v[0], m01, m20}});
            next.push_back({{m01, t.v[1], m12}});
            next.push_back({{m20, m12, t.v[2]}});
            next.push_back({{m01, m12, m20}});
        }
        tris = std::move(next);
    }

    TriangleMesh mesh;
    mesh.shape_tag = "polygon";
    mesh.refinement_level = refinement;
    for (const Triangle& t : tris) append_panel(mesh, t);
    return mesh;
}

TriangleMesh mesh_shape(const BodyShape& s, int refinement) {
    validate_shape(s);
    if (const auto* d = std::get_if<Disc>(&s)) return mesh_disc(d->radius, refinement);
    if (const auto* r = std::get_if<Rectangle>(&s)) {
        TriangleMesh m = mesh_rectangle(r->width, r->height, 4 * (1 << refinement));
        m.refinement_level = refinement;
        return m;
    }
    return mesh_polygon(std::get<Polygon>(s), refinement + 2);
}

TriangleMesh translate(const TriangleMesh& mesh, Vec2 offset) {
    TriangleMesh out = mesh;
    for (Triangle& t : out.panels) {
        for (Vec2& p : t.v) p = p + offset;
    }
    for (Vec2& c : out.centroids) c = c + offset;
    return out;
}

double mesh_gap(const TriangleMesh& a, const TriangleMesh& b) {
    double best = std::numeric_limits<double>::max();
    for (const Triangle& ta : a.panels) {
        for (const Triangle& tb : b.panels) {
            best = std::min(best, triangle_distance(ta, tb));
            if (best == 0.0) return 0.0;
        }
    }
    return best;
}

bool meshes_overlap(const TriangleMesh& a, const TriangleMesh& b) {
    // Bounding-box prefilter, then exact panel tests.
    auto bbox = [](const TriangleMesh& m) {
        double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
        for (const Triangle& t : m.panels) {
            for (const Vec2& p : t.v) {
                lo_x = std::min(lo_x, p.x);
                lo_y = std::min(lo_y, p.y);
                hi_x = std::max(hi_x, p.x);
                hi_y = std::max(hi_y, p.y);
            }
        }
        return std::array<double, 4>{lo_x, lo_y, hi_x, hi_y};
    };
    const auto ba = bbox(a), bb = bbox(b);
    if (ba[2] < bb[0] || bb[2] < ba[0] || ba[3] < bb[1] || bb[3] < ba[1]) return false;
    for (const Triangle& ta : a.panels) {
        for (const Triangle& tb : b.panels) {
            if (triangles_overlap(ta, tb)) return true;
        }
    }
    return false;
}

std::uint64_t mesh_hash(const TriangleMesh& mesh) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a offset basis
    auto mix = [&h](double x) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(x));
        std::memcpy(&bits, &x, sizeof(bits));
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    for (const Triangle& t : mesh.panels) {
        for (const Vec2& p : t.v) {
            mix(p.x);
            mix(p.y);
        }
    }
    return h;
}

void dump_mesh(const TriangleMesh& mesh, std::ostream& os) {
    os << "# " << mesh.shape_tag << " refinement=" << mesh.refinement_level
       << " panels=" << mesh.size() << "\n";
    os << "# x0 y0 x1 y1 x2 y2 area cx cy\n";
    os.precision(12);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const Triangle& t = mesh.panels[i];
        os << t.v[0].x << ' ' << t.v[0].y << ' ' << t.v[1].x << ' ' << t.v[1].y
           << ' ' << t.v[2].x << ' ' << t.v[2].y << ' ' << mesh.areas[i] << ' '
           << mesh.centroids[i].x << ' ' << mesh.centroids[i].y << "\n";
    }
}

} // namespace qmi
