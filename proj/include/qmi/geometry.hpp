#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qmi {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Flat triangle in the z=0 plane, vertices counterclockwise.
struct Triangle {
    std::array<Vec2, 3> v;

    double area() const {
        return 0.5 * cross(v[1] - v[0], v[2] - v[0]);
    }
    Vec2 centroid() const {
        return {(v[0].x + v[1].x + v[2].x) / 3.0,
                (v[0].y + v[1].y + v[2].y) / 3.0};
    }
    /// Longest edge length.
    double diameter() const;
    /// Radius of the centroid-centered bounding circle.
    double bounding_radius() const;
};

/// Minimum Euclidean distance between two triangles (0 if they intersect).
double triangle_distance(const Triangle& a, const Triangle& b);

/// True if the closed triangles share any point (edge contact counts).
bool triangles_overlap(const Triangle& a, const Triangle& b);

// ---- body shapes ------------------------------------------------------

struct Disc {
    double radius = 1.0;
};

struct Rectangle {
    double width = 1.0;
    double height = 1.0;
};

/// Convex polygon, vertices counterclockwise, no repeated points.
struct Polygon {
    std::vector<Vec2> vertices;
};

using BodyShape = std::variant<Disc, Rectangle, Polygon>;

double shape_area(const BodyShape& s);
/// Half-extent of the shape along x (used to convert gaps to center offsets).
double shape_half_width(const BodyShape& s);
/// Membership test for a shape centered at `center`.
bool point_in_shape(const BodyShape& s, Vec2 center, Vec2 p);
/// Throws InvalidArgumentError on degenerate sizes / non-convex polygons.
void validate_shape(const BodyShape& s);

// ---- meshes ------------------------------------------------------------

struct TriangleMesh {
    std::vector<Triangle> panels;
    std::vector<double> areas;      // per-panel, same order as panels
    std::vector<Vec2> centroids;    // per-panel
    std::string shape_tag;          // e.g. "disc", "rectangle", "polygon"
    int refinement_level = 0;

    std::size_t size() const { return panels.size(); }
    double total_area() const;
};

/// Disc mesh of 6 * (2^(refinement+1))^2 triangles: concentric rings around a
/// center vertex, ring radii graded as R*sin(pi*j/(2*n_rings)) so panel width
/// shrinks near the rim where the equilibrium charge density diverges.
TriangleMesh mesh_disc(double radius, int refinement);

/// n_per_side x n_per_side structured grid, each cell split into two
/// triangles.  Panel areas sum to width*height to machine precision.
TriangleMesh mesh_rectangle(double width, double height, int n_per_side);

/// Rectangle grid with geometrically graded column widths: ratio > 1 packs
/// the narrowest columns against the chosen vertical edge (+1 right, -1
/// left, 0 uniform).  Rows stay uniform.  Used for near-contact runs where
/// the induced charge concentrates on the facing edge.
TriangleMesh mesh_rectangle_graded(double width, double height,
                                   int nx, int ny, double ratio, int edge);

/// Fan triangulation about the centroid, then `refinement` rounds of 4-way
/// midpoint subdivision.
TriangleMesh mesh_polygon(const Polygon& poly, int refinement);

/// Dispatch on shape; rectangles use n_per_side = 4 * 2^refinement.
TriangleMesh mesh_shape(const BodyShape& s, int refinement);

TriangleMesh translate(const TriangleMesh& mesh, Vec2 offset);

/// Minimum panel-to-panel distance between two meshes (0 if touching).
double mesh_gap(const TriangleMesh& a, const TriangleMesh& b);

/// True if any panel of `a` intersects any panel of `b`.
bool meshes_overlap(const TriangleMesh& a, const TriangleMesh& b);

/// FNV-1a over the panel vertex coordinates; stable across runs.
std::uint64_t mesh_hash(const TriangleMesh& mesh);

/// Plain-text dump: one line per panel with vertices, area, centroid.
void dump_mesh(const TriangleMesh& mesh, std::ostream& os);

} // namespace qmi
