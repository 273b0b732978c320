#include "qmi/worldline.hpp"

#include "qmi/errors.hpp"
#include "qmi/simd/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <random>
#include <variant>

namespace qmi {

namespace {

/// splitmix64 finalizer; decorrelates derived stream seeds so sample
/// identity depends only on (master seed, grid index, loop index), never
/// on evaluation order.
std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Gaussian deviates with a pinned algorithm (Box-Muller) so loops are
/// reproducible across standard libraries.
class Gaussian {
public:
    explicit Gaussian(std::mt19937_64& eng) : eng_(eng) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 =
            (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01(eng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    std::mt19937_64& eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Structure-of-arrays copy consumed by the crossing kernel.
struct FlatLoop {
    std::vector<double> px, py, pz;

    explicit FlatLoop(const WorldlineLoop& loop) {
        const std::size_t n = loop.points.size();
        px.resize(n);
        py.resize(n);
        pz.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            px[i] = loop.points[i].x;
            py[i] = loop.points[i].y;
            pz[i] = loop.points[i].z;
        }
    }
};

bool point_in_shape(const BodyShape& shape, Vec2 center, double x, double y) {
    const double dx = x - center.x;
    const double dy = y - center.y;
    if (const auto* disc = std::get_if<Disc>(&shape)) {
        return dx * dx + dy * dy <= disc->radius * disc->radius;
    }
    if (const auto* rect = std::get_if<Rectangle>(&shape)) {
        return std::abs(dx) <= 0.5 * rect->width &&
               std::abs(dy) <= 0.5 * rect->height;
    }
    const auto& poly = std::get<Polygon>(shape);
    bool inside = false;
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& pi = poly.vertices[i];
        const Vec2& pj = poly.vertices[j];
        if ((pi.y > dy) != (pj.y > dy)) {
            const double x_int =
                pi.x + (dy - pi.y) * (pj.x - pi.x) / (pj.y - pi.y);
            if (dx <= x_int) inside = !inside;
        }
    }
    return inside;
}

struct PlaneBox {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
};

PlaneBox shape_bounds(const PlacedBody& body) {
    PlaneBox b;
    if (const auto* disc = std::get_if<Disc>(&body.shape)) {
        b = {-disc->radius, disc->radius, -disc->radius, disc->radius};
    } else if (const auto* rect = std::get_if<Rectangle>(&body.shape)) {
        b = {-0.5 * rect->width, 0.5 * rect->width, -0.5 * rect->height,
             0.5 * rect->height};
    } else {
        const auto& poly = std::get<Polygon>(body.shape);
        b = {poly.vertices[0].x, poly.vertices[0].x, poly.vertices[0].y,
             poly.vertices[0].y};
        for (const Vec2& v : poly.vertices) {
            b.x_lo = std::min(b.x_lo, v.x);
            b.x_hi = std::max(b.x_hi, v.x);
            b.y_lo = std::min(b.y_lo, v.y);
            b.y_hi = std::max(b.y_hi, v.y);
        }
    }
    b.x_lo += body.center.x;
    b.x_hi += body.center.x;
    b.y_lo += body.center.y;
    b.y_hi += body.center.y;
    return b;
}

PlaneBox merge(const PlaneBox& a, const PlaneBox& b) {
    return {std::min(a.x_lo, b.x_lo), std::max(a.x_hi, b.x_hi),
            std::min(a.y_lo, b.y_lo), std::max(a.y_hi, b.y_hi)};
}

void validate_ensemble(const WorldlineEnsemble& e) {
    if (e.l_grid.size() < 2)
        throw InvalidArgumentError("l grid needs at least two points");
    double prev = 0.0;
    for (double l : e.l_grid) {
        if (!(l > prev))
            throw InvalidArgumentError("l grid must be positive and increasing");
        prev = l;
    }
    if (e.n_loops <= 0 || e.n_centers <= 0)
        throw InvalidArgumentError("sample counts must be positive");
    if (e.loop_steps < 8)
        throw InvalidArgumentError("loop must have at least 8 steps");
}

/// Midpoint-rule cell widths for an increasing grid.
std::vector<double> grid_cells(const std::vector<double>& grid) {
    const std::size_t n = grid.size();
    std::vector<double> dl(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = (i == 0) ? grid[0] : 0.5 * (grid[i - 1] + grid[i]);
        const double hi =
            (i + 1 == n) ? grid[n - 1] : 0.5 * (grid[i] + grid[i + 1]);
        dl[i] = hi - lo;
    }
    // end cells extend half a spacing outward so every point carries weight
    dl[0] += 0.5 * (grid[1] - grid[0]);
    dl[n - 1] += 0.5 * (grid[n - 1] - grid[n - 2]);
    return dl;
}

/// Runs the shared sampling schedule and hands every placement's crossing
/// list to `visit(grid_index, crossings_x, crossings_y, count)`.
template <typename Visitor>
void for_each_sample(const WorldlineEnsemble& e, const PlaneBox& box,
                     Visitor&& visit) {
    std::vector<double> out_x(static_cast<std::size_t>(e.loop_steps));
    std::vector<double> out_y(static_cast<std::size_t>(e.loop_steps));
    for (std::size_t il = 0; il < e.l_grid.size(); ++il) {
        const double l = e.l_grid[il];
        const double scale = std::sqrt(l);
        const double pad = 3.0 * scale;
        const double x_lo = box.x_lo - pad, x_w = box.x_hi - box.x_lo + 2 * pad;
        const double y_lo = box.y_lo - pad, y_w = box.y_hi - box.y_lo + 2 * pad;
        const double z_lo = -pad, z_w = 2 * pad;
        const std::uint64_t grid_seed = mix(e.seed, il);
        for (int j = 0; j < e.n_loops; ++j) {
            const WorldlineLoop loop =
                sample_loop(e.loop_steps, mix(grid_seed, 2 * j));
            const FlatLoop flat(loop);
            std::mt19937_64 centers(mix(grid_seed, 2 * j + 1));
            for (int k = 0; k < e.n_centers; ++k) {
                const double cx = x_lo + x_w * uniform01(centers);
                const double cy = y_lo + y_w * uniform01(centers);
                const double cz = z_lo + z_w * uniform01(centers);
                const std::size_t n_cross = simd::plane_crossings(
                    flat.px.data(), flat.py.data(), flat.pz.data(),
                    flat.px.size(), scale, cx, cy, cz, 1e-12 * scale,
                    out_x.data(), out_y.data());
                visit(il, out_x.data(), out_y.data(), n_cross);
            }
        }
    }
}

bool crossings_hit(const PlacedBody& region, const double* xs, const double* ys,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (point_in_shape(region.shape, region.center, xs[i], ys[i]))
            return true;
    }
    return false;
}

} // namespace

WorldlineLoop sample_loop(int steps, std::uint64_t seed) {
    if (steps < 8)
        throw InvalidArgumentError("loop must have at least 8 steps");
    std::mt19937_64 eng(seed);
    Gaussian gauss(eng);
    const double sd = 1.0 / std::sqrt(static_cast<double>(steps));

    WorldlineLoop loop;
    loop.steps = steps;
    loop.points.resize(static_cast<std::size_t>(steps) + 1);
    loop.points[0] = {0.0, 0.0, 0.0};
    for (int j = 1; j <= steps; ++j) {
        const Vec3& prev = loop.points[static_cast<std::size_t>(j) - 1];
        loop.points[static_cast<std::size_t>(j)] = {prev.x + sd * gauss(),
                                                    prev.y + sd * gauss(),
                                                    prev.z + sd * gauss()};
    }
    // bridge: remove the linear drift so the walk closes exactly
    const Vec3 end = loop.points.back();
    for (int j = 0; j <= steps; ++j) {
        const double f = static_cast<double>(j) / static_cast<double>(steps);
        Vec3& p = loop.points[static_cast<std::size_t>(j)];
        p.x -= f * end.x;
        p.y -= f * end.y;
        p.z -= f * end.z;
    }
    Vec3 cm{0.0, 0.0, 0.0};
    for (int j = 0; j < steps; ++j) {
        const Vec3& p = loop.points[static_cast<std::size_t>(j)];
        cm.x += p.x;
        cm.y += p.y;
        cm.z += p.z;
    }
    cm.x /= steps;
    cm.y /= steps;
    cm.z /= steps;
    for (int j = 0; j < steps; ++j) {
        Vec3& p = loop.points[static_cast<std::size_t>(j)];
        p.x -= cm.x;
        p.y -= cm.y;
        p.z -= cm.z;
    }
    loop.points.back() = loop.points.front();
    return loop;
}

std::vector<Vec2> plane_crossings(const WorldlineLoop& loop,
                                  const LoopPlacement& placement) {
    if (!(placement.l > 0.0))
        throw InvalidArgumentError("placement scale l must be positive");
    if (loop.points.size() < 2 ||
        loop.points.front().x != loop.points.back().x ||
        loop.points.front().y != loop.points.back().y ||
        loop.points.front().z != loop.points.back().z)
        throw InvalidArgumentError("loop polyline is not closed");
    const FlatLoop flat(loop);
    const double scale = std::sqrt(placement.l);
    std::vector<double> out_x(flat.px.size() - 1);
    std::vector<double> out_y(flat.px.size() - 1);
    const std::size_t n = simd::plane_crossings(
        flat.px.data(), flat.py.data(), flat.pz.data(), flat.px.size(), scale,
        placement.center.x, placement.center.y, placement.center.z,
        1e-12 * scale, out_x.data(), out_y.data());
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {out_x[i], out_y[i]};
    return pts;
}

bool loop_hits_region(const WorldlineLoop& loop, const LoopPlacement& placement,
                      const PlacedBody& region) {
    validate_shape(region.shape);
    const std::vector<Vec2> pts = plane_crossings(loop, placement);
    for (const Vec2& p : pts) {
        if (point_in_shape(region.shape, region.center, p.x, p.y)) return true;
    }
    return false;
}

DirichletEstimate dirichlet_delta_S(const PlacedBody& a, const PlacedBody& b,
                                    const WorldlineEnsemble& ensemble) {
    validate_shape(a.shape);
    validate_shape(b.shape);
    validate_ensemble(ensemble);
    if (meshes_overlap(translate(mesh_shape(a.shape, 1), a.center),
                       translate(mesh_shape(b.shape, 1), b.center)))
        throw InvalidArgumentError("regions overlap or touch; must be disjoint");

    const PlaneBox box = merge(shape_bounds(a), shape_bounds(b));
    const std::size_t n_grid = ensemble.l_grid.size();
    std::vector<long long> hits(n_grid, 0);
    for_each_sample(ensemble, box,
                    [&](std::size_t il, const double* xs, const double* ys,
                        std::size_t n) {
                        if (crossings_hit(a, xs, ys, n) &&
                            crossings_hit(b, xs, ys, n))
                            ++hits[il];
                    });

    const std::vector<double> dl = grid_cells(ensemble.l_grid);
    const long long n_samples =
        static_cast<long long>(ensemble.n_loops) * ensemble.n_centers;
    DirichletEstimate out;
    out.rows.resize(n_grid);
    for (std::size_t i = 0; i < n_grid; ++i) {
        const double l = ensemble.l_grid[i];
        const double pad = 3.0 * std::sqrt(l);
        const double volume = (box.x_hi - box.x_lo + 2 * pad) *
                              (box.y_hi - box.y_lo + 2 * pad) * (2 * pad);
        const double p = static_cast<double>(hits[i]) /
                         static_cast<double>(n_samples);
        DirichletRow& row = out.rows[i];
        row.l = l;
        row.estimate = volume * p;
        row.std_error = volume * std::sqrt(p * (1.0 - p) /
                                           static_cast<double>(n_samples));
        row.n_samples = n_samples;
        row.hits = hits[i];

        const double weight = std::pow(l, -2.5) * dl[i];
        out.value += weight * row.estimate;
        out.std_error += weight * weight * row.std_error * row.std_error;
        out.hits += hits[i];
    }
    out.std_error = std::sqrt(out.std_error);
    out.reliable = out.hits > 0;
    return out;
}

SsaCounts dirichlet_ssa_counts(const PlacedBody& a, const PlacedBody& b,
                               const PlacedBody& c,
                               const WorldlineEnsemble& ensemble) {
    validate_shape(a.shape);
    validate_shape(b.shape);
    validate_shape(c.shape);
    validate_ensemble(ensemble);

    const PlaneBox box =
        merge(merge(shape_bounds(a), shape_bounds(b)), shape_bounds(c));
    SsaCounts counts;
    for_each_sample(
        ensemble, box,
        [&](std::size_t, const double* xs, const double* ys, std::size_t n) {
            const bool ha = crossings_hit(a, xs, ys, n);
            const bool hb = crossings_hit(b, xs, ys, n);
            const bool hc = crossings_hit(c, xs, ys, n);
            if (ha && hb && hc) {
                if (!(ha && hc))
                    throw PhysicalInconsistencyError(
                        "event inclusion violated: triple hit without pair hit");
                ++counts.n_abc;
            }
            if (ha && hc) ++counts.n_ac;
            ++counts.n_samples;
        });
    return counts;
}

} // namespace qmi
