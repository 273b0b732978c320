#pragma once

#include "qmi/entropy.hpp"
#include "qmi/geometry.hpp"

#include <cstdint>
#include <vector>

namespace qmi {

/// Closed random loop in 3D, sampled as a discrete Brownian bridge on the
/// unit time interval: `steps` Gaussian increments of variance 1/steps per
/// coordinate, conditioned on returning to the start.  points holds steps+1
/// vertices with points[steps] == points[0] exactly and the vertex center
/// of mass at the origin.  The mean squared radius of gyration of this
/// normalization is (L*L - 1) / (4*L*L), approaching 1/4 as steps grow.
struct WorldlineLoop {
    std::vector<Vec3> points;
    int steps = 0;
};

/// Rigid placement of a unit-scale loop: vertices map to
/// center + sqrt(l) * p.  l > 0 plays the role of squared spatial extent.
struct LoopPlacement {
    double l = 1.0;
    Vec3 center;
};

/// Deterministic loop generation; fixed (steps, seed) reproduces the loop
/// bit for bit on any platform (the Gaussian sampler is pinned internally
/// rather than delegated to the standard library's distribution).
/// Requires steps >= 8.
WorldlineLoop sample_loop(int steps, std::uint64_t seed);

/// Points where the placed loop pierces the z = 0 plane, by linear
/// interpolation along each straddling segment.  A vertex landing exactly
/// on the plane is nudged to +1e-12 * sqrt(l) so tangential touches count
/// once and the crossing count stays even for every closed loop.
std::vector<Vec2> plane_crossings(const WorldlineLoop& loop,
                                  const LoopPlacement& placement);

/// True if some crossing of the placed loop with the z = 0 plane lies
/// inside the region (boundary inclusive).
bool loop_hits_region(const WorldlineLoop& loop, const LoopPlacement& placement,
                      const PlacedBody& region);

/// Recipe for a reproducible loop ensemble: for every l grid point,
/// n_loops independent loops, each dropped at n_centers uniform centers in
/// a box padded by 3*sqrt(l) around the regions under study.  The same
/// recipe always produces the same samples, independent of evaluation
/// order.
struct WorldlineEnsemble {
    std::vector<double> l_grid;
    int n_loops = 64;
    int n_centers = 256;
    std::uint64_t seed = 1234;
    int loop_steps = 64;
};

/// One l grid point of the Dirichlet estimator.
struct DirichletRow {
    double l = 0.0;
    double estimate = 0.0;   ///< box volume * hit fraction (no l weight)
    double std_error = 0.0;
    long long n_samples = 0;
    long long hits = 0;
};

/// Monte Carlo estimate of the coupling entropy, up to a constant that the
/// polymer representation leaves undetermined.
struct DirichletEstimate {
    double value = 0.0;      ///< sum over the grid of l^(-5/2) dl * estimate
    double std_error = 0.0;
    long long hits = 0;      ///< total joint hits across the grid
    bool reliable = false;   ///< false when no sample hit both regions
    std::vector<DirichletRow> rows;
};

/// Dirichlet-limit coupling entropy between two disjoint plane regions:
/// the weighted fraction of (loop, placement) samples that pierce both A
/// and B, integrated over loop sizes with the scale measure l^(-5/2) dl on
/// the given geometric grid.  Matches -dF at lambda = 0 only up to the
/// undetermined overall constant, so only trends and ratios are
/// comparable.  Requires a positive increasing l_grid, positive counts,
/// and disjoint regions.
DirichletEstimate dirichlet_delta_S(const PlacedBody& a, const PlacedBody& b,
                                    const WorldlineEnsemble& ensemble);

/// Joint hit counts for the three-region counting check.
struct SsaCounts {
    long long n_abc = 0;     ///< samples piercing A, B and C
    long long n_ac = 0;      ///< samples piercing A and C (B free)
    long long n_samples = 0;
};

/// Counts, over one shared ensemble, how many samples pierce all three
/// regions versus just the outer pair.  n_abc <= n_ac holds per sample by
/// event inclusion, not merely on average.  Coincident regions are
/// permitted (equal regions give equal hit flags), which makes degenerate
/// checks like C = A exact.
SsaCounts dirichlet_ssa_counts(const PlacedBody& a, const PlacedBody& b,
                               const PlacedBody& c,
                               const WorldlineEnsemble& ensemble);

} // namespace qmi
