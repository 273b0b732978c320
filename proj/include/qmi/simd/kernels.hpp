#pragma once

#include <cstddef>

namespace qmi::simd {

enum class Impl { scalar = 0, avx2 = 1 };

const char* impl_name(Impl impl);

/// True if the running CPU supports AVX2 (independent of how we were built).
bool cpu_has_avx2();
/// True if the AVX2 translation unit was compiled in.
bool built_with_avx2();

/// Implementation chosen at first use: QMI_SIMD=scalar|avx2 in the
/// environment wins, otherwise AVX2 when both built and supported.
Impl active_impl();

/// Test hook.  Throws InvalidArgumentError when the requested variant is
/// unavailable on this machine/build.
void force_impl(Impl impl);
void reset_impl();

/// sum over i,j of aw[i]*bw[j] / distance((ax[i],ay[i]), (bx[j],by[j])).
/// Both point sets live in the z=0 plane and must not contain coincident
/// cross pairs (the caller keeps panel pairs separated).
double coulomb_pair_sum(const double* ax, const double* ay, const double* aw,
                        std::size_t na,
                        const double* bx, const double* by, const double* bw,
                        std::size_t nb);

/// Intersections of a closed polyline with the z=0 plane after the rigid
/// placement p -> center + scale*p.  The polyline has n_pts points with
/// pts[n_pts-1] == pts[0].  A placed vertex landing exactly on the plane is
/// nudged to +eps_z so crossings are counted without double-hits.  Returns
/// the number of crossings; their xy coordinates go to out_x/out_y, which
/// must each hold n_pts-1 doubles.
std::size_t plane_crossings(const double* px, const double* py, const double* pz,
                            std::size_t n_pts, double scale,
                            double cx, double cy, double cz, double eps_z,
                            double* out_x, double* out_y);

} // namespace qmi::simd
