#include "qmi/simd/kernels.hpp"

#include <cmath>

namespace qmi::simd::detail {

double coulomb_pair_sum_scalar(const double* ax, const double* ay, const double* aw,
                               std::size_t na,
                               const double* bx, const double* by, const double* bw,
                               std::size_t nb) {
    double acc = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        const double xi = ax[i], yi = ay[i], wi = aw[i];
        double row = 0.0;
        for (std::size_t j = 0; j < nb; ++j) {
            const double dx = xi - bx[j];
            const double dy = yi - by[j];
            row += bw[j] / std::sqrt(dx * dx + dy * dy);
        }
        acc += wi * row;
    }
    return acc;
}

std::size_t plane_crossings_scalar(const double* px, const double* py, const double* pz,
                                   std::size_t n_pts, double scale,
                                   double cx, double cy, double cz, double eps_z,
                                   double* out_x, double* out_y) {
    if (n_pts < 2) return 0;
    std::size_t count = 0;
    auto placed_z = [&](std::size_t k) {
        double z = cz + scale * pz[k];
        if (z == 0.0) z = eps_z;
        return z;
    };
    double z0 = placed_z(0);
    for (std::size_t k = 0; k + 1 < n_pts; ++k) {
        const double z1 = placed_z(k + 1);
        if ((z0 < 0.0) != (z1 < 0.0)) {
            const double t = z0 / (z0 - z1);
            out_x[count] = cx + scale * (px[k] + t * (px[k + 1] - px[k]));
            out_y[count] = cy + scale * (py[k] + t * (py[k + 1] - py[k]));
            ++count;
        }
        z0 = z1;
    }
    return count;
}

} // namespace qmi::simd::detail
