#include "qmi/simd/kernels.hpp"
#include "qmi/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qmi::simd {

namespace detail {

double coulomb_pair_sum_scalar(const double*, const double*, const double*, std::size_t,
                               const double*, const double*, const double*, std::size_t);
std::size_t plane_crossings_scalar(const double*, const double*, const double*,
                                   std::size_t, double, double, double, double, double,
                                   double*, double*);
#ifdef QMI_HAVE_AVX2_TU
double coulomb_pair_sum_avx2(const double*, const double*, const double*, std::size_t,
                             const double*, const double*, const double*, std::size_t);
std::size_t plane_crossings_avx2(const double*, const double*, const double*,
                                 std::size_t, double, double, double, double, double,
                                 double*, double*);
#endif

} // namespace detail

namespace {

// -1 = undecided, otherwise static_cast<int>(Impl).
std::atomic<int> g_impl{-1};

Impl detect() {
    if (const char* env = std::getenv("QMI_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Impl::scalar;
        if (v == "avx2") {
            if (built_with_avx2() && cpu_has_avx2()) return Impl::avx2;
            // Unsatisfiable request: fall through to the safe default.
        }
    }
    return (built_with_avx2() && cpu_has_avx2()) ? Impl::avx2 : Impl::scalar;
}

Impl current() {
    int v = g_impl.load(std::memory_order_acquire);
    if (v < 0) {
        const Impl d = detect();
        g_impl.store(static_cast<int>(d), std::memory_order_release);
        return d;
    }
    return static_cast<Impl>(v);
}

} // namespace

const char* impl_name(Impl impl) {
    return impl == Impl::avx2 ? "avx2" : "scalar";
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool built_with_avx2() {
#ifdef QMI_HAVE_AVX2_TU
    return true;
#else
    return false;
#endif
}

Impl active_impl() { return current(); }

void force_impl(Impl impl) {
    if (impl == Impl::avx2 && !(built_with_avx2() && cpu_has_avx2())) {
        throw InvalidArgumentError("avx2 kernels unavailable on this build/machine");
    }
    g_impl.store(static_cast<int>(impl), std::memory_order_release);
}

void reset_impl() { g_impl.store(-1, std::memory_order_release); }

double coulomb_pair_sum(const double* ax, const double* ay, const double* aw,
                        std::size_t na,
                        const double* bx, const double* by, const double* bw,
                        std::size_t nb) {
#ifdef QMI_HAVE_AVX2_TU
    if (current() == Impl::avx2) {
        return detail::coulomb_pair_sum_avx2(ax, ay, aw, na, bx, by, bw, nb);
    }
#endif
    return detail::coulomb_pair_sum_scalar(ax, ay, aw, na, bx, by, bw, nb);
}

std::size_t plane_crossings(const double* px, const double* py, const double* pz,
                            std::size_t n_pts, double scale,
                            double cx, double cy, double cz, double eps_z,
                            double* out_x, double* out_y) {
#ifdef QMI_HAVE_AVX2_TU
    if (current() == Impl::avx2) {
        return detail::plane_crossings_avx2(px, py, pz, n_pts, scale, cx, cy, cz,
                                            eps_z, out_x, out_y);
    }
#endif
    return detail::plane_crossings_scalar(px, py, pz, n_pts, scale, cx, cy, cz,
                                          eps_z, out_x, out_y);
}

} // namespace qmi::simd
