#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmi/errors.hpp"
#include "qmi/simd/kernels.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace qmi;

namespace {

struct PointSet {
    std::vector<double> x, y, w;
};

PointSet random_points(std::size_t n, std::uint64_t seed, double x_off) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointSet p;
    for (std::size_t i = 0; i < n; ++i) {
        p.x.push_back(x_off + u(rng));
        p.y.push_back(u(rng));
        p.w.push_back(0.5 + 0.25 * u(rng));
    }
    return p;
}

double brute_sum(const PointSet& a, const PointSet& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        for (std::size_t j = 0; j < b.x.size(); ++j) {
            s += a.w[i] * b.w[j] /
                 std::hypot(a.x[i] - b.x[j], a.y[i] - b.y[j]);
        }
    }
    return s;
}

struct ForcedImpl {
    explicit ForcedImpl(simd::Impl impl) { simd::force_impl(impl); }
    ~ForcedImpl() { simd::reset_impl(); }
};

} // namespace

TEST_CASE("dispatch reports a usable implementation") {
    const simd::Impl impl = simd::active_impl();
    CHECK((impl == simd::Impl::scalar || impl == simd::Impl::avx2));
    CHECK(std::string(simd::impl_name(simd::Impl::scalar)) == "scalar");
    CHECK(std::string(simd::impl_name(simd::Impl::avx2)) == "avx2");
    if (impl == simd::Impl::avx2) {
        CHECK(simd::cpu_has_avx2());
        CHECK(simd::built_with_avx2());
    }
    if (!(simd::built_with_avx2() && simd::cpu_has_avx2())) {
        CHECK_THROWS_AS(simd::force_impl(simd::Impl::avx2), InvalidArgumentError);
    }
}

TEST_CASE("coulomb_pair_sum matches a brute-force reference") {
    const PointSet a = random_points(37, 11, 0.0);
    const PointSet b = random_points(53, 12, 4.0);
    const double ref = brute_sum(a, b);
    const double got = simd::coulomb_pair_sum(a.x.data(), a.y.data(), a.w.data(),
                                              a.x.size(), b.x.data(), b.y.data(),
                                              b.w.data(), b.x.size());
    CHECK(got == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("scalar and avx2 coulomb sums agree to accumulation roundoff") {
    if (!(simd::built_with_avx2() && simd::cpu_has_avx2())) {
        MESSAGE("avx2 unavailable; skipping");
        return;
    }
    for (std::size_t na : {1u, 3u, 4u, 17u, 64u, 200u}) {
        for (std::size_t nb : {1u, 2u, 5u, 31u, 128u}) {
            const PointSet a = random_points(na, 100 + na, 0.0);
            const PointSet b = random_points(nb, 200 + nb, 3.5);
            double s_scalar, s_avx2;
            {
                ForcedImpl f(simd::Impl::scalar);
                s_scalar = simd::coulomb_pair_sum(a.x.data(), a.y.data(), a.w.data(),
                                                  na, b.x.data(), b.y.data(),
                                                  b.w.data(), nb);
            }
            {
                ForcedImpl f(simd::Impl::avx2);
                s_avx2 = simd::coulomb_pair_sum(a.x.data(), a.y.data(), a.w.data(),
                                                na, b.x.data(), b.y.data(),
                                                b.w.data(), nb);
            }
            CHECK(s_avx2 == doctest::Approx(s_scalar).epsilon(5e-13));
        }
    }
}

TEST_CASE("plane_crossings finds interpolated crossing points") {
    // Closed square loop in the xz plane crossing z=0 twice.
    const std::vector<double> px{0.0, 1.0, 1.0, 0.0, 0.0};
    const std::vector<double> py{0.0, 0.0, 0.0, 0.0, 0.0};
    const std::vector<double> pz{0.5, 0.5, -0.5, -0.5, 0.5};
    std::vector<double> ox(4), oy(4);
    const std::size_t n = simd::plane_crossings(px.data(), py.data(), pz.data(),
                                                px.size(), 2.0, 10.0, -3.0, 0.0,
                                                1e-12 * 2.0, ox.data(), oy.data());
    REQUIRE(n == 2);
    // Segment 1->2 crosses at its midpoint x=1; segment 3->0 at x=0.
    CHECK(ox[0] == doctest::Approx(10.0 + 2.0 * 1.0).epsilon(1e-14));
    CHECK(oy[0] == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(ox[1] == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("plane_crossings nudges on-plane vertices instead of double counting") {
    // Vertex 1 lands exactly on the plane; the path dips below afterwards.
    const std::vector<double> px{0.0, 1.0, 2.0, 0.0};
    const std::vector<double> py{0.0, 0.0, 0.0, 0.0};
    const std::vector<double> pz{1.0, 0.0, -1.0, 1.0};
    std::vector<double> ox(3), oy(3);
    const std::size_t n = simd::plane_crossings(px.data(), py.data(), pz.data(),
                                                px.size(), 1.0, 0.0, 0.0, 0.0,
                                                1e-12, ox.data(), oy.data());
    // eps pushes the vertex to +z: one down-crossing past it, one up-crossing
    // on the closing segment.
    REQUIRE(n == 2);
    CHECK(ox[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scalar and avx2 crossings are bit-identical") {
    if (!(simd::built_with_avx2() && simd::cpu_has_avx2())) {
        MESSAGE("avx2 unavailable; skipping");
        return;
    }
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t steps = 3 + static_cast<std::size_t>(rng() % 70);
        std::vector<double> px(steps + 1), py(steps + 1), pz(steps + 1);
        for (std::size_t i = 0; i < steps; ++i) {
            px[i] = g(rng);
            py[i] = g(rng);
            pz[i] = g(rng);
        }
        px[steps] = px[0];
        py[steps] = py[0];
        pz[steps] = pz[0];
        const double scale = 0.5 + 0.1 * rep;
        const double cz = g(rng) * 0.3;
        std::vector<double> xs(steps), ys(steps), xa(steps), ya(steps);
        std::size_t ns, na;
        {
            ForcedImpl f(simd::Impl::scalar);
            ns = simd::plane_crossings(px.data(), py.data(), pz.data(), px.size(),
                                       scale, 1.5, -0.5, cz, 1e-12 * scale,
                                       xs.data(), ys.data());
        }
        {
            ForcedImpl f(simd::Impl::avx2);
            na = simd::plane_crossings(px.data(), py.data(), pz.data(), px.size(),
                                       scale, 1.5, -0.5, cz, 1e-12 * scale,
                                       xa.data(), ya.data());
        }
        REQUIRE(ns == na);
        for (std::size_t k = 0; k < ns; ++k) {
            CHECK(xs[k] == xa[k]);
            CHECK(ys[k] == ya[k]);
        }
    }
}

TEST_CASE("crossing count parity: closed loops cross an even number of times") {
    std::mt19937_64 rng(123);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t steps = 8 + (rng() % 64);
        std::vector<double> px(steps + 1), py(steps + 1), pz(steps + 1);
        for (std::size_t i = 0; i < steps; ++i) {
            px[i] = g(rng);
            py[i] = g(rng);
            pz[i] = g(rng);
        }
        px[steps] = px[0];
        py[steps] = py[0];
        pz[steps] = pz[0];
        std::vector<double> ox(steps), oy(steps);
        const std::size_t n = simd::plane_crossings(px.data(), py.data(), pz.data(),
                                                    px.size(), 1.0, 0.0, 0.0, 0.2,
                                                    1e-12, ox.data(), oy.data());
        CHECK(n % 2 == 0);
    }
}
