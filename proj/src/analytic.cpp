#include "qmi/analytic.hpp"
#include "qmi/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace qmi {

namespace {
constexpr double kPi = std::numbers::pi;
}

double qmi_monopole(const std::function<double(double)>& cap_a,
                    const std::function<double(double)>& cap_b, double d) {
    if (!(d > 0.0)) {
        throw InvalidArgumentError("separation must be positive");
    }
    if (!cap_a || !cap_b) {
        throw InvalidArgumentError("capacitance function is empty");
    }
    // lambda = t/(1-t) maps [0, inf) to [0, 1); a 1/lambda^2 capacitance
    // product tail leaves the transformed integrand bounded at t = 1.
    auto f = [&](double t) {
        const double om = 1.0 - t;
        const double lambda = t / om;
        return cap_a(lambda) * cap_b(lambda) / (om * om);
    };
    double err = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, 0.0, 1.0, 12, 1e-11, &err);
    if (!std::isfinite(integral) || err > 1e-6 * std::abs(integral)) {
        throw InvalidArgumentError(
            "capacitance product integral did not converge");
    }
    return integral / (16.0 * kPi * kPi * d * d);
}

double qmi_monopole(const MonopoleModel& model) {
    return qmi_monopole(model.cap_a, model.cap_b, model.d);
}

double qmi_discs_far(double r_a, double r_b, double d) {
    if (!(r_a > 0.0) || !(r_b > 0.0) || !(d > 0.0)) {
        throw InvalidArgumentError("radii and separation must be positive");
    }
    const double denom = 32.0 * kPi * kPi * kPi * d * d;
    if (std::abs(r_b - r_a) < 1e-9 * r_a) {
        const double r = 0.5 * (r_a + r_b);
        return r * r * r / denom;
    }
    // R_A^2 R_B^2 ln(R_B/R_A) / (R_B - R_A) = R_A R_B^2 log1p(e)/e with
    // e = (R_B - R_A)/R_A, which stays accurate arbitrarily close to the
    // branch threshold.
    const double e = (r_b - r_a) / r_a;
    return r_a * r_b * r_b * (std::log1p(e) / e) / denom;
}

} // namespace qmi
