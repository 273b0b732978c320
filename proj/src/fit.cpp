#include "qmi/fit.hpp"
#include "qmi/errors.hpp"

#include <cmath>
#include <cstddef>

namespace qmi {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw InvalidArgumentError("fit data lengths differ");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw InvalidArgumentError("need at least 2 points to fit a line");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    // Centered sums keep the normal equations well conditioned.
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw InvalidArgumentError("abscissae are all equal");
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    f.goodness = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0)
                               : 1.0 - ss_res / ss_tot;
    return f;
}

PowerFit fit_power_law(const std::vector<double>& x,
                       const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) {
            throw InvalidArgumentError("power-law abscissae must be positive");
        }
        lx[i] = std::log(x[i]);
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) {
            throw InvalidArgumentError("power-law values must be positive");
        }
        ly[i] = std::log(y[i]);
    }
    const LineFit line = fit_line(lx, ly);
    PowerFit f;
    f.exponent = line.slope;
    f.amplitude = std::exp(line.intercept);
    f.goodness = line.goodness;
    return f;
}

LineFit fit_short_distance_law(const std::vector<SweepPoint>& sweep,
                               double r) {
    if (!(r > 0.0)) {
        throw InvalidArgumentError("reference length must be positive");
    }
    std::vector<double> x, y;
    for (const SweepPoint& p : sweep) {
        if (!(p.d > 0.0)) {
            throw InvalidArgumentError("separations must be positive");
        }
        if (p.d <= 0.2 * r) {
            x.push_back(std::log(r / p.d));
            y.push_back(p.value);
        }
    }
    if (x.size() < 4) {
        throw InvalidArgumentError(
            "need at least 4 sweep points with d <= 0.2 R");
    }
    return fit_line(x, y);
}

} // namespace qmi
