#pragma once

#include <vector>

namespace qmi {

/// Ordinary least-squares line with its coefficient of determination.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double goodness = 0.0; // R^2; 1 for an exact fit
};

/// Fit y = intercept + slope * x.  Needs >= 2 points and non-constant x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Fit y = amplitude * x^exponent by a line fit in log-log coordinates.
/// All data must be strictly positive.
struct PowerFit {
    double exponent = 0.0;
    double amplitude = 0.0;
    double goodness = 0.0;
};

PowerFit fit_power_law(const std::vector<double>& x,
                       const std::vector<double>& y);

/// One sweep sample: separation and the integrated value there.
struct SweepPoint {
    double d = 0.0;
    double value = 0.0;
};

/// Least-squares fit of value against ln(R/d), restricted to the
/// short-distance part of the sweep (d <= 0.2 R).  Throws
/// InvalidArgumentError when fewer than 4 points qualify.
LineFit fit_short_distance_law(const std::vector<SweepPoint>& sweep, double r);

} // namespace qmi
