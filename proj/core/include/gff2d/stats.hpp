#pragma once

#include <cstddef>
#include <vector>

namespace gff2d {

double normal_cdf(double x);
// Inverse of normal_cdf, accurate to ~1e-15 (rational approximation plus one
// Newton refinement).
double normal_quantile(double p);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval for k successes out of n trials.
Interval wilson_ci(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    Interval slope_ci;  // slope +- z * stderr
    std::size_t points = 0;
};

// Ordinary least squares of y against x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 double z = 1.959963984540054);

}  // namespace gff2d
