#pragma once

// Grid interpolation and small regression helpers shared across modules.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace henon {

// index of the grid interval containing x (clamped to valid intervals)
std::size_t locate_interval(std::span<const double> x, double q);

// Cubic Hermite evaluation on a grid with known values and derivatives.
double hermite_eval(std::span<const double> x, std::span<const double> y,
                    std::span<const double> dy, double q);
double hermite_eval_derivative(std::span<const double> x, std::span<const double> y,
                               std::span<const double> dy, double q);

// Shape-preserving (Fritsch-Carlson) slopes for monotone interpolation of
// sampled data without derivative information.
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y);

double pchip_eval(std::span<const double> x, std::span<const double> y,
                  std::span<const double> slopes, double q);

struct LinearFit {
    double intercept = 0;
    double slope = 0;
    double se_intercept = 0;
    double se_slope = 0;
    double cov_ab = 0;       // covariance of (intercept, slope)
    double residual_rms = 0;
    std::size_t n = 0;
};

// Ordinary least squares y = a + b x with standard errors.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

} // namespace henon
