#include "henon/interp.hpp"

#include "henon/ode.hpp"

#include <algorithm>

namespace henon {

std::size_t locate_interval(std::span<const double> x, double q) {
    if (x.size() < 2) throw std::invalid_argument("locate_interval: need >= 2 nodes");
    auto it = std::upper_bound(x.begin(), x.end(), q);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i == 0) return 0;
    if (i >= x.size()) return x.size() - 2;
    return i - 1;
}

double hermite_eval(std::span<const double> x, std::span<const double> y,
                    std::span<const double> dy, double q) {
    const std::size_t i = locate_interval(x, q);
    return detail::hermite_value(x[i], y[i], dy[i], x[i + 1], y[i + 1], dy[i + 1], q);
}

double hermite_eval_derivative(std::span<const double> x, std::span<const double> y,
                               std::span<const double> dy, double q) {
    const std::size_t i = locate_interval(x, q);
    return detail::hermite_derivative(x[i], y[i], dy[i], x[i + 1], y[i + 1], dy[i + 1],
                                      q);
}

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("pchip_slopes: bad sizes");
    std::vector<double> d(n, 0.0);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2 * h[i] + h[i - 1];
            const double w2 = h[i] + 2 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // one-sided ends, clipped for shape preservation
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

double pchip_eval(std::span<const double> x, std::span<const double> y,
                  std::span<const double> slopes, double q) {
    const std::size_t i = locate_interval(x, q);
    return detail::hermite_value(x[i], y[i], slopes[i], x[i + 1], y[i + 1],
                                 slopes[i + 1], q);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.residual_rms = std::sqrt(ss_res / n);
    const double dof = (n > 2) ? static_cast<double>(n - 2) : 1.0;
    const double s2 = ss_res / dof;
    fit.se_slope = std::sqrt(s2 / sxx);
    fit.se_intercept = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    fit.cov_ab = -mx * s2 / sxx;
    return fit;
}

} // namespace henon
