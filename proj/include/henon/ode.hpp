#pragma once

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) for small systems,
// with cubic-Hermite dense output and sign-crossing events.  Both profile
// ODEs in this project are launched slightly off r = 0 with a series,
// integrated outward, and sampled onto a prescribed grid, so the stepper
// exposes exactly that workflow.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace henon::detail {

using State2 = std::array<double, 2>;

enum class OdeOutcome {
    ReachedEnd,
    EventHit,      // the event function crossed zero; stopped there
    StoppedEarly,  // stop predicate fired at an accepted step
    StepUnderflow,
    MaxSteps,
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-14;
    double h_init = 1e-4;
    double h_min = 1e-300;
    double h_max = std::numeric_limits<double>::infinity();
    long max_steps = 2'000'000;
};

struct OdeResult {
    OdeOutcome outcome = OdeOutcome::ReachedEnd;
    double x_end = 0;      // where integration actually stopped
    State2 y_end{};
    long n_accepted = 0;
    long n_rejected = 0;
};

// Cubic Hermite interpolation inside one accepted step.
inline double hermite_value(double x0, double y0, double d0, double x1, double y1,
                            double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

inline double hermite_derivative(double x0, double y0, double d0, double x1, double y1,
                                 double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * h * d0 +
            (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * h * d1) / h;
}

// rhs:      void(double x, const State2& y, State2& dydx)
// on_sample invoked at every requested sample point in order (may be empty)
// event:    double(x, y); integration stops where it crosses zero (optional)
// stop:     bool(x, y); checked at accepted steps (optional)
template <class Rhs>
OdeResult integrate_dopri5(Rhs&& rhs, double x0, double x1, State2 y,
                           const OdeOptions& opt,
                           const std::vector<double>& samples,
                           const std::function<void(double, const State2&)>& on_sample,
                           const std::function<double(double, const State2&)>& event,
                           const std::function<bool(double, const State2&)>& stop) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeResult res;
    double x = x0;
    double h = std::min(opt.h_init, x1 - x0);
    State2 k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
    rhs(x, y, k1);
    std::size_t next_sample = 0;
    while (next_sample < samples.size() && samples[next_sample] < x0) ++next_sample;
    double ev_prev = event ? event(x, y) : 0.0;

    for (long iter = 0; iter < opt.max_steps; ++iter) {
        if (x >= x1) {
            res.outcome = OdeOutcome::ReachedEnd;
            res.x_end = x;
            res.y_end = y;
            return res;
        }
        h = std::min(h, x1 - x);
        h = std::min(h, opt.h_max);
        if (h < opt.h_min) {
            res.outcome = OdeOutcome::StepUnderflow;
            res.x_end = x;
            res.y_end = y;
            return res;
        }

        for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(x + c2 * h, ytmp, k2);
        for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(x + c3 * h, ytmp, k3);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(x + c4 * h, ytmp, k4);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(x + c5 * h, ytmp, k5);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(x + h, ytmp, k6);
        for (int i = 0; i < 2; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                  b6 * k6[i]);
        rhs(x + h, ynew, k7);
        for (int i = 0; i < 2; ++i)
            yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                           e6 * k6[i] + e7 * k7[i]);

        double err = 0;
        bool finite = true;
        for (int i = 0; i < 2; ++i) {
            if (!std::isfinite(ynew[i])) finite = false;
            const double sc =
                opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err = std::max(err, std::abs(yerr[i]) / sc);
        }

        if (!finite || err > 1.0) {
            const double shrink =
                finite ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= shrink;
            ++res.n_rejected;
            continue;
        }

        const double x_new = x + h;
        ++res.n_accepted;

        // dense output at requested sample points inside (x, x_new]
        while (next_sample < samples.size() && samples[next_sample] <= x_new) {
            const double xs = samples[next_sample];
            State2 ys;
            for (int i = 0; i < 2; ++i)
                ys[i] = hermite_value(x, y[i], k1[i], x_new, ynew[i], k7[i], xs);
            if (on_sample) on_sample(xs, ys);
            ++next_sample;
        }

        if (event) {
            const double ev_new = event(x_new, ynew);
            if (ev_prev > 0.0 && ev_new <= 0.0) {
                // locate the crossing by bisection on the dense output
                double lo = x, hi = x_new;
                for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    State2 ym;
                    for (int i = 0; i < 2; ++i)
                        ym[i] = hermite_value(x, y[i], k1[i], x_new, ynew[i], k7[i], mid);
                    if (event(mid, ym) > 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                State2 yc;
                for (int i = 0; i < 2; ++i)
                    yc[i] = hermite_value(x, y[i], k1[i], x_new, ynew[i], k7[i], hi);
                res.outcome = OdeOutcome::EventHit;
                res.x_end = hi;
                res.y_end = yc;
                return res;
            }
            ev_prev = ev_new;
        }

        x = x_new;
        y = ynew;
        k1 = k7; // FSAL

        if (stop && stop(x, y)) {
            res.outcome = OdeOutcome::StoppedEarly;
            res.x_end = x;
            res.y_end = y;
            return res;
        }

        const double grow = std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
        h *= grow;
    }
    res.outcome = OdeOutcome::MaxSteps;
    res.x_end = x;
    res.y_end = y;
    return res;
}

} // namespace henon::detail
