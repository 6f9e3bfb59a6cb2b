#include "henon/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace henon {

double sphere_area(int N) {
    if (N < 1) throw std::invalid_argument("sphere_area: N must be >= 1");
    const double n = N;
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int N, double R) {
    return sphere_area(N) * std::pow(R, N) / static_cast<double>(N);
}

double RadialGrid::quad(std::span<const double> f) const {
    if (f.size() != r.size()) throw std::invalid_argument("quad: size mismatch");
    double acc = 0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += w[i] * f[i];
    return acc;
}

void RadialGrid::validate() const {
    if (r.size() < 3) throw std::invalid_argument("grid: need >= 3 nodes");
    if (r.front() != 0.0 || r.back() != R)
        throw std::invalid_argument("grid: endpoints must be 0 and R");
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (!(r[i] < r[i + 1])) throw std::invalid_argument("grid: nodes not increasing");
    for (double wi : w)
        if (wi < 0.0) throw std::invalid_argument("grid: negative weight");
}

RadialGrid make_graded_grid(int N, double R, int nodes, double cluster) {
    if (N < 1) throw std::invalid_argument("grid: N must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("grid: R must be > 0");
    if (nodes < 3) throw std::invalid_argument("grid: need >= 3 nodes");
    if (cluster < 0.0 || cluster >= 1.0)
        throw std::invalid_argument("grid: cluster must lie in [0, 1)");

    RadialGrid g;
    g.N = N;
    g.R = R;
    g.cluster = cluster;
    g.r.resize(nodes);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < nodes; ++i) {
        const double xi = static_cast<double>(i) / (nodes - 1);
        g.r[i] = R * (xi - cluster / two_pi * std::sin(two_pi * xi));
    }
    g.r.front() = 0.0;
    g.r.back() = R;

    // per-interval weights: f piecewise linear, Jacobian r^{N-1} exact
    g.w.assign(nodes, 0.0);
    const double n = N;
    const double area = sphere_area(N);
    for (int i = 0; i + 1 < nodes; ++i) {
        const double r0 = g.r[i], r1 = g.r[i + 1];
        const double h = r1 - r0;
        const double m0 = (std::pow(r1, n) - std::pow(r0, n)) / n;
        const double m1 = (std::pow(r1, n + 1.0) - std::pow(r0, n + 1.0)) / (n + 1.0);
        g.w[i] += area * (r1 * m0 - m1) / h;
        g.w[i + 1] += area * (m1 - r0 * m0) / h;
    }
    return g;
}

} // namespace henon
