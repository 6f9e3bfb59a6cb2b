#pragma once

#include <span>
#include <vector>

namespace henon {

// Surface area of the unit sphere in R^N and ball volume.
double sphere_area(int N);
double ball_volume(int N, double R);

// Radial mesh on [0, R] with quadrature weights such that
// sum w_i f(r_i) ~ integral of f over the ball (trapezoidal in f, exact in
// the r^{N-1} Jacobian, so constants integrate exactly).
struct RadialGrid {
    int N = 3;
    double R = 1.0;
    double cluster = 0.5; // grading strength, 0 = uniform
    std::vector<double> r;
    std::vector<double> w;

    std::size_t size() const { return r.size(); }
    double quad(std::span<const double> f) const;
    void validate() const;
};

// Graded mesh from the smooth map xi -> xi - (cluster/2pi) sin(2pi xi):
// nodes concentrate at both ends (origin and boundary layer).
RadialGrid make_graded_grid(int N, double R, int nodes, double cluster = 0.5);

} // namespace henon
