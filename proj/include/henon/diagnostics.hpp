#pragma once

// The instruments: zero numbers, energy, the first Dirichlet eigenpair and
// the Kaplan functional, weighted sup norms, envelope fits, a priori bounds,
// and snapshot rescaling.

#include "henon/exponents.hpp"
#include "henon/grid.hpp"
#include "henon/solver.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace henon {

// Count of strict sign alternations after zeroing entries with
// |f| <= eps * max|f| over the window.
int zero_number(std::span<const double> f, double eps = 1e-9);

struct DiagnosticSeries {
    std::string name;
    std::vector<std::pair<double, double>> samples; // (t, value), t increasing
};

struct EigenPair {
    double lambda1 = 0;
    std::vector<double> phi1; // normalized so the ball integral is 1
};

// Inverse power iteration on the discrete radial Laplacian.
EigenPair compute_eigenpair(const RadialGrid& grid, int max_iter = 200,
                            double tol = 1e-13);

// J[u] = 1/2 int |grad u|^2 - 1/(p+1) int r^sigma u^{p+1}; gradient by
// centered differences on the grid.
double energy(std::span<const double> u, const RadialGrid& grid,
              const ProblemParams& params);
double energy(const Snapshot& snapshot, const RadialGrid& grid,
              const ProblemParams& params);

double kaplan(std::span<const double> u, const RadialGrid& grid,
              const EigenPair& pair);
double kaplan(const Snapshot& snapshot, const RadialGrid& grid,
              const EigenPair& pair);

// lambda1^{1/(p-1)} * integral of |x|^{-sigma/(p-1)} over the ball
// (closed form); requires p > 1 + sigma/N.
double kaplan_bound(const ProblemParams& params, const EigenPair& pair);

struct WeightedSup {
    double value = 0;
    double r_argmax = 0;
};

// max over nodes r > 0 of r^{sigma/(p-1)} u(r); the origin contributes 0.
WeightedSup weighted_sup(std::span<const double> u, const RadialGrid& grid,
                         const ProblemParams& params);

// Smallest C with  r^{sigma/(p-1)} u <= C (1 + t^{-1/(p-1)} + r^{-2/(p-1)})
// over all retained snapshots and nodes r > 0.
double sde_envelope_fit(const RunRecord& record);

struct PhanReport {
    double C = 0;       // smallest envelope constant over 0 < r < R/2
    double T_used = 0;
};

// Same with the (T-t)^{-1/(p-1)} term included, restricted to r < R/2.
PhanReport phan_envelope_check(const RunRecord& record, double T_horizon);

struct AprioriReport {
    double c_star = 0;
    double l2_bound = 0;        // rhs of the L2 estimate
    double worst_l2_margin = 0; // min over retained times of bound - value
    double worst_react_margin = 0;
    bool l2_ok = false;
    bool react_ok = false;
};

// A priori bounds for global-in-time runs; rejects blow-up records.
AprioriReport apriori_check(const RunRecord& record);

struct RescaledField {
    double t = 0;
    double lambda = 0;
    std::vector<double> rho; // fixed grid
    std::vector<double> v;   // u(lambda rho, t) / M(t)
};

// v_j(rho) = u(lambda rho, t_j) / M(t_j),  lambda = M^{-(p-1)/(2+sigma)},
// resampled onto a uniform rho grid by monotone interpolation.
RescaledField rescale_snapshot(const RunRecord& record, double t_j,
                               double rho_max = 10.0, int n_rho = 501);

struct ZeroSeriesAudit {
    int increases = 0; // recorded upward jumps (grazing or genuine)
    std::vector<std::pair<double, std::pair<int, int>>> events; // (t, from->to)
};

// Monotonicity audit of a recorded integer zero-number series.
ZeroSeriesAudit audit_zero_series(std::span<const SeriesRow> rows, bool use_ut);

} // namespace henon
