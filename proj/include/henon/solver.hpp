#pragma once

// IMEX time stepping for  u_t = Lap(u) + r^sigma u^p  on a radial grid with
// a Dirichlet boundary: diffusion implicit (tridiagonal solve), reaction
// explicit under a reaction CFL bound.  Blow-up manifests as collapse of the
// admissible time step, which the run classifier requires in conjunction
// with the sup norm crossing M_blow.

#include "henon/exponents.hpp"
#include "henon/grid.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace henon {

struct Snapshot {
    double t = 0;
    std::vector<double> u;
};

// Conservative second-order discretisation of u'' + (N-1)u'/r with the
// symmetric origin limit 2N(u[1]-u[0])/r[1]^2 and a Dirichlet row at r = R.
// Exact on radial quadratics a + b r^2.
std::vector<double> discrete_radial_laplacian(std::span<const double> u,
                                              const RadialGrid& grid);

// L u|_i = sub_i u_{i-1} - (sub_i + sup_i) u_i + sup_i u_{i+1}; index 0 is
// the origin row (sub_0 = 0), the last row is identically zero (Dirichlet).
struct LaplacianStencil {
    std::vector<double> sub, sup;
};
LaplacianStencil radial_laplacian_stencil(const RadialGrid& grid);

struct StepRejected : std::runtime_error {
    explicit StepRejected(const std::string& what) : std::runtime_error(what) {}
};

// One IMEX step.  Negativity beyond clamp_tol * max|u| is a rejection
// (dt too large); magnitudes below it are clamped to zero.
Snapshot step(const Snapshot& snapshot, double dt, const ProblemParams& params,
              const RadialGrid& grid, bool reaction_enabled = true,
              double clamp_tol = 1e-12);

struct SolveControls {
    double t_max = 1.0;
    double M_blow = 1e8;
    double dt_floor = 1e-14;
    double M_decay = 1e-8;
    double decay_dwell_frac = 0.05; // dwell below M_decay before Decayed
    double dt_init = 1e-6;
    double dt_max = 0; // 0 -> t_max / 1000
    double c_safe = 0.5;
    int record_every = 1;
    bool reaction_enabled = true;
    double clamp_tol = 1e-12;
    long max_steps = 20'000'000;
    double retain_growth_factor = 2.0; // snapshot retained per M-fold growth
    int retain_uniform = 40;           // uniform-in-time retained snapshots
    int max_retained = 768;

    double effective_dt_max() const { return dt_max > 0 ? dt_max : t_max / 1000.0; }
};

enum class RunStatus { Decayed, BoundedAtHorizon, BlowUp, StepFailure };
const char* run_status_name(RunStatus s);
RunStatus run_status_from_name(const std::string& name);

struct SeriesRow {
    double t = 0;
    double dt = 0;
    double M = 0;         // sup norm
    double r_argmax = 0;  // radius attaining it
    double wsup = 0;      // max of r^{sigma/(p-1)} u over r > 0
    double r_wargmax = 0;
    double J = 0;         // energy
    double l1 = 0;
    double l2 = 0;
    double kaplan = 0;    // integral of u phi1
    double react_int = 0; // running integral of r^sigma u^{p+1}
    int z_ut = 0;         // zero number of the instantaneous u_t field
    int z_uinf = -1;      // zero number of u - U_inf (-1 when undefined)
};

struct BlowupTimeFit {
    double T_est = 0;
    double T_lo = 0;
    double T_hi = 0;
    double w_used = 0; // winning rate candidate (1 or 2/(2+sigma))
    double residual_rms = 0;
    int n_samples = 0;
};

struct RunRecord {
    ProblemParams params;
    SolveControls controls;
    RadialGrid grid;
    RunStatus status = RunStatus::BoundedAtHorizon;
    std::vector<SeriesRow> rows;
    std::vector<Snapshot> snapshots; // retained states, first is u0, last is final
    double t_end = 0;
    double dt_last = 0;
    double J0 = 0;
    double lambda1 = 0;
    long steps_accepted = 0;
    long steps_rejected = 0;
    std::optional<BlowupTimeFit> blowup;
};

RunRecord simulate(const ProblemParams& params, const Snapshot& u0,
                   const SolveControls& controls, const RadialGrid& grid);

// Least-squares t-intercept of M^{-(p-1) w} for both rate candidates
// w in {1, 2/(2+sigma)}; the better fit wins.
BlowupTimeFit estimate_blowup_time(const RunRecord& record);

} // namespace henon
