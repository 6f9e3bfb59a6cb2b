#pragma once

// Backward self-similar profiles: solve
//   phi'' + ((N-1)/r - r/2) phi' - (beta/2) phi + r^sigma phi^p = 0,
//   phi(0) = alpha0, phi'(0) = 0,  beta = (2+sigma)/(p-1),
// classify the shooting outcome, locate the admissible profile by bisection,
// and realise the space-time solution (T-t)^{-beta/2} phi(r/sqrt(T-t)).

#include "henon/exponents.hpp"
#include "henon/profiles.hpp"

#include <optional>
#include <vector>

namespace henon {

enum class ShotOutcome {
    CrossedZero,   // phi hit zero before r_max
    GrewUnbounded, // left the admissible band upward
    TailResolved,  // positive with a resolved r^{-beta} tail
    Undetermined,  // positive to r_max, no resolved tail
};

const char* shot_outcome_name(ShotOutcome o);

struct SelfSimilarProfile {
    ProfileSolution profile; // kind == SelfSimilar, m == alpha0
    double alpha0 = 0;
    bool admissible = false;
    std::optional<double> m_far;
    double m_far_radius = 0;      // centre of the tail-fit window
    double tail_fit_residual = 0; // rms of the tail model fit, relative
    ShotOutcome outcome = ShotOutcome::Undetermined;
    std::optional<double> zero_crossing;
};

SelfSimilarProfile integrate_selfsimilar(const ProblemParams& params, double alpha0,
                                         double r_max = 50.0, double tol = 1e-10);

struct ShotSummary {
    double alpha0 = 0;
    ShotOutcome outcome = ShotOutcome::Undetermined;
    double detail = 0; // crossing radius / exit radius
};

struct FindProfileResult {
    std::optional<SelfSimilarProfile> profile;
    std::vector<ShotSummary> sweep; // evidence, admissible or not
    int bisections = 0;
};

// Sweeps n_sweep log-spaced alpha0 values over [alpha_lo, alpha_hi]; where
// adjacent outcomes differ, bisects to the borderline trajectory and reads
// the far-field coefficient there.  An empty `profile` is the not-found
// verdict, backed by the sweep evidence.
FindProfileResult find_profile(const ProblemParams& params, double alpha_lo,
                               double alpha_hi, double tol = 1e-10,
                               int n_sweep = 200, double r_max = 50.0);

struct BackwardSolution {
    SelfSimilarProfile profile;
    ProblemParams params;
    double T = 1.0; // blow-up time
};

// Phi(r, t) = (T-t)^{-(2+sigma)/(2(p-1))} phi(r / sqrt(T-t)), t < T.
double evaluate_backward(const BackwardSolution& sol, double r, double t);

// Finite-difference residual of the full equation under the ansatz, sampled
// over [r_lo, r_hi] x [t_lo, t_hi]; returns the max relative residual.
double backward_pde_residual(const BackwardSolution& sol, double r_lo, double r_hi,
                             double t_lo, double t_hi, int n_r = 24, int n_t = 8);

// Residual of the profile equation itself on the stored grid (finite
// differences of the stored derivative, as for steady profiles).
ResidualReport selfsimilar_ode_residual(const SelfSimilarProfile& profile);

} // namespace henon
