#pragma once

// Radial steady states of  U'' + (N-1)U'/r + r^sigma U^p = 0,  U'(0) = 0:
// shooting from the origin, the closed form at the critical exponent, the
// scaling family, the singular state, and intersection counting.

#include "henon/exponents.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace henon {

enum class ProfileKind { SteadyRegular, SteadySingular, SelfSimilar };

struct ProfileSolution {
    ProfileKind kind = ProfileKind::SteadyRegular;
    ProblemParams params;
    double m = 1.0;   // SteadyRegular: U(0); SelfSimilar: phi(0)
    double c = 0.0;   // SteadySingular: coefficient of r^{-beta}

    std::vector<double> r, u, du; // grid data (empty for the singular state)
    double tol = 0;
    double launch_radius = 0;
    // series u(r) = sum c_k r^{q_k} valid on [0, launch_radius]
    std::vector<std::pair<double, double>> series; // (power, coefficient)
    std::optional<double> zero_crossing;

    double eval(double rq) const;
    double eval_derivative(double rq) const;
    double window_end() const;
};

// Launch-from-origin shooting.  A profile that crosses zero before r_max is
// truncated at the crossing and reported via zero_crossing, not an error.
ProfileSolution integrate_steady(const ProblemParams& params, double m, double r_max,
                                 double tol = 1e-10);

// U_1 at p = p_S(sigma); rejects p away from the critical exponent.
double closed_form_critical(const ProblemParams& params, double r);

// U_m(r) = m * U_1(m^{(p-1)/(2+sigma)} r), resampled from a base profile
// with m = 1.
ProfileSolution rescale_profile(const ProfileSolution& base, double m);

double singular_steady(const ProblemParams& params, double r);
ProfileSolution make_singular_profile(const ProblemParams& params);

struct ResidualReport {
    double max_rel = 0;
    double rms_rel = 0;
    std::size_t n = 0;
};

// Finite-difference check of the steady equation on the stored grid.  The
// derivative series du is differenced, so the report is independent of the
// integrator's own right-hand side evaluations.
ResidualReport steady_ode_residual(const ProfileSolution& profile);

struct KormanReport {
    double k = 0;                // 2(N+sigma)/(2+sigma)
    double max_rel_residual = 0;
    std::size_t n = 0;
};

// Transforms the profile to phi(s) = U(((2+sigma)s/2)^{2/(2+sigma)}) and
// reports the residual of phi'' + (k-1)phi'/s + phi^p = 0.
KormanReport korman_transform_check(const ProfileSolution& profile);

// Sign changes of a-b on [r_lo, r_hi], refined until the count stabilises.
int count_intersections(const ProfileSolution& a, const ProfileSolution& b,
                        double r_lo, double r_hi, double eps = 1e-9);

// Single sampling pass used by count_intersections; exposed for the
// refinement-monotonicity property tests.
int count_intersections_sampled(const ProfileSolution& a, const ProfileSolution& b,
                                double r_lo, double r_hi, double eps, int n_samples);

struct TailReading {
    double coefficient = 0; // lim r^beta u(r)
    double radius = 0;      // where it was read
};

// Reads the far-field power-law coefficient where the log-log slope stays
// within 1e-3 of -beta over at least half a decade.
std::optional<TailReading> far_field_coefficient(const ProfileSolution& profile);

} // namespace henon
