#include "henon/solver.hpp"

#include "henon/diagnostics.hpp"
#include "henon/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace henon {

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Decayed: return "decayed";
        case RunStatus::BoundedAtHorizon: return "bounded_at_horizon";
        case RunStatus::BlowUp: return "blow_up";
        case RunStatus::StepFailure: return "step_failure";
    }
    return "?";
}

RunStatus run_status_from_name(const std::string& name) {
    if (name == "decayed") return RunStatus::Decayed;
    if (name == "bounded_at_horizon") return RunStatus::BoundedAtHorizon;
    if (name == "blow_up") return RunStatus::BlowUp;
    if (name == "step_failure") return RunStatus::StepFailure;
    throw std::invalid_argument("unknown run status: " + name);
}

LaplacianStencil radial_laplacian_stencil(const RadialGrid& g) {
    const std::size_t n = g.size();
    const double N = g.N;
    LaplacianStencil st;
    st.sub.assign(n, 0.0);
    st.sup.assign(n, 0.0);
    st.sup[0] = 2.0 * N / (g.r[1] * g.r[1]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double rm = 0.5 * (g.r[i - 1] + g.r[i]);
        const double rp = 0.5 * (g.r[i] + g.r[i + 1]);
        const double vol = (std::pow(rp, N) - std::pow(rm, N)) / N;
        st.sub[i] = std::pow(rm, N - 1.0) / ((g.r[i] - g.r[i - 1]) * vol);
        st.sup[i] = std::pow(rp, N - 1.0) / ((g.r[i + 1] - g.r[i]) * vol);
    }
    return st;
}

namespace {

// Precomputed stencil of the conservative radial Laplacian plus the
// reaction weight r^sigma.
struct Stepper {
    const RadialGrid& grid;
    ProblemParams params;
    std::vector<double> sub, sup;
    std::vector<double> rsig;
    std::vector<double> a, b, c, rhs, scratch; // tridiagonal workspace

    Stepper(const ProblemParams& p, const RadialGrid& g) : grid(g), params(p) {
        const std::size_t n = g.size();
        LaplacianStencil st = radial_laplacian_stencil(g);
        sub = std::move(st.sub);
        sup = std::move(st.sup);
        rsig.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) rsig[i] = std::pow(g.r[i], p.sigma);
        rsig[0] = 0.0;
        a.resize(n);
        b.resize(n);
        c.resize(n);
        rhs.resize(n);
        scratch.resize(n);
    }

    void apply_laplacian(std::span<const double> u, std::span<double> out) const {
        const std::size_t n = u.size();
        out[0] = sup[0] * (u[1] - u[0]);
        for (std::size_t i = 1; i + 1 < n; ++i)
            out[i] = sub[i] * u[i - 1] - (sub[i] + sup[i]) * u[i] + sup[i] * u[i + 1];
        out[n - 1] = 0.0; // Dirichlet row
    }

    void reaction(std::span<const double> u, std::span<double> out) const {
        const std::size_t n = u.size();
        const double p = params.p;
        out[0] = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i)
            out[i] = u[i] > 0.0 ? rsig[i] * std::pow(u[i], p) : 0.0;
        out[n - 1] = 0.0;
    }

    // max over nodes of r^sigma u^{p-1}, computed from the reaction vector
    static double reaction_cfl_scale(std::span<const double> u,
                                     std::span<const double> f) {
        double s = 0;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] > 0.0) s = std::max(s, f[i] / u[i]);
        return s;
    }

    // solve (I - dt L) unew = u + dt f
    void implicit_step(std::span<const double> u, std::span<const double> f, double dt,
                       std::span<double> unew) {
        const std::size_t n = u.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            a[i] = -dt * sub[i];
            b[i] = 1.0 + dt * (sub[i] + sup[i]);
            c[i] = -dt * sup[i];
            rhs[i] = u[i] + dt * f[i];
        }
        a[n - 1] = 0.0;
        b[n - 1] = 1.0;
        c[n - 1] = 0.0;
        rhs[n - 1] = 0.0;

        // Thomas algorithm
        scratch[0] = c[0] / b[0];
        unew[0] = rhs[0] / b[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = b[i] - a[i] * scratch[i - 1];
            scratch[i] = c[i] / m;
            unew[i] = (rhs[i] - a[i] * unew[i - 1]) / m;
        }
        for (std::size_t i = n - 1; i-- > 0;) unew[i] -= scratch[i] * unew[i + 1];
    }
};

void clamp_negatives(std::span<double> u, double clamp_tol) {
    double umax = 0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    const double floor = clamp_tol * std::max(umax, 1e-300);
    for (double& v : u) {
        if (!std::isfinite(v)) throw StepRejected("step: non-finite value");
        if (v < 0.0) {
            if (-v > floor) throw StepRejected("step: negativity beyond tolerance");
            v = 0.0;
        }
    }
}

struct MaxInfo {
    double value = 0;
    std::size_t index = 0;
};

MaxInfo sup_with_argmax(std::span<const double> u) {
    MaxInfo m;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > m.value) {
            m.value = u[i];
            m.index = i;
        }
    return m;
}

} // namespace

std::vector<double> discrete_radial_laplacian(std::span<const double> u,
                                              const RadialGrid& grid) {
    grid.validate();
    if (u.size() != grid.size())
        throw std::invalid_argument("laplacian: size mismatch");
    ProblemParams dummy;
    dummy.N = grid.N;
    dummy.R = grid.R;
    Stepper st(dummy, grid);
    std::vector<double> out(u.size());
    st.apply_laplacian(u, out);
    return out;
}

Snapshot step(const Snapshot& snapshot, double dt, const ProblemParams& params,
              const RadialGrid& grid, bool reaction_enabled, double clamp_tol) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    if (snapshot.u.size() != grid.size())
        throw std::invalid_argument("step: size mismatch");
    Stepper st(params, grid);
    std::vector<double> f(snapshot.u.size(), 0.0);
    if (reaction_enabled) st.reaction(snapshot.u, f);
    Snapshot out;
    out.t = snapshot.t + dt;
    out.u.resize(snapshot.u.size());
    st.implicit_step(snapshot.u, f, dt, out.u);
    out.u.back() = 0.0;
    clamp_negatives(out.u, clamp_tol);
    return out;
}

RunRecord simulate(const ProblemParams& params, const Snapshot& u0,
                   const SolveControls& controls, const RadialGrid& grid) {
    params.validate();
    grid.validate();
    if (grid.N != params.N || grid.R != params.R)
        throw std::invalid_argument("simulate: grid does not match params");
    if (u0.u.size() != grid.size())
        throw std::invalid_argument("simulate: initial data size mismatch");
    for (double v : u0.u)
        if (v < 0.0) throw std::invalid_argument("simulate: initial data must be >= 0");
    if (std::abs(u0.u.back()) > 0.0)
        throw std::invalid_argument("simulate: boundary value must be 0");

    RunRecord rec;
    rec.params = params;
    rec.controls = controls;
    rec.grid = grid;

    Stepper st(params, grid);
    const EigenPair pair = compute_eigenpair(grid);
    rec.lambda1 = pair.lambda1;
    rec.J0 = energy(u0.u, grid, params);

    const std::size_t n = grid.size();
    const double wexp = params.sigma / (params.p - 1.0);
    std::vector<double> wpow(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) wpow[i] = std::pow(grid.r[i], wexp);

    std::vector<double> uinf; // singular state on the grid, when defined
    if (singular_coefficient_defined(params)) {
        const double ci = singular_coefficient(params);
        uinf.assign(n, 0.0);
        for (std::size_t i = 1; i < n; ++i)
            uinf[i] = ci * std::pow(grid.r[i], -params.beta());
    }

    std::vector<double> u = u0.u;
    std::vector<double> unew(n), f(n, 0.0), fnew(n, 0.0), lap(n), diff(n), work(n);
    double t = u0.t;
    double dt = std::min(controls.dt_init, controls.effective_dt_max());
    double react_integral = 0;
    double q_cur = 0;

    st.reaction(u, f);
    for (std::size_t i = 0; i < n; ++i) work[i] = f[i] * u[i];
    q_cur = grid.quad(work);

    const double M0 = sup_with_argmax(u).value;
    double retain_growth_next = std::max(M0, 1e-300) * controls.retain_growth_factor;
    double retain_uniform_next = u0.t;
    const double retain_uniform_dt =
        controls.retain_uniform > 0 ? controls.t_max / controls.retain_uniform : 0.0;
    double dwell = 0;
    long accepted_since_record = 0;

    auto record_row = [&](double used_dt) {
        SeriesRow row;
        row.t = t;
        row.dt = used_dt;
        const MaxInfo mi = sup_with_argmax(u);
        row.M = mi.value;
        row.r_argmax = grid.r[mi.index];
        double wbest = 0;
        std::size_t wi = 1;
        for (std::size_t i = 1; i < n; ++i) {
            const double wv = wpow[i] * u[i];
            if (wv > wbest) {
                wbest = wv;
                wi = i;
            }
        }
        row.wsup = wbest;
        row.r_wargmax = grid.r[wi];
        row.J = energy(u, grid, params);
        for (std::size_t i = 0; i < n; ++i) work[i] = std::abs(u[i]);
        row.l1 = grid.quad(work);
        for (std::size_t i = 0; i < n; ++i) work[i] = u[i] * u[i];
        row.l2 = std::sqrt(std::max(grid.quad(work), 0.0));
        row.kaplan = kaplan(u, grid, pair);
        row.react_int = react_integral;
        st.apply_laplacian(u, lap);
        for (std::size_t i = 0; i < n; ++i)
            lap[i] += controls.reaction_enabled ? f[i] : 0.0; // u_t field
        lap[n - 1] = 0.0;
        row.z_ut = zero_number(lap);
        if (!uinf.empty()) {
            for (std::size_t i = 1; i < n; ++i) diff[i - 1] = u[i] - uinf[i];
            row.z_uinf = zero_number(std::span<const double>(diff.data(), n - 1));
        }
        rec.rows.push_back(row);
    };

    auto retain = [&](bool force) {
        const double M = sup_with_argmax(u).value;
        bool want = force;
        if (retain_uniform_dt > 0 && t >= retain_uniform_next) {
            want = true;
            while (retain_uniform_next <= t) retain_uniform_next += retain_uniform_dt;
        }
        if (M >= retain_growth_next) {
            want = true;
            while (retain_growth_next <= M)
                retain_growth_next *= controls.retain_growth_factor;
        }
        if (!want) return;
        if (static_cast<int>(rec.snapshots.size()) >= controls.max_retained) return;
        if (!rec.snapshots.empty() && rec.snapshots.back().t == t) return;
        rec.snapshots.push_back(Snapshot{t, u});
    };

    record_row(0.0);
    retain(true);

    const double dt_max = controls.effective_dt_max();
    bool done = false;
    while (!done) {
        const MaxInfo mi = sup_with_argmax(u);
        const double M = mi.value;
        if (!std::isfinite(M)) {
            rec.status = RunStatus::StepFailure;
            break;
        }

        const double cfl_scale = Stepper::reaction_cfl_scale(u, f);
        const double dt_cfl = controls.reaction_enabled && cfl_scale > 0
                                  ? controls.c_safe / (params.p * cfl_scale)
                                  : std::numeric_limits<double>::infinity();

        if (M >= controls.M_blow && dt_cfl <= controls.dt_floor) {
            rec.status = RunStatus::BlowUp;
            break;
        }
        if (M < controls.M_decay && dwell >= controls.decay_dwell_frac * controls.t_max) {
            rec.status = RunStatus::Decayed;
            break;
        }
        if (t >= controls.t_max) {
            rec.status = RunStatus::BoundedAtHorizon;
            break;
        }
        if (rec.steps_accepted + rec.steps_rejected >= controls.max_steps) {
            rec.status = RunStatus::StepFailure;
            break;
        }

        double dt_try = std::min({dt, dt_max, dt_cfl, controls.t_max - t});
        if (dt_try < controls.dt_floor && M < controls.M_blow) {
            rec.status = RunStatus::StepFailure; // underflow without blow-up growth
            break;
        }

        try {
            st.implicit_step(u, f, dt_try, unew);
            unew[n - 1] = 0.0;
            clamp_negatives(unew, controls.clamp_tol);
        } catch (const StepRejected&) {
            ++rec.steps_rejected;
            dt = 0.5 * dt_try;
            continue;
        }

        u.swap(unew);
        t += dt_try;
        ++rec.steps_accepted;
        rec.dt_last = dt_try;

        st.reaction(u, fnew);
        for (std::size_t i = 0; i < n; ++i) work[i] = fnew[i] * u[i];
        const double q_new = grid.quad(work);
        react_integral += 0.5 * dt_try * (q_cur + q_new);
        q_cur = q_new;
        f.swap(fnew);

        const double M_now = sup_with_argmax(u).value;
        if (M_now < controls.M_decay)
            dwell += dt_try;
        else
            dwell = 0;

        if (++accepted_since_record >= controls.record_every) {
            record_row(dt_try);
            accepted_since_record = 0;
        }
        retain(false);

        dt = 1.2 * dt_try;
    }

    rec.t_end = t;
    if (rec.rows.empty() || rec.rows.back().t != t) record_row(rec.dt_last);
    if (rec.snapshots.empty() || rec.snapshots.back().t != t)
        rec.snapshots.push_back(Snapshot{t, u});

    if (rec.status == RunStatus::BlowUp) {
        try {
            rec.blowup = estimate_blowup_time(rec);
        } catch (const std::exception&) {
            rec.blowup.reset(); // too few samples; leave unset
        }
    }
    return rec;
}

BlowupTimeFit estimate_blowup_time(const RunRecord& record) {
    if (record.status != RunStatus::BlowUp)
        throw std::invalid_argument("estimate_blowup_time: requires a blow-up record");
    const double p = record.params.p;
    const double M_min = 0.01 * record.controls.M_blow;

    std::vector<double> ts, Ms;
    for (const auto& row : record.rows) {
        if (row.M >= M_min && std::isfinite(row.M)) {
            ts.push_back(row.t);
            Ms.push_back(row.M);
        }
    }
    if (ts.size() < 10)
        throw std::runtime_error("estimate_blowup_time: insufficient samples");

    const double candidates[2] = {1.0, 2.0 / (2.0 + record.params.sigma)};
    BlowupTimeFit best;
    bool have = false;
    for (double w : candidates) {
        std::vector<double> y(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            y[i] = std::pow(Ms[i], -(p - 1.0) * w);
        const LinearFit fit = linear_fit(ts, y);
        if (!(fit.slope < 0.0)) continue; // no growth toward a root
        const double T = -fit.intercept / fit.slope;
        const double dTda = -1.0 / fit.slope;
        const double dTdb = fit.intercept / (fit.slope * fit.slope);
        const double var = dTda * dTda * fit.se_intercept * fit.se_intercept +
                           dTdb * dTdb * fit.se_slope * fit.se_slope +
                           2.0 * dTda * dTdb * fit.cov_ab;
        const double se = std::sqrt(std::max(var, 0.0));
        if (!have || fit.residual_rms < best.residual_rms) {
            best.T_est = T;
            best.T_lo = T - 2.0 * se;
            best.T_hi = T + 2.0 * se;
            best.w_used = w;
            best.residual_rms = fit.residual_rms;
            best.n_samples = static_cast<int>(ts.size());
            have = true;
        }
    }
    if (!have) throw std::runtime_error("estimate_blowup_time: insufficient growth");

    const double t_last = record.t_end;
    best.T_est = std::max(best.T_est, t_last + 1e-3 * record.dt_last);
    best.T_lo = std::max(best.T_lo, t_last);
    best.T_hi = std::max(best.T_hi, t_last + 10.0 * record.dt_last);
    return best;
}

} // namespace henon
