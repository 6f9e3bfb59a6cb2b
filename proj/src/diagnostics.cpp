#include "henon/diagnostics.hpp"

#include "henon/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace henon {

int zero_number(std::span<const double> f, double eps) {
    if (f.empty()) throw std::invalid_argument("zero_number: empty window");
    double fmax = 0;
    for (double v : f) fmax = std::max(fmax, std::abs(v));
    const double band = eps * fmax;
    int count = 0;
    int prev_sign = 0;
    for (double v : f) {
        if (std::abs(v) <= band) continue; // inside the grazing band
        const int s = v > 0 ? 1 : -1;
        if (prev_sign != 0 && s != prev_sign) ++count;
        prev_sign = s;
    }
    return count;
}

EigenPair compute_eigenpair(const RadialGrid& grid, int max_iter, double tol) {
    grid.validate();
    const std::size_t n = grid.size();
    const std::size_t m = n - 1; // unknowns: nodes 0..n-2, boundary eliminated
    const LaplacianStencil st = radial_laplacian_stencil(grid);

    // cell volumes give the inner product in which -L is symmetric
    std::vector<double> vol(m, 0.0);
    {
        const double N = grid.N;
        vol[0] = std::pow(0.5 * grid.r[1], N) / N;
        for (std::size_t i = 1; i < m; ++i) {
            const double rm = 0.5 * (grid.r[i - 1] + grid.r[i]);
            const double rp = 0.5 * (grid.r[i] + grid.r[i + 1]);
            vol[i] = (std::pow(rp, N) - std::pow(rm, N)) / N;
        }
    }

    // Thomas factorisation of A = -L restricted to the unknowns
    std::vector<double> a(m), b(m), c(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = -st.sub[i];
        b[i] = st.sub[i] + st.sup[i];
        c[i] = -st.sup[i];
    }

    std::vector<double> x(m, 1.0), y(m), scratch(m);
    auto solve = [&](const std::vector<double>& rhs, std::vector<double>& out) {
        scratch[0] = c[0] / b[0];
        out[0] = rhs[0] / b[0];
        for (std::size_t i = 1; i < m; ++i) {
            const double piv = b[i] - a[i] * scratch[i - 1];
            scratch[i] = c[i] / piv;
            out[i] = (rhs[i] - a[i] * out[i - 1]) / piv;
        }
        for (std::size_t i = m - 1; i-- > 0;) out[i] -= scratch[i] * out[i + 1];
    };
    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t i = 0; i < m; ++i) {
            double v = b[i] * in[i];
            if (i > 0) v += a[i] * in[i - 1];
            if (i + 1 < m) v += c[i] * in[i + 1];
            out[i] = v;
        }
    };

    double lambda = 0, lambda_prev = -1;
    std::vector<double> ax(m);
    for (int it = 0; it < max_iter; ++it) {
        solve(x, y);
        double norm = 0;
        for (std::size_t i = 0; i < m; ++i) norm += vol[i] * y[i] * y[i];
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < m; ++i) y[i] /= norm;
        x = y;
        apply(x, ax);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < m; ++i) {
            num += vol[i] * x[i] * ax[i];
            den += vol[i] * x[i] * x[i];
        }
        lambda = num / den;
        if (it > 2 && std::abs(lambda - lambda_prev) <= tol * std::abs(lambda)) break;
        lambda_prev = lambda;
    }

    EigenPair pair;
    pair.lambda1 = lambda;
    pair.phi1.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) pair.phi1[i] = std::abs(x[i]);
    const double mass = grid.quad(pair.phi1);
    for (double& v : pair.phi1) v /= mass;
    return pair;
}

namespace {

// centered first derivative on the nonuniform grid; u'(0) = 0 by symmetry
std::vector<double> radial_gradient(std::span<const double> u, const RadialGrid& grid) {
    const std::size_t n = u.size();
    std::vector<double> du(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = grid.r[i] - grid.r[i - 1];
        const double hp = grid.r[i + 1] - grid.r[i];
        du[i] = -hp / (hm * (hm + hp)) * u[i - 1] + (hp - hm) / (hm * hp) * u[i] +
                hm / (hp * (hm + hp)) * u[i + 1];
    }
    // one-sided second-order at the boundary
    const double h1 = grid.r[n - 1] - grid.r[n - 2];
    const double h2 = grid.r[n - 2] - grid.r[n - 3];
    du[n - 1] = (u[n - 3] * h1 / (h2 * (h1 + h2)) - u[n - 2] * (h1 + h2) / (h1 * h2) +
                 u[n - 1] * (2 * h1 + h2) / (h1 * (h1 + h2)));
    return du;
}

} // namespace

double energy(std::span<const double> u, const RadialGrid& grid,
              const ProblemParams& params) {
    if (u.size() != grid.size()) throw std::invalid_argument("energy: size mismatch");
    const std::size_t n = u.size();
    const std::vector<double> du = radial_gradient(u, grid);
    std::vector<double> g2(n), pot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) g2[i] = du[i] * du[i];
    for (std::size_t i = 1; i < n; ++i)
        pot[i] = std::pow(grid.r[i], params.sigma) *
                 std::pow(std::abs(u[i]), params.p + 1.0);
    return 0.5 * grid.quad(g2) - grid.quad(pot) / (params.p + 1.0);
}

double energy(const Snapshot& snapshot, const RadialGrid& grid,
              const ProblemParams& params) {
    return energy(snapshot.u, grid, params);
}

double kaplan(std::span<const double> u, const RadialGrid& grid, const EigenPair& pair) {
    if (u.size() != grid.size()) throw std::invalid_argument("kaplan: size mismatch");
    std::vector<double> prod(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) prod[i] = u[i] * pair.phi1[i];
    return grid.quad(prod);
}

double kaplan(const Snapshot& snapshot, const RadialGrid& grid, const EigenPair& pair) {
    return kaplan(snapshot.u, grid, pair);
}

double kaplan_bound(const ProblemParams& params, const EigenPair& pair) {
    params.validate();
    const double k = params.sigma / (params.p - 1.0);
    const double expo = static_cast<double>(params.N) - k;
    if (!(expo > 0.0))
        throw std::invalid_argument("kaplan_bound: requires p > 1 + sigma/N");
    const double weight_integral =
        sphere_area(params.N) * std::pow(params.R, expo) / expo;
    return std::pow(pair.lambda1, 1.0 / (params.p - 1.0)) * weight_integral;
}

WeightedSup weighted_sup(std::span<const double> u, const RadialGrid& grid,
                         const ProblemParams& params) {
    if (u.size() != grid.size())
        throw std::invalid_argument("weighted_sup: size mismatch");
    const double k = params.sigma / (params.p - 1.0);
    WeightedSup best;
    for (std::size_t i = 1; i < u.size(); ++i) {
        const double v = std::pow(grid.r[i], k) * u[i];
        if (v > best.value) {
            best.value = v;
            best.r_argmax = grid.r[i];
        }
    }
    return best;
}

double sde_envelope_fit(const RunRecord& record) {
    if (record.snapshots.empty())
        throw std::invalid_argument("sde_envelope_fit: no retained snapshots");
    const double p = record.params.p;
    const double k = record.params.sigma / (p - 1.0);
    double C = 0;
    for (const auto& snap : record.snapshots) {
        const double tinv =
            snap.t > 0 ? std::pow(snap.t, -1.0 / (p - 1.0))
                       : std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < snap.u.size(); ++i) {
            const double r = record.grid.r[i];
            const double env = 1.0 + tinv + std::pow(r, -2.0 / (p - 1.0));
            C = std::max(C, std::pow(r, k) * snap.u[i] / env);
        }
    }
    return C;
}

PhanReport phan_envelope_check(const RunRecord& record, double T_horizon) {
    if (record.snapshots.empty())
        throw std::invalid_argument("phan_envelope_check: no retained snapshots");
    const double p = record.params.p;
    const double k = record.params.sigma / (p - 1.0);
    PhanReport rep;
    rep.T_used = T_horizon;
    for (const auto& snap : record.snapshots) {
        if (!(snap.t < T_horizon)) continue;
        const double tinv =
            snap.t > 0 ? std::pow(snap.t, -1.0 / (p - 1.0))
                       : std::numeric_limits<double>::infinity();
        const double sinv = std::pow(T_horizon - snap.t, -1.0 / (p - 1.0));
        for (std::size_t i = 1; i < snap.u.size(); ++i) {
            const double r = record.grid.r[i];
            if (!(r < 0.5 * record.grid.R)) break;
            const double env = tinv + sinv + std::pow(r, -2.0 / (p - 1.0));
            rep.C = std::max(rep.C, std::pow(r, k) * snap.u[i] / env);
        }
    }
    return rep;
}

AprioriReport apriori_check(const RunRecord& record) {
    const ProblemParams& params = record.params;
    const ExtReal ps = sobolev_critical(params.N, params.sigma);
    if (!ps.is_finite() || !(params.p > ps.value()))
        throw std::invalid_argument("apriori_check: requires p > p_S(sigma)");
    if (record.status == RunStatus::BlowUp || record.status == RunStatus::StepFailure)
        throw std::invalid_argument("apriori_check: requires a global-in-time proxy run");

    const double p = params.p;
    const double expo = static_cast<double>(params.N) - 2.0 * params.sigma / (p - 1.0);
    if (!(expo > 0.0)) throw std::logic_error("apriori_check: weight integral diverges");
    const double weight_integral =
        sphere_area(params.N) * std::pow(params.R, expo) / expo;

    AprioriReport rep;
    rep.c_star = (p - 1.0) / (p + 1.0) * std::pow(weight_integral, -(p - 1.0) / 2.0);
    const double J0 = record.J0;
    rep.l2_bound = std::pow(std::max(2.0 * J0 / rep.c_star, 0.0), 2.0 / (p + 1.0));

    rep.worst_l2_margin = std::numeric_limits<double>::infinity();
    rep.worst_react_margin = std::numeric_limits<double>::infinity();
    for (const auto& row : record.rows) {
        const double l2sq = row.l2 * row.l2;
        rep.worst_l2_margin = std::min(rep.worst_l2_margin, rep.l2_bound - l2sq);
        const double react_bound =
            (p + 1.0) / (p - 1.0) * (0.5 * rep.l2_bound + 2.0 * J0 * row.t);
        rep.worst_react_margin =
            std::min(rep.worst_react_margin, react_bound - row.react_int);
    }
    rep.l2_ok = rep.worst_l2_margin >= -1e-12 * (1.0 + std::abs(rep.l2_bound));
    rep.react_ok = rep.worst_react_margin >= -1e-12;
    return rep;
}

RescaledField rescale_snapshot(const RunRecord& record, double t_j, double rho_max,
                               int n_rho) {
    const double t_scale = std::max(1.0, std::abs(record.t_end));
    const Snapshot* snap = nullptr;
    for (const auto& s : record.snapshots)
        if (std::abs(s.t - t_j) <= 1e-9 * t_scale) {
            snap = &s;
            break;
        }
    if (!snap) throw std::invalid_argument("rescale_snapshot: snapshot not retained");

    double M = 0;
    for (double v : snap->u) M = std::max(M, v);
    if (!(M > 0.0)) throw std::invalid_argument("rescale_snapshot: M(t_j) must be > 0");

    const double lambda =
        std::pow(M, -(record.params.p - 1.0) / (2.0 + record.params.sigma));
    if (lambda * rho_max > record.grid.R)
        throw std::invalid_argument("rescale_snapshot: lambda * rho_max exceeds R");

    RescaledField out;
    out.t = snap->t;
    out.lambda = lambda;
    out.rho.resize(n_rho);
    out.v.resize(n_rho);
    const std::vector<double> slopes = pchip_slopes(record.grid.r, snap->u);
    for (int i = 0; i < n_rho; ++i) {
        out.rho[i] = rho_max * static_cast<double>(i) / (n_rho - 1);
        out.v[i] = pchip_eval(record.grid.r, snap->u, slopes, lambda * out.rho[i]) / M;
    }
    return out;
}

ZeroSeriesAudit audit_zero_series(std::span<const SeriesRow> rows, bool use_ut) {
    ZeroSeriesAudit audit;
    int prev = -1;
    bool have_prev = false;
    for (const auto& row : rows) {
        const int z = use_ut ? row.z_ut : row.z_uinf;
        if (z < 0) continue;
        if (have_prev && z > prev)
            audit.events.push_back({row.t, {prev, z}});
        prev = z;
        have_prev = true;
    }
    audit.increases = static_cast<int>(audit.events.size());
    return audit;
}

} // namespace henon
