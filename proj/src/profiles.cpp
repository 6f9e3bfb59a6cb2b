#include "henon/profiles.hpp"

#include "henon/diagnostics.hpp"
#include "henon/interp.hpp"
#include "henon/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace henon {

namespace {

double pos_pow(double u, double p) { return u > 0.0 ? std::pow(u, p) : 0.0; }

double series_value(const std::vector<std::pair<double, double>>& series, double r) {
    double v = 0;
    for (const auto& [q, c] : series) v += c * (q == 0.0 ? 1.0 : std::pow(r, q));
    return v;
}

double series_derivative(const std::vector<std::pair<double, double>>& series,
                         double r) {
    double v = 0;
    for (const auto& [q, c] : series)
        if (q != 0.0) v += c * q * std::pow(r, q - 1.0);
    return v;
}

// grid with a linear band across the profile's own length scale and
// logarithmic spacing beyond it
std::vector<double> profile_grid(double r_launch, double scale, double r_max,
                                 int n_inner, int n_per_decade) {
    std::vector<double> g;
    g.push_back(0.0);
    const double lin_end = std::min(scale, r_max);
    const int nl = n_inner;
    for (int k = 0; k <= nl; ++k)
        g.push_back(r_launch + (lin_end - r_launch) * static_cast<double>(k) / nl);
    if (r_max > lin_end * (1.0 + 1e-12)) {
        const double decades = std::log10(r_max / lin_end);
        const int ns = std::max(2, static_cast<int>(std::ceil(n_per_decade * decades)));
        for (int k = 1; k <= ns; ++k)
            g.push_back(lin_end * std::pow(r_max / lin_end, static_cast<double>(k) / ns));
    }
    g.back() = r_max;
    return g;
}

} // namespace

double ProfileSolution::window_end() const {
    if (kind == ProfileKind::SteadySingular)
        return std::numeric_limits<double>::infinity();
    return r.empty() ? 0.0 : r.back();
}

double ProfileSolution::eval(double rq) const {
    if (kind == ProfileKind::SteadySingular) {
        if (!(rq > 0.0))
            throw std::invalid_argument("singular profile: r must be positive");
        return c * std::pow(rq, -params.beta());
    }
    if (rq < 0.0) throw std::invalid_argument("profile eval: negative radius");
    if (rq <= launch_radius && !series.empty()) return series_value(series, rq);
    if (r.size() < 2 || rq > r.back() * (1.0 + 1e-12))
        throw std::out_of_range("profile eval: outside computed window");
    return hermite_eval(r, u, du, std::min(rq, r.back()));
}

double ProfileSolution::eval_derivative(double rq) const {
    if (kind == ProfileKind::SteadySingular) {
        if (!(rq > 0.0))
            throw std::invalid_argument("singular profile: r must be positive");
        const double b = params.beta();
        return -b * c * std::pow(rq, -b - 1.0);
    }
    if (rq < 0.0) throw std::invalid_argument("profile eval: negative radius");
    if (rq <= launch_radius && !series.empty()) return series_derivative(series, rq);
    if (r.size() < 2 || rq > r.back() * (1.0 + 1e-12))
        throw std::out_of_range("profile eval: outside computed window");
    return hermite_eval_derivative(r, u, du, std::min(rq, r.back()));
}

ProfileSolution integrate_steady(const ProblemParams& params, double m, double r_max,
                                 double tol) {
    params.validate();
    if (!(m > 0.0)) throw std::invalid_argument("integrate_steady: m must be > 0");
    if (!(r_max > 0.0)) throw std::invalid_argument("integrate_steady: r_max must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_steady: tol must be > 0");

    const double N = params.N, p = params.p, s = params.sigma;
    const double scale = std::pow(m, -(p - 1.0) / (2.0 + s));

    // two-term launch u = m + a r^{2+sigma}; the omitted term has size
    // ~ m^{2p-1} r^{2(2+sigma)} / K
    const double a = -std::pow(m, p) / ((2.0 + s) * (N + s));
    const double K = (2.0 * (2.0 + s)) * (2.0 * (2.0 + s) + N - 2.0);
    double r_launch =
        std::pow(0.01 * K * tol * std::pow(m, 2.0 - 2.0 * p), 1.0 / (2.0 * (2.0 + s)));
    r_launch = std::clamp(r_launch, 1e-6 * scale, 0.05 * scale);
    r_launch = std::min(r_launch, 0.25 * r_max);

    ProfileSolution out;
    out.kind = ProfileKind::SteadyRegular;
    out.params = params;
    out.m = m;
    out.tol = tol;
    out.launch_radius = r_launch;
    out.series = {{0.0, m}, {2.0 + s, a}};

    const std::vector<double> grid = profile_grid(r_launch, scale, r_max, 400, 240);

    out.r.push_back(0.0);
    out.u.push_back(m);
    out.du.push_back(0.0);

    detail::State2 y{series_value(out.series, r_launch),
                     series_derivative(out.series, r_launch)};

    auto rhs = [&](double r, const detail::State2& st, detail::State2& d) {
        d[0] = st[1];
        d[1] = -(N - 1.0) / r * st[1] - std::pow(r, s) * pos_pow(st[0], p);
    };

    std::vector<double> samples;
    for (double g : grid)
        if (g >= r_launch) samples.push_back(g);

    detail::OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * m * 1e-4;
    opt.h_init = 0.1 * r_launch;

    bool crossed = false;
    auto on_sample = [&](double rs, const detail::State2& ys) {
        if (crossed) return;
        out.r.push_back(rs);
        out.u.push_back(ys[0]);
        out.du.push_back(ys[1]);
    };
    auto event = [](double, const detail::State2& ys) { return ys[0]; };

    auto res = detail::integrate_dopri5(rhs, r_launch, r_max, y, opt, samples,
                                        on_sample, event, nullptr);

    if (res.outcome == detail::OdeOutcome::StepUnderflow)
        throw std::runtime_error("integrate_steady: step underflow");
    if (res.outcome == detail::OdeOutcome::MaxSteps)
        throw std::runtime_error("integrate_steady: step budget exhausted");

    if (res.outcome == detail::OdeOutcome::EventHit) {
        crossed = true;
        out.zero_crossing = res.x_end;
        // drop samples past the crossing, then append the crossing point
        while (!out.r.empty() && out.r.back() >= res.x_end) {
            out.r.pop_back();
            out.u.pop_back();
            out.du.pop_back();
        }
        out.r.push_back(res.x_end);
        out.u.push_back(std::max(res.y_end[0], 0.0));
        out.du.push_back(res.y_end[1]);
    }
    return out;
}

double closed_form_critical(const ProblemParams& params, double r) {
    params.validate();
    if (r < 0.0) throw std::invalid_argument("closed_form_critical: r must be >= 0");
    const ExtReal ps = sobolev_critical(params.N, params.sigma);
    if (ps.is_infinite() ||
        std::abs(params.p - ps.value()) > 1e-12 * std::abs(ps.value()))
        throw std::invalid_argument("closed_form_critical: p is not the critical exponent");
    const double N = params.N, s = params.sigma;
    const double A = (N + s) * (N - 2.0);
    return std::pow(A / (A + std::pow(r, 2.0 + s)), (N - 2.0) / (2.0 + s));
}

ProfileSolution rescale_profile(const ProfileSolution& base, double m) {
    if (base.kind != ProfileKind::SteadyRegular || std::abs(base.m - 1.0) > 1e-12)
        throw std::invalid_argument("rescale_profile: base must be the m = 1 profile");
    if (!(m > 0.0)) throw std::invalid_argument("rescale_profile: m must be > 0");
    const double p = base.params.p, s = base.params.sigma;
    const double factor = std::pow(m, (p - 1.0) / (2.0 + s));

    ProfileSolution out = base;
    out.m = m;
    for (std::size_t i = 0; i < out.r.size(); ++i) {
        out.r[i] = base.r[i] / factor;
        out.u[i] = m * base.u[i];
        out.du[i] = m * factor * base.du[i];
    }
    out.launch_radius = base.launch_radius / factor;
    for (auto& [q, c] : out.series) c *= m * std::pow(factor, q);
    if (base.zero_crossing) out.zero_crossing = *base.zero_crossing / factor;
    return out;
}

double singular_steady(const ProblemParams& params, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("singular_steady: r must be > 0");
    return singular_coefficient(params) * std::pow(r, -params.beta());
}

ProfileSolution make_singular_profile(const ProblemParams& params) {
    ProfileSolution out;
    out.kind = ProfileKind::SteadySingular;
    out.params = params;
    out.c = singular_coefficient(params);
    out.m = out.c;
    return out;
}

ResidualReport steady_ode_residual(const ProfileSolution& profile) {
    if (profile.kind == ProfileKind::SteadySingular)
        throw std::invalid_argument("steady_ode_residual: grid-based profiles only");
    const auto& r = profile.r;
    const auto& u = profile.u;
    const auto& du = profile.du;
    const double N = profile.params.N, p = profile.params.p, s = profile.params.sigma;

    ResidualReport rep;
    double sum2 = 0;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        if (!(r[i] > 0.0)) continue;
        const double hm = r[i] - r[i - 1];
        const double hp = r[i + 1] - r[i];
        const double upp = -hp / (hm * (hm + hp)) * du[i - 1] +
                           (hp - hm) / (hm * hp) * du[i] +
                           hm / (hp * (hm + hp)) * du[i + 1];
        const double drift = (N - 1.0) / r[i] * du[i];
        const double react = std::pow(r[i], s) * pos_pow(u[i], p);
        const double resid = upp + drift + react;
        const double scal = std::abs(upp) + std::abs(drift) + std::abs(react) +
                            std::numeric_limits<double>::min();
        const double rel = std::abs(resid) / scal;
        rep.max_rel = std::max(rep.max_rel, rel);
        sum2 += rel * rel;
        ++rep.n;
    }
    rep.rms_rel = rep.n ? std::sqrt(sum2 / rep.n) : 0.0;
    return rep;
}

KormanReport korman_transform_check(const ProfileSolution& profile) {
    if (profile.kind == ProfileKind::SteadySingular)
        throw std::invalid_argument("korman_transform_check: grid-based profiles only");
    const double N = profile.params.N, p = profile.params.p, s = profile.params.sigma;

    KormanReport rep;
    rep.k = 2.0 * (N + s) / (2.0 + s);

    std::size_t usable = 0;
    for (std::size_t i = 0; i < profile.r.size(); ++i)
        if (profile.r[i] > 0.0) ++usable;
    if (usable < 3)
        throw std::runtime_error("korman_transform_check: window too short");

    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        const double r = profile.r[i];
        if (!(r > 0.0)) continue;
        const double u = profile.u[i];
        const double dur = profile.du[i];
        const double sc = (2.0 / (2.0 + s)) * std::pow(r, (2.0 + s) / 2.0); // s-variable
        const double upp = -(N - 1.0) / r * dur - std::pow(r, s) * pos_pow(u, p);
        const double phi_p = dur * std::pow(r, -s / 2.0);
        const double phi_pp =
            upp * std::pow(r, -s) - 0.5 * s * dur * std::pow(r, -s - 1.0);
        const double resid = phi_pp + (rep.k - 1.0) / sc * phi_p + pos_pow(u, p);
        const double scal = std::abs(phi_pp) + std::abs((rep.k - 1.0) / sc * phi_p) +
                            pos_pow(u, p) + std::numeric_limits<double>::min();
        rep.max_rel_residual = std::max(rep.max_rel_residual, std::abs(resid) / scal);
        ++rep.n;
    }
    return rep;
}

int count_intersections_sampled(const ProfileSolution& a, const ProfileSolution& b,
                                double r_lo, double r_hi, double eps, int n_samples) {
    if (!(r_hi > r_lo)) throw std::invalid_argument("count_intersections: empty window");
    if (!(eps > 0.0)) throw std::invalid_argument("count_intersections: eps must be > 0");
    if (r_hi > a.window_end() * (1.0 + 1e-12) || r_hi > b.window_end() * (1.0 + 1e-12))
        throw std::invalid_argument("count_intersections: window exceeds profile data");

    double lo = r_lo;
    const bool singular =
        a.kind == ProfileKind::SteadySingular || b.kind == ProfileKind::SteadySingular;
    if (lo <= 0.0) lo = singular ? r_hi * 1e-9 : 0.0;

    std::vector<double> f;
    f.reserve(n_samples);
    if (lo == 0.0) {
        f.push_back(a.eval(0.0) - b.eval(0.0));
        lo = r_hi * 1e-9;
    }
    for (int k = 0; k < n_samples; ++k) {
        const double rq = lo * std::pow(r_hi / lo, static_cast<double>(k) / (n_samples - 1));
        f.push_back(a.eval(rq) - b.eval(rq));
    }
    return zero_number(f, eps);
}

int count_intersections(const ProfileSolution& a, const ProfileSolution& b,
                        double r_lo, double r_hi, double eps) {
    int n = 4096;
    int prev = count_intersections_sampled(a, b, r_lo, r_hi, eps, n);
    int stable = 0;
    while (n < (1 << 21)) {
        n *= 2;
        const int cur = count_intersections_sampled(a, b, r_lo, r_hi, eps, n);
        if (cur == prev) {
            if (++stable >= 2) return cur;
        } else {
            stable = 0;
        }
        prev = cur;
    }
    return prev;
}

std::optional<TailReading> far_field_coefficient(const ProfileSolution& profile) {
    if (profile.kind == ProfileKind::SteadySingular)
        return TailReading{profile.c, profile.window_end()};
    const double b = profile.params.beta();
    const auto& r = profile.r;
    const auto& u = profile.u;
    const auto& du = profile.du;
    if (r.size() < 8 || profile.zero_crossing) return std::nullopt;

    const double band = 1e-3 * std::max(1.0, b);
    std::size_t j = r.size();
    for (std::size_t i = r.size(); i-- > 0;) {
        if (!(r[i] > 0.0) || !(u[i] > 0.0)) break;
        const double slope = r[i] * du[i] / u[i];
        if (std::abs(slope + b) > band) break;
        j = i;
    }
    if (j >= r.size()) return std::nullopt;
    if (r.back() / r[j] < std::sqrt(10.0)) return std::nullopt; // need half a decade
    return TailReading{u.back() * std::pow(r.back(), b), r.back()};
}

} // namespace henon
