#include "henon/exponents.hpp"

#include <cassert>
#include <cmath>
#include <charconv>

namespace henon {

std::string ExtReal::str() const {
    if (inf_) return "inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v_);
    return std::string(buf, res.ptr);
}

void ProblemParams::validate() const {
    if (N < 1) throw std::invalid_argument("params: N must be >= 1");
    if (!(p > 1.0)) throw std::invalid_argument("params: p must be > 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("params: sigma must be > 0");
    if (!(R > 0.0)) throw std::invalid_argument("params: R must be > 0");
}

const char* regime_name(Regime tag) {
    switch (tag) {
        case Regime::BelowFujitaLike: return "below_fujita_like";
        case Regime::SubcriticalSobolev: return "subcritical_sobolev";
        case Regime::CriticalSobolev: return "critical_sobolev";
        case Regime::SupercriticalBelowJL: return "supercritical_below_jl";
        case Regime::AtOrAboveJL: return "at_or_above_jl";
    }
    return "?";
}

static void check_n_sigma(int N, double sigma) {
    if (N < 1) throw std::invalid_argument("exponents: N must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("exponents: sigma must be > 0");
}

double fujita_like(int N, double sigma) {
    check_n_sigma(N, sigma);
    return 1.0 + sigma / static_cast<double>(N);
}

ExtReal sobolev_critical(int N, double sigma) {
    check_n_sigma(N, sigma);
    if (N <= 2) return ExtReal::infinity();
    return (static_cast<double>(N) + 2.0 + 2.0 * sigma) / (static_cast<double>(N) - 2.0);
}

ExtReal joseph_lundgren(int N, double sigma) {
    check_n_sigma(N, sigma);
    const double n = static_cast<double>(N);
    if (n <= 10.0 + 4.0 * sigma) return ExtReal::infinity();
    const double den = n - 4.0 - sigma - std::sqrt((2.0 * n - 2.0 + sigma) * (2.0 + sigma));
    // positive whenever N > 10 + 4*sigma
    assert(den > 0.0);
    if (!(den > 0.0)) throw std::logic_error("joseph_lundgren: nonpositive denominator");
    return 1.0 + 2.0 * (2.0 + sigma) / den;
}

bool singular_coefficient_defined(const ProblemParams& params) {
    params.validate();
    if (params.N <= 2) return false;
    return static_cast<double>(params.N) - 2.0 - params.beta() > 0.0;
}

double singular_coefficient(const ProblemParams& params) {
    params.validate();
    if (params.N <= 2)
        throw std::invalid_argument("singular_coefficient: requires N > 2");
    const double b = params.beta();
    const double bracket = b * (static_cast<double>(params.N) - 2.0 - b);
    if (!(bracket > 0.0))
        throw std::invalid_argument("singular_coefficient: N-2 <= (2+sigma)/(p-1)");
    return std::pow(bracket, 1.0 / (params.p - 1.0));
}

RegimeInfo classify_regime(const ProblemParams& params) {
    params.validate();
    RegimeInfo info;
    info.p_fujita_like = fujita_like(params.N, params.sigma);
    info.p_sobolev = sobolev_critical(params.N, params.sigma);
    info.p_jl = joseph_lundgren(params.N, params.sigma);

    const ExtReal p(params.p);
    if (params.p <= info.p_fujita_like) {
        info.tag = Regime::BelowFujitaLike;
    } else if (p < info.p_sobolev) {
        info.tag = Regime::SubcriticalSobolev;
    } else if (p == info.p_sobolev) {
        info.tag = Regime::CriticalSobolev;
    } else if (p < info.p_jl) {
        info.tag = Regime::SupercriticalBelowJL;
    } else {
        info.tag = Regime::AtOrAboveJL;
    }
    return info;
}

} // namespace henon
