#pragma once

#include <stdexcept>
#include <string>

namespace henon {

// Extended real line: a finite double or +infinity, compared exactly.
// Regime classification must be branch-exact, so infinity is a flag,
// not a sentinel float.
class ExtReal {
public:
    ExtReal() = default;
    ExtReal(double v) : v_(v) {}

    static ExtReal infinity() {
        ExtReal e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }

    double value() const {
        if (inf_) throw std::logic_error("ExtReal: value() of infinity");
        return v_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

    std::string str() const;

private:
    double v_ = 0.0;
    bool inf_ = false;
};

// Problem data for  u_t = Lap(u) + |x|^sigma u^p  on the ball of radius R
// with homogeneous Dirichlet data, restricted to radial functions.
struct ProblemParams {
    int N = 3;          // space dimension
    double p = 2.0;     // nonlinearity exponent, > 1
    double sigma = 1.0; // potential exponent, > 0
    double R = 1.0;     // ball radius

    void validate() const; // throws std::invalid_argument

    // rate exponents: sup norm scales like (T-t)^{-alpha}, profiles decay
    // like r^{-beta}
    double alpha() const { return (2.0 + sigma) / (2.0 * (p - 1.0)); }
    double beta() const { return (2.0 + sigma) / (p - 1.0); }
};

enum class Regime {
    BelowFujitaLike,      // p <= 1 + sigma/N
    SubcriticalSobolev,   // 1 + sigma/N < p < p_S
    CriticalSobolev,      // p == p_S
    SupercriticalBelowJL, // p_S < p < p_JL
    AtOrAboveJL,          // p >= p_JL
};

const char* regime_name(Regime tag);

struct RegimeInfo {
    Regime tag;
    double p_fujita_like;
    ExtReal p_sobolev;
    ExtReal p_jl;
};

// 1 + sigma/N; the standing hypothesis everywhere is p > fujita_like.
double fujita_like(int N, double sigma);

// (N+2+2*sigma)/(N-2) for N > 2, infinity for N = 1, 2.
ExtReal sobolev_critical(int N, double sigma);

// 1 + 2(2+sigma)/(N-4-sigma-sqrt((2N-2+sigma)(2+sigma))) for N > 10+4*sigma,
// infinity otherwise.
ExtReal joseph_lundgren(int N, double sigma);

// True when the coefficient of the singular steady state exists,
// i.e. N > 2 and N-2 > (2+sigma)/(p-1).
bool singular_coefficient_defined(const ProblemParams& params);

// c such that c * r^{-(2+sigma)/(p-1)} is an exact steady state.
double singular_coefficient(const ProblemParams& params);

RegimeInfo classify_regime(const ProblemParams& params);

} // namespace henon
