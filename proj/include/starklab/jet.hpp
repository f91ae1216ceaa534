#pragma once

#include <gmpxx.h>

#include <vector>

#include "starklab/ball.hpp"

namespace starklab {

/// Truncated Taylor expansion c_0 + c_1 s + ... + c_K s^K at s = 0. The
/// first `order` coefficients are known to be exactly zero.
struct Jet {
    std::vector<CBall> c;
    int order = 0;

    Jet() = default;
    Jet(int K, mpfr_prec_t prec);
    static Jet constant(const CBall& v, int K);
    /// exp(a s) truncated at K.
    static Jet exp_linear(const CBall& a, int K);

    int truncation() const { return static_cast<int>(c.size()) - 1; }
    mpfr_prec_t prec() const { return c.front().prec(); }

    Jet& operator+=(const Jet& b);
    Jet& operator-=(const Jet& b);
    Jet operator*(const Jet& b) const;
    Jet& operator*=(const CBall& k);
    /// Declares the first r coefficients exactly zero after checking that
    /// their balls contain zero (ConsistencyError otherwise).
    void set_order(int r);
    double max_radius() const;
};

/// Exact Bernoulli number B_n (B_1 = -1/2).
mpq_class bernoulli_number(int n);

struct EulerMaclaurinParams {
    long cutoff = 0;     // N: terms summed directly
    int corrections = 0; // M: Bernoulli correction terms
};

/// Parameters whose tail bound is below 2^{-prec-10} on |s| <= 1.
EulerMaclaurinParams choose_em_params(mpfr_prec_t prec);

/// Upper bound for the Euler-Maclaurin remainder on |s| <= 1 at (N, M), which
/// by Cauchy's estimate also bounds each Taylor coefficient of the remainder.
double em_remainder_bound(const EulerMaclaurinParams& p);

/// sum_{n >= N} (n + x)^{-s} as a jet via the Euler-Maclaurin tail at y = N + x.
Jet hurwitz_tail(const mpq_class& y, const EulerMaclaurinParams& p, int K, mpfr_prec_t prec);

struct HurwitzResult {
    Jet jet;
    EulerMaclaurinParams params;
};

/// Taylor coefficients of zeta(s, x) at s = 0 for rational x in (0, 1].
HurwitzResult hurwitz_jet(const mpq_class& x, int K, mpfr_prec_t prec);

}  // namespace starklab
