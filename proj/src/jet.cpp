#include "starklab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "starklab/errors.hpp"

namespace starklab {

Jet::Jet(int K, mpfr_prec_t prec) : c(K + 1, CBall(prec)) {}

Jet Jet::constant(const CBall& v, int K) {
    Jet j(K, v.prec());
    j.c[0] = v;
    return j;
}

Jet Jet::exp_linear(const CBall& a, int K) {
    Jet j(K, a.prec());
    j.c[0] = CBall(Ball(1L, a.prec()), Ball(0L, a.prec()));
    for (int k = 1; k <= K; ++k) j.c[k] = j.c[k - 1] * a * Ball(mpq_class(1, k), a.prec());
    return j;
}

Jet& Jet::operator+=(const Jet& b) {
    if (b.c.size() != c.size()) throw InputError("jet truncations differ");
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.c[i];
    order = std::min(order, b.order);
    return *this;
}

Jet& Jet::operator-=(const Jet& b) {
    if (b.c.size() != c.size()) throw InputError("jet truncations differ");
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c[i];
    order = std::min(order, b.order);
    return *this;
}

Jet Jet::operator*(const Jet& b) const {
    if (b.c.size() != c.size()) throw InputError("jet truncations differ");
    const int K = truncation();
    Jet out(K, prec());
    for (int i = order; i <= K; ++i)
        for (int j = b.order; i + j <= K; ++j) out.c[i + j] += c[i] * b.c[j];
    out.order = std::min(order + b.order, K + 1);
    return out;
}

Jet& Jet::operator*=(const CBall& k) {
    for (auto& x : c) x = x * k;
    return *this;
}

void Jet::set_order(int r) {
    const mpfr_prec_t p = prec();
    for (int i = 0; i < r && i <= truncation(); ++i) {
        if (!c[i].re.contains(0) || !c[i].im.contains(0))
            throw ConsistencyError("coefficient expected to vanish is certified nonzero");
        c[i] = CBall(p);
    }
    order = std::max(order, r);
}

double Jet::max_radius() const {
    double worst = 0;
    for (const auto& x : c) worst = std::max(worst, x.rad_double());
    return worst;
}

mpq_class bernoulli_number(int n) {
    static std::vector<mpq_class> cache{mpq_class(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        const int m = static_cast<int>(cache.size());
        mpq_class acc = 0;
        mpz_class binom = 1;  // C(m+1, 0)
        for (int k = 0; k < m; ++k) {
            acc += binom * cache[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        cache.push_back(-acc / mpq_class(m + 1));
    }
    return cache[n];
}

double em_remainder_bound(const EulerMaclaurinParams& p) {
    // 4 (2M)! / (2 pi)^{2M} * N^{2-2M} / (2M-2), using 2 pi > 6.28318530717958.
    const int M = p.corrections;
    if (M < 2) throw InputError("at least two correction terms are required");
    mpz_class fact = 1;
    for (int i = 2; i <= 2 * M; ++i) fact *= i;
    mpq_class two_pi_low(mpz_class("628318530717958"), mpz_class("100000000000000"));
    mpq_class denom = 1;
    for (int i = 0; i < 2 * M; ++i) denom *= two_pi_low;
    mpz_class npow = 1;
    for (int i = 0; i < 2 * M - 2; ++i) npow *= p.cutoff;
    mpq_class bound = mpq_class(4 * fact) / (denom * mpq_class(npow) * mpq_class(2 * M - 2));
    mpfr_t b;
    mpfr_init2(b, 64);
    mpfr_set_q(b, bound.get_mpq_t(), MPFR_RNDU);
    double out = mpfr_get_d(b, MPFR_RNDU);
    mpfr_clear(b);
    return out;
}

EulerMaclaurinParams choose_em_params(mpfr_prec_t prec) {
    static std::map<mpfr_prec_t, EulerMaclaurinParams> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
    const double target = std::ldexp(1.0, -static_cast<int>(prec) - 10);
    for (int M = 2; M <= 400; ++M) {
        EulerMaclaurinParams p{std::max<long>(2 * M, 20), M};
        if (em_remainder_bound(p) < target) {
            cache[prec] = p;
            return p;
        }
    }
    throw PrecisionError("no Euler-Maclaurin parameters reach the requested precision");
}

Jet hurwitz_tail(const mpq_class& y, const EulerMaclaurinParams& p, int K, mpfr_prec_t prec) {
    // Tail = (-y sum_j s^j + 1/2 + sum_k B_2k/(2k)! y^{1-2k} (s)_{2k-1}) * exp(-s log y) + R.
    std::vector<mpq_class> poly(K + 1, mpq_class(0));
    for (int j = 0; j <= K; ++j) poly[j] -= y;
    poly[0] += mpq_class(1, 2);
    std::vector<mpz_class> rising(K + 1, 0);  // (s)_{2k-1}, starting with (s)_1 = s
    if (K >= 1) rising[1] = 1;
    mpq_class ypow = 1 / y;  // y^{1-2k} at k = 1
    mpz_class fact = 2;      // (2k)!
    for (int k = 1; k <= p.corrections; ++k) {
        mpq_class coef = bernoulli_number(2 * k) / mpq_class(fact) * ypow;
        for (int j = 0; j <= K; ++j)
            if (rising[j] != 0) poly[j] += coef * mpq_class(rising[j]);
        // (s)_{2k+1} = (s)_{2k-1} (s + 2k - 1)(s + 2k)
        for (long shift : {2L * k - 1, 2L * k}) {
            std::vector<mpz_class> next(K + 1, 0);
            for (int j = 0; j <= K; ++j) {
                next[j] += rising[j] * shift;
                if (j + 1 <= K) next[j + 1] += rising[j];
            }
            rising = std::move(next);
        }
        ypow /= y * y;
        fact *= (2 * k + 1) * (2 * k + 2);
    }
    Jet base(K, prec);
    for (int j = 0; j <= K; ++j) base.c[j] = CBall(Ball(poly[j], prec), Ball(0L, prec));
    CBall minus_log(-log(Ball(y, prec)), Ball(0L, prec));
    Jet out = base * Jet::exp_linear(minus_log, K);
    const double r = em_remainder_bound(p);
    for (auto& x : out.c) x.re.add_error(r);
    return out;
}

HurwitzResult hurwitz_jet(const mpq_class& x, int K, mpfr_prec_t prec) {
    if (x <= 0 || x > 1) throw InputError("Hurwitz parameter must lie in (0, 1]");
    if (prec < 53) throw InputError("precision must be at least 53 bits");
    if (K < 0 || K > 4) throw InputError("jet order must lie in [0, 4]");
    const mpfr_prec_t work = prec + 32;
    EulerMaclaurinParams p = choose_em_params(work);
    Jet acc(K, work);
    for (long n = 0; n < p.cutoff; ++n) {
        CBall minus_log(-log(Ball(mpq_class(n) + x, work)), Ball(0L, work));
        acc += Jet::exp_linear(minus_log, K);
    }
    acc += hurwitz_tail(mpq_class(p.cutoff) + x, p, K, work);
    // c_0 = 1/2 - x exactly.
    const mpq_class c0 = mpq_class(1, 2) - x;
    if (!acc.c[0].re.contains(c0)) throw ConsistencyError("Hurwitz constant term disagrees with 1/2 - x");
    acc.c[0] = CBall(Ball(c0, work), Ball(0L, work));
    if (c0 == 0) acc.order = 1;
    return {acc, p};
}

}  // namespace starklab
