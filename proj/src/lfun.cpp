#include "starklab/lfun.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "starklab/sublat.hpp"

namespace starklab {

namespace {

constexpr mpfr_prec_t kGuardBits = 32;

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

CBall real_cball(const Ball& b) { return CBall(b, Ball(0L, b.prec())); }

CBall one_cball(mpfr_prec_t prec) { return real_cball(Ball(1L, prec)); }

// 1 - coeff * zeta^t * exp(-s log q)
Jet euler_factor(long q, const mpz_class& scale, int t, int e, int K, mpfr_prec_t prec) {
    CBall minus_log = real_cball(-Ball::log_of(q, prec));
    Jet f = Jet::exp_linear(minus_log, K);
    f *= CBall::root_of_unity(t, e, prec) * Ball(scale, prec);
    Jet one = Jet::constant(one_cball(prec), K);
    one -= f;
    one.order = 0;
    if (t == 0 && scale == 1) one.set_order(1);
    return one;
}

}  // namespace

PartialZeta::PartialZeta(const AbelianRealization& r, int K, mpfr_prec_t prec)
    : r_(r), K_(K), prec_(prec + kGuardBits) {
    if (K < 0 || K > kMaxJetOrder) throw InputError("jet order must lie in [0, 4]");
    if (prec < 53) throw InputError("precision must be at least 53 bits");
    params_ = choose_em_params(prec_);
    const long f = r.modulus;
    const long N = params_.cutoff;
    const long limit = N * f;
    const int G = r.group->order();

    std::vector<long> spf(limit + 1, 0);
    for (long i = 2; i <= limit; ++i)
        if (spf[i] == 0)
            for (long j = i; j <= limit; j += i)
                if (spf[j] == 0) spf[j] = i;
    std::vector<Ball> logs(limit + 1, Ball(prec_));
    std::vector<bool> have(limit + 1, false);
    have[1] = true;
    std::vector<std::vector<Ball>> head(G, std::vector<Ball>(K + 1, Ball(prec_)));
    for (long k = 1; k <= limit; ++k) {
        if (std::gcd(k, f) != 1) continue;
        if (k > 1) {
            const long p = spf[k];
            if (!have[p]) {
                logs[p] = Ball::log_of(p, prec_);
                have[p] = true;
            }
            if (p != k) logs[k] = logs[p] + logs[k / p];
            have[k] = true;
        }
        auto& acc = head[r.frobenius(k)];
        Ball pw(1L, prec_);
        const Ball minus_log = -logs[k];
        for (int j = 0; j <= K; ++j) {
            acc[j] += pw;
            if (j < K) pw = pw * minus_log * Ball(mpq_class(1, j + 1), prec_);
        }
    }
    std::vector<Jet> tails(G, Jet(K, prec_));
    for (long a = 1; a <= f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        tails[r.frobenius(a)] += hurwitz_tail(mpq_class(N) + mpq_class(a, f), params_, K, prec_);
    }
    Jet f_pow = Jet::exp_linear(real_cball(-Ball::log_of(f, prec_)), K);
    for (int s = 0; s < G; ++s) {
        Jet z(K, prec_);
        for (int j = 0; j <= K; ++j) z.c[j] = real_cball(head[s][j]);
        z += f_pow * tails[s];
        jets_.push_back(std::move(z));
    }
}

void validate_places(const AbelianRealization& r, const PlaceSets& st) {
    std::set<long> s(st.S.begin(), st.S.end());
    for (long q : st.S)
        if (!is_prime(q)) throw DatumError("S may only contain primes besides infinity");
    for (long q : st.T) {
        if (!is_prime(q)) throw DatumError("T may only contain primes");
        if (s.count(q)) throw DatumError("S and T must be disjoint");
    }
    for (long q : prime_factors(r.modulus))
        if (!s.count(q)) throw DatumError("S must contain every ramified prime");
}

int exact_order(const AbelianRealization& r, int chi, const PlaceSets& st) {
    int order = 0;
    if (chi != 0 && r.is_even(chi)) ++order;
    for (long q : prime_factors(r.modulus)) {
        auto t = r.primitive_exponent(chi, q);
        if (t && *t == 0) ++order;
    }
    for (long q : st.S)
        if (!r.divides_modulus(q) && r.group->char_exponent(chi, r.frobenius(q)) == 0) ++order;
    return order;
}

LJet l_jet(const PartialZeta& z, int chi, const PlaceSets& st) {
    const auto& r = z.realization();
    validate_places(r, st);
    const int K = z.truncation();
    const mpfr_prec_t prec = z.prec();
    const int e = r.group->exponent();
    Jet acc(K, prec);
    for (int s = 0; s < r.group->order(); ++s) {
        Jet term = z.of(s);
        term *= CBall::root_of_unity(r.group->char_exponent(chi, s), e, prec);
        acc += term;
    }
    acc.order = 0;
    for (long q : st.S) {
        if (r.divides_modulus(q)) continue;
        acc = acc * euler_factor(q, 1, r.group->char_exponent(chi, r.frobenius(q)), e, K, prec);
    }
    for (long q : st.T) acc = acc * euler_factor(q, q, r.group->char_exponent(chi, r.frobenius(q)), e, K, prec);
    LJet out;
    out.order = exact_order(r, chi, st);
    out.params = z.params();
    if (out.order > K) throw UnresolvedOrderError("order of vanishing exceeds the jet truncation");
    acc.set_order(out.order);
    out.jet = std::move(acc);
    return out;
}

LJet l_jet(const AbelianRealization& r, int chi, const PlaceSets& st, int K, mpfr_prec_t prec) {
    validate_places(r, st);
    const int order = exact_order(r, chi, st);
    if (order > kMaxJetOrder) throw UnresolvedOrderError("order of vanishing exceeds the maximal jet truncation");
    PartialZeta z(r, std::max(K, order), prec);
    return l_jet(z, chi, st);
}

CBall leading_coefficient(const LJet& l) {
    const CBall& c = l.jet.c.at(l.order);
    if (!c.excludes_zero()) throw PrecisionError("leading coefficient is not certified nonzero");
    return c;
}

CycloNumber bernoulli_value(const AbelianRealization& r, int chi, const PlaceSets& st) {
    validate_places(r, st);
    if (exact_order(r, chi, st) > 0) throw WrongOrderError("L-series vanishes at s = 0");
    const int e = r.group->exponent();
    const long d = r.conductor(chi);
    CycloNumber value(e);
    if (d == 1) {
        value = CycloNumber(e, mpq_class(-1, 2));
    } else {
        CycloNumber b1(e);
        for (long a = 1; a < d; ++a) {
            auto t = r.primitive_exponent(chi, a);
            if (t) b1 += CycloNumber::root_of_unity(e, *t) * mpq_class(a);
        }
        value = -(b1 * mpq_class(1, d));
    }
    const CycloNumber one(e, mpq_class(1));
    for (long q : st.S) {
        if (d % q == 0) continue;
        auto t = r.primitive_exponent(chi, q);
        value *= one - CycloNumber::root_of_unity(e, *t);
    }
    for (long q : st.T) {
        auto t = r.primitive_exponent(chi, q);
        if (t) value *= one - CycloNumber::root_of_unity(e, *t) * mpq_class(q);
    }
    return value;
}

BallGR stickelberger(const AbelianRealization& r, const PlaceSets& st, int r_order, mpfr_prec_t prec) {
    validate_places(r, st);
    if (r_order < 0 || r_order > kMaxJetOrder) throw UnresolvedOrderError("requested order outside the jet range");
    const auto& g = r.group;
    PartialZeta z(r, r_order, prec);
    std::vector<CBall> comps;
    for (int chi = 0; chi < g->order(); ++chi) {
        const int inv = g->char_inv(chi);
        const int order = exact_order(r, inv, st);
        if (order < r_order) throw DatumError("a character vanishes to order below |V|; V is not split");
        if (order > r_order) {
            comps.emplace_back(z.prec());
            continue;
        }
        LJet l = l_jet(z, inv, st);
        comps.push_back(leading_coefficient(l));
    }
    return real_part(from_components(g, comps));
}

RatGR stickelberger_exact(const AbelianRealization& r, const PlaceSets& st) {
    validate_places(r, st);
    const auto& g = r.group;
    const int e = g->exponent();
    CycGR acc(g, CycloNumber(e));
    for (int chi = 0; chi < g->order(); ++chi) {
        const int inv = g->char_inv(chi);
        if (exact_order(r, inv, st) > 0) continue;
        CycGR term = idempotent(g, chi);
        const CycloNumber v = bernoulli_value(r, inv, st);
        for (int s = 0; s < g->order(); ++s) term[s] *= v;
        acc += term;
    }
    RatGR out(g, mpq_class(0));
    for (int s = 0; s < g->order(); ++s) out[s] = acc[s].rational();
    return out;
}

BallGR leading_term_element(const AbelianRealization& r, const PlaceSets& st, mpfr_prec_t prec) {
    validate_places(r, st);
    const auto& g = r.group;
    int K = 0;
    for (int chi = 0; chi < g->order(); ++chi) K = std::max(K, exact_order(r, chi, st));
    if (K > kMaxJetOrder) throw UnresolvedOrderError("order of vanishing exceeds the maximal jet truncation");
    PartialZeta z(r, K, prec);
    std::vector<CBall> comps;
    for (int chi = 0; chi < g->order(); ++chi) comps.push_back(leading_coefficient(l_jet(z, g->char_inv(chi), st)));
    return real_part(from_components(g, comps));
}

std::vector<CBall> character_components(const BallGR& x) {
    std::vector<CBall> out;
    for (int chi = 0; chi < x.group().order(); ++chi) out.push_back(character_value(x, chi));
    return out;
}

}  // namespace starklab
