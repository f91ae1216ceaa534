#include "starklab/quadfield.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "starklab/dirichlet.hpp"
#include "starklab/errors.hpp"

namespace starklab {

namespace {

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long mod(const mpz_class& a, long m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r.get_si();
}

long inverse_mod(long a, long m) {
    mpz_class r;
    mpz_class am(a), mm(m);
    if (!mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t())) throw InputError("not invertible modulo the prime");
    return r.get_si();
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

QuadNumber::QuadNumber(long d, mpq_class x, mpq_class y) : D(d), a(std::move(x)), b(std::move(y)) {
    if (D == 1) {
        a += b;
        b = 0;
    }
}

QuadNumber QuadNumber::from_coords(long d, const mpz_class& x, const mpz_class& y) {
    return QuadNumber(d, mpq_class(x) + ratio(y * d, 2), ratio(y, 2));
}

QuadNumber QuadNumber::operator+(const QuadNumber& o) const { return {D, a + o.a, b + o.b}; }
QuadNumber QuadNumber::operator-(const QuadNumber& o) const { return {D, a - o.a, b - o.b}; }

QuadNumber QuadNumber::operator*(const QuadNumber& o) const {
    return {D, a * o.a + b * o.b * D, a * o.b + b * o.a};
}

mpq_class QuadNumber::norm() const {
    if (D == 1) return a;
    return a * a - b * b * D;
}

QuadNumber QuadNumber::inverse() const {
    if (is_zero()) throw InputError("inverse of zero");
    if (D == 1) return {D, 1 / a, 0};
    const mpq_class n = norm();
    return {D, a / n, -b / n};
}

QuadNumber QuadNumber::pow(long k) const {
    QuadNumber base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? -k : k;
    QuadNumber out(D, 1);
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

bool QuadNumber::is_integral() const {
    if (D == 1) return a.get_den() == 1;
    const mpq_class t = trace(), n = norm();
    return t.get_den() == 1 && n.get_den() == 1;
}

std::pair<mpz_class, mpz_class> QuadNumber::coords() const {
    if (!is_integral()) throw InputError("coordinates of a non-integral element");
    if (D == 1) return {a.get_num(), 0};
    const mpq_class y = 2 * b;
    const mpq_class x = a - b * D;
    return {x.get_num(), y.get_num()};
}

mpz_class QuadNumber::denominator() const {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    const long bound = l.get_si();
    for (long n = 1; n <= bound; ++n) {
        if (bound % n) continue;
        if ((QuadNumber(D, a * n, b * n)).is_integral()) return n;
    }
    return l;
}

Ball QuadNumber::real_embedding(int sign, mpfr_prec_t prec) const {
    if (D < 0) throw InputError("no real embedding of an imaginary quadratic field");
    Ball out(a, prec);
    if (b != 0) {
        Ball s = Ball(b, prec) * sqrt(Ball(D, prec));
        if (sign > 0) out += s;
        else out -= s;
    }
    return out;
}

std::string QuadNumber::to_string() const {
    std::ostringstream os;
    os << a.get_str();
    if (b != 0) os << (b > 0 ? " + " : " - ") << mpq_class(abs(b)).get_str() << "*sqrt(" << D << ")";
    return os.str();
}

QuadIdeal QuadIdeal::from_generators(long d, const std::vector<QuadNumber>& gens) {
    if (d == 1) throw InputError("ideals are only modelled for quadratic fields");
    const QuadNumber omega = QuadNumber::from_coords(d, 0, 1);
    IntMat rows;
    for (const auto& g : gens) {
        for (const auto& x : {g, g * omega}) {
            auto [u, v] = x.coords();
            rows.push_back({u, v});
        }
    }
    QuadIdeal out;
    out.D = d;
    out.basis = hnf(rows, 2);
    return out;
}

mpz_class QuadIdeal::norm() const { return hnf_index(basis, 2); }

bool QuadIdeal::contains(const QuadNumber& x) const {
    if (!x.is_integral()) return false;
    auto [u, v] = x.coords();
    return hnf_contains(basis, {u, v});
}

QuadIdeal QuadIdeal::operator*(const QuadIdeal& o) const {
    std::vector<QuadNumber> gens;
    for (const auto& r : basis)
        for (const auto& s : o.basis)
            gens.push_back(QuadNumber::from_coords(D, r[0], r[1]) * QuadNumber::from_coords(D, s[0], s[1]));
    return from_generators(D, gens);
}

QuadIdeal QuadIdeal::conj() const {
    std::vector<QuadNumber> gens;
    for (const auto& r : basis) gens.push_back(QuadNumber::from_coords(D, r[0], r[1]).conj());
    return from_generators(D, gens);
}

QuadIdeal QuadIdeal::power(int k) const {
    if (k < 0) throw InputError("negative ideal power");
    QuadIdeal out = unit(D);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

Splitting splitting_type(long D, long p) {
    if (D % p == 0) return Splitting::Ramified;
    return kronecker(D, p) == 1 ? Splitting::Split : Splitting::Inert;
}

std::vector<PrimeIdeal> primes_above(long D, long p) {
    if (D == 1) throw InputError("prime ideals are only modelled for quadratic fields");
    const mpz_class c0 = (mpz_class(D) * D - D) / 4;
    std::vector<long> roots;
    for (long x = 0; x < p; ++x) {
        mpz_class v = mpz_class(x) * x - mpz_class(D) * x + c0;
        if (mod(v, p) == 0) roots.push_back(x);
    }
    const QuadNumber omega = QuadNumber::from_coords(D, 0, 1);
    const QuadNumber pp(D, p);
    std::vector<PrimeIdeal> out;
    const Splitting type = splitting_type(D, p);
    if (type == Splitting::Inert) {
        PrimeIdeal P{p, type, -1, p * p, 1, QuadIdeal::from_generators(D, {pp})};
        out.push_back(P);
        return out;
    }
    for (long r : roots) {
        PrimeIdeal P{p, type, r, p, type == Splitting::Ramified ? 2 : 1,
                     QuadIdeal::from_generators(D, {pp, omega - QuadNumber(D, r)})};
        out.push_back(P);
    }
    if (out.size() != (type == Splitting::Split ? 2u : 1u)) throw ConsistencyError("prime decomposition mismatch");
    return out;
}

int valuation(const QuadNumber& x, const PrimeIdeal& P) {
    if (x.is_zero()) throw InputError("valuation of zero");
    const mpz_class n = x.denominator();
    const QuadNumber beta(x.D, x.a * n, x.b * n);
    int k = 0;
    QuadIdeal power = P.ideal;
    while (power.contains(beta)) {
        ++k;
        power = power * P.ideal;
    }
    int vn = 0;
    mpz_class m = n;
    while (m % P.p == 0) {
        m /= P.p;
        ++vn;
    }
    return k - P.ram_index * vn;
}

ResidueField::ResidueField(long D, const PrimeIdeal& P) : D_(D), P_(P), order_(P.norm - 1) {
    if (P.norm > 10000000) throw CapacityError("residue field too large for a discrete-log table");
    const long p = P.p;
    const long N = P.norm;
    const long c0 = mod((mpz_class(D) * D - D) / 4, p);
    const long dm = mod(D, p);
    auto mul = [&](long x, long y) -> long {
        if (P.type != Splitting::Inert) return x * y % p;
        const long u1 = x % p, v1 = x / p, u2 = y % p, v2 = y / p;
        const long vv = v1 * v2 % p;
        const long u = mod(u1 * u2 - vv * c0, p);
        const long v = mod(u1 * v2 + u2 * v1 + vv * dm, p);
        return u + p * v;
    };
    const auto qs = prime_divisors(N - 1);
    auto power = [&](long g, long e) {
        long out = 1, b = g;
        while (e) {
            if (e & 1) out = mul(out, b);
            b = mul(b, b);
            e >>= 1;
        }
        return out;
    };
    long gen = -1;
    for (long g = 1; g < N && gen < 0; ++g) {
        if (g % p == 0 && P.type != Splitting::Inert) continue;
        if (g == 0) continue;
        bool ok = true;
        for (long q : qs)
            if (power(g, (N - 1) / q) == 1) {
                ok = false;
                break;
            }
        if (ok) gen = g;
    }
    if (gen < 0) throw ConsistencyError("no generator of the residue field found");
    table_.assign(N, -1);
    long x = 1;
    for (long k = 0; k < N - 1; ++k) {
        table_[x] = k;
        x = mul(x, gen);
    }
}

long ResidueField::encode(const QuadNumber& x) const {
    const long p = P_.p;
    const mpz_class n = x.denominator();
    if (n % p == 0) throw InputError("element is not integral at the residue prime");
    const QuadNumber beta(x.D, x.a * n, x.b * n);
    auto [u, v] = beta.coords();
    const long ninv = inverse_mod(mod(n, p), p);
    if (P_.type == Splitting::Inert) return mod(u, p) * ninv % p + p * (mod(v, p) * ninv % p);
    return mod(mpz_class(u + v * P_.root), p) * ninv % p;
}

long ResidueField::log(const QuadNumber& x) const {
    const long e = encode(x);
    if (e == 0 || table_[e] < 0) throw InputError("element is not a unit at the residue prime");
    return table_[e];
}

long ResidueField::conjugation_multiplier() const { return P_.type == Splitting::Inert ? P_.p : 1; }

namespace {
Ball ball_log(const Ball& x) { return log(x); }
}  // namespace

Ball FundamentalUnit::log(mpfr_prec_t prec) const { return ball_log(unit.real_embedding(1, prec)); }

FundamentalUnit fundamental_unit(long D, long max_steps) {
    if (D <= 1 || !is_fundamental_discriminant(D)) throw InputError("fundamental unit needs a positive fundamental discriminant");
    const long s = D % 2;
    const mpz_class root = sqrt(mpz_class(D));
    mpz_class P = s, Q = 2;
    mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (long step = 0; step < max_steps; ++step) {
        mpz_class num = P + root;
        mpz_class a;
        if (Q > 0) mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        else {
            mpz_class aq = -Q;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), aq.get_mpz_t());
            a = -a - 1;
        }
        const mpz_class p = a * p1 + p2, q = a * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        const mpz_class n = p * p - s * p * q + q * q * (s * s - D) / 4;
        if (n == 1 || n == -1) {
            FundamentalUnit out;
            out.unit = QuadNumber(D, mpq_class(p) - ratio(q * s, 2), ratio(q, 2));
            out.norm = n.get_si();
            return out;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    throw CapacityError("continued fraction period exceeds the step cap");
}

int roots_of_unity_count(long D) {
    if (D == -4) return 4;
    if (D == -3) return 6;
    return 2;
}

QuadNumber torsion_generator(long D) {
    if (D == -4) return QuadNumber(D, 0, mpq_class(1, 2));
    if (D == -3) return QuadNumber(D, mpq_class(1, 2), mpq_class(1, 2));
    return QuadNumber(D, -1);
}

}  // namespace starklab
