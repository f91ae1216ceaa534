#include "starklab/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "starklab/errors.hpp"

namespace starklab {

namespace {

using Poly = std::vector<mpz_class>;

Poly poly_div_exact(const Poly& a, const Poly& b) {
    Poly rem = a;
    Poly q(a.size() - b.size() + 1);
    for (size_t i = q.size(); i-- > 0;) {
        mpz_class c = rem[i + b.size() - 1] / b.back();
        q[i] = c;
        for (size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
    }
    return q;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(int e) {
    if (e < 1) throw InputError("cyclotomic order must be positive");
    static std::map<int, Poly> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    // x^e - 1 divided by Phi_d for every proper divisor d.
    Poly p(e + 1, 0);
    p[0] = -1;
    p[e] = 1;
    for (int d = 1; d < e; ++d) {
        if (e % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
    }
    cache[e] = p;
    return p;
}

CycloNumber::CycloNumber(int e) : e_(e) {
    c_.assign(cyclotomic_polynomial(e).size() - 1, mpq_class(0));
}

CycloNumber::CycloNumber(int e, const mpq_class& rational) : CycloNumber(e) {
    c_[0] = rational;
}

CycloNumber CycloNumber::root_of_unity(int e, long t) {
    long r = ((t % e) + e) % e;
    std::vector<mpq_class> poly(r + 1, mpq_class(0));
    poly[r] = 1;
    CycloNumber z(e);
    z.reduce(std::move(poly));
    return z;
}

void CycloNumber::reduce(std::vector<mpq_class> poly) {
    const Poly phi = cyclotomic_polynomial(e_);
    const size_t deg = phi.size() - 1;
    // Phi_e is monic.
    for (size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0) continue;
        mpq_class c = poly[i];
        for (size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * mpq_class(phi[j]);
    }
    poly.resize(deg, mpq_class(0));
    c_ = std::move(poly);
}

bool CycloNumber::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycloNumber::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

mpq_class CycloNumber::rational() const {
    if (!is_rational()) throw InputError("cyclotomic number is not rational");
    return c_[0];
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& b) {
    if (b.e_ != e_) throw InputError("cyclotomic orders differ");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& b) {
    if (b.e_ != e_) throw InputError("cyclotomic orders differ");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& b) {
    if (b.e_ != e_) throw InputError("cyclotomic orders differ");
    std::vector<mpq_class> prod(c_.size() + b.c_.size(), mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += c_[i] * b.c_[j];
    }
    reduce(std::move(prod));
    return *this;
}

CycloNumber& CycloNumber::operator*=(const mpq_class& q) {
    for (auto& x : c_) x *= q;
    return *this;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
    return a.e_ == b.e_ && a.c_ == b.c_;
}

CycloNumber CycloNumber::conj() const {
    std::vector<mpq_class> poly(e_ + 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) poly[(e_ - static_cast<int>(i)) % e_] += c_[i];
    CycloNumber r(e_);
    r.reduce(std::move(poly));
    return r;
}

CBall CycloNumber::to_cball(mpfr_prec_t prec) const {
    CBall acc(prec);
    acc.re = Ball(0L, prec);
    acc.im = Ball(0L, prec);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        acc += CBall::root_of_unity(static_cast<long>(i), e_, prec) * Ball(c_[i], prec);
    }
    return acc;
}

std::string CycloNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i > 0) os << "*z^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace starklab
