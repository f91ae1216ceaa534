#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "starklab/ball.hpp"

namespace starklab {

/// Coefficients (constant term first) of the e-th cyclotomic polynomial.
std::vector<mpz_class> cyclotomic_polynomial(int e);

/// Element of Q(zeta_e), stored as a polynomial in zeta_e of degree < phi(e).
class CycloNumber {
public:
    explicit CycloNumber(int e = 1);
    CycloNumber(int e, const mpq_class& rational);

    /// zeta_e^t.
    static CycloNumber root_of_unity(int e, long t);

    int order() const { return e_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// The rational value; throws InputError when not rational.
    mpq_class rational() const;

    CycloNumber operator-() const;
    CycloNumber& operator+=(const CycloNumber& b);
    CycloNumber& operator-=(const CycloNumber& b);
    CycloNumber& operator*=(const CycloNumber& b);
    CycloNumber& operator*=(const mpq_class& q);
    friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
    friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
    friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
    friend CycloNumber operator*(CycloNumber a, const mpq_class& q) { return a *= q; }
    friend bool operator==(const CycloNumber& a, const CycloNumber& b);

    /// Complex conjugation zeta -> zeta^{-1}.
    CycloNumber conj() const;
    CBall to_cball(mpfr_prec_t prec) const;
    std::string to_string() const;

private:
    void reduce(std::vector<mpq_class> poly);
    int e_;
    std::vector<mpq_class> c_;
};

}  // namespace starklab
