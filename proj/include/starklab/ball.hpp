#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace starklab {

// Midpoint-radius real ball. The midpoint carries `prec` bits and is rounded
// to nearest; every rounding error is pushed into the radius, which is kept
// at 64 bits and always rounded upward. A Ball therefore always contains the
// exact value of the expression that produced it.
class Ball {
public:
    explicit Ball(mpfr_prec_t prec = 128);
    Ball(long value, mpfr_prec_t prec);
    Ball(const mpz_class& value, mpfr_prec_t prec);
    Ball(const mpq_class& value, mpfr_prec_t prec);
    Ball(const Ball& other);
    Ball(Ball&& other) noexcept;
    Ball& operator=(const Ball& other);
    Ball& operator=(Ball&& other) noexcept;
    ~Ball();

    static Ball from_decimal(const std::string& mid, const std::string& rad, mpfr_prec_t prec);
    static Ball pi(mpfr_prec_t prec);
    static Ball log_of(const mpz_class& n, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
    mpfr_srcptr mid() const { return mid_; }
    mpfr_srcptr rad() const { return rad_; }
    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }
    bool is_exact() const { return mpfr_zero_p(rad_) != 0; }

    /// Enlarges the radius by `extra` (rounded up).
    void add_error(mpfr_srcptr extra);
    void add_error(double extra);

    Ball operator-() const;
    Ball& operator+=(const Ball& b);
    Ball& operator-=(const Ball& b);
    Ball& operator*=(const Ball& b);
    Ball& operator/=(const Ball& b);
    friend Ball operator+(Ball a, const Ball& b) { return a += b; }
    friend Ball operator-(Ball a, const Ball& b) { return a -= b; }
    friend Ball operator*(Ball a, const Ball& b) { return a *= b; }
    friend Ball operator/(Ball a, const Ball& b) { return a /= b; }

    bool contains_zero() const;
    bool excludes_zero() const { return !contains_zero(); }
    bool contains(const mpq_class& q) const;
    /// +1 / -1 when the ball excludes zero, otherwise 0 (undecided).
    int certified_sign() const;
    /// Upper bound for |x| over the ball.
    double abs_upper() const;

    /// The unique integer n with radius < 1/4 and |mid - n| < 1/4, if any.
    std::optional<mpz_class> certify_integer() const;

    std::string mid_string(int digits = 0) const;
    std::string rad_string() const;

    friend Ball log(const Ball& x);
    friend Ball exp(const Ball& x);
    friend Ball sqrt(const Ball& x);
    friend Ball sin(const Ball& x);
    friend Ball cos(const Ball& x);
    friend Ball abs(const Ball& x);

private:
    void round_error_from_mid();
    mpfr_t mid_;
    mpfr_t rad_;
};

// Complex ball as a pair of real balls (rectangular enclosure).
struct CBall {
    Ball re;
    Ball im;

    explicit CBall(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
    explicit CBall(Ball r) : re(std::move(r)), im(re.prec()) {}

    /// exp(2 pi i t / e), exact for the quarter turns.
    static CBall root_of_unity(long t, long e, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return re.prec(); }
    CBall conj() const { return {re, -im}; }
    CBall operator-() const { return {-re, -im}; }
    CBall& operator+=(const CBall& b);
    CBall& operator-=(const CBall& b);
    CBall& operator*=(const CBall& b);
    CBall& operator*=(const Ball& b);
    friend CBall operator+(CBall a, const CBall& b) { return a += b; }
    friend CBall operator-(CBall a, const CBall& b) { return a -= b; }
    friend CBall operator*(CBall a, const CBall& b) { return a *= b; }
    friend CBall operator*(CBall a, const Ball& b) { return a *= b; }
    CBall inverse() const;

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool excludes_zero() const { return re.excludes_zero() || im.excludes_zero(); }
    double rad_double() const;
};

}  // namespace starklab
