#include "starklab/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "starklab/errors.hpp"

namespace starklab {

namespace {

constexpr mpfr_prec_t kRadPrec = 64;

// RAII scratch value used for radius bookkeeping.
struct Tmp {
    mpfr_t v;
    explicit Tmp(mpfr_prec_t p = kRadPrec) { mpfr_init2(v, p); mpfr_set_zero(v, 1); }
    ~Tmp() { mpfr_clear(v); }
    Tmp(const Tmp&) = delete;
    Tmp& operator=(const Tmp&) = delete;
    operator mpfr_ptr() { return v; }
    mpfr_ptr operator->() { return v; }
};

void add_ulp(mpfr_ptr rad, mpfr_srcptr m)
{
    if (mpfr_zero_p(m) || !mpfr_number_p(m)) return;
    Tmp u;
    mpfr_set_ui_2exp(u, 1, mpfr_get_exp(m) - mpfr_get_prec(m), MPFR_RNDU);
    mpfr_add(rad, rad, u, MPFR_RNDU);
}

// |m| rounded up into a radius-precision value.
void abs_up(mpfr_ptr out, mpfr_srcptr m) { mpfr_abs(out, m, MPFR_RNDU); }

// Lower bound of |x| over the ball (may be <= 0).
void abs_lower(mpfr_ptr out, mpfr_srcptr mid, mpfr_srcptr rad)
{
    Tmp a(std::max<mpfr_prec_t>(mpfr_get_prec(mid), kRadPrec));
    mpfr_abs(a, mid, MPFR_RNDD);
    mpfr_sub(out, a, rad, MPFR_RNDD);
}

}  // namespace

Ball::Ball(mpfr_prec_t prec)
{
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

Ball::Ball(long value, mpfr_prec_t prec) : Ball(prec)
{
    if (mpfr_set_si(mid_, value, MPFR_RNDN) != 0) round_error_from_mid();
}

Ball::Ball(const mpz_class& value, mpfr_prec_t prec) : Ball(prec)
{
    if (mpfr_set_z(mid_, value.get_mpz_t(), MPFR_RNDN) != 0) round_error_from_mid();
}

Ball::Ball(const mpq_class& value, mpfr_prec_t prec) : Ball(prec)
{
    if (mpfr_set_q(mid_, value.get_mpq_t(), MPFR_RNDN) != 0) round_error_from_mid();
}

Ball::Ball(const Ball& other)
{
    mpfr_init2(mid_, other.prec());
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, other.mid_, MPFR_RNDN);
    mpfr_set(rad_, other.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& other) noexcept : Ball(other.prec())
{
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
}

Ball& Ball::operator=(const Ball& other)
{
    if (this != &other) {
        mpfr_set_prec(mid_, other.prec());
        mpfr_set(mid_, other.mid_, MPFR_RNDN);
        mpfr_set(rad_, other.rad_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& other) noexcept
{
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
    return *this;
}

Ball::~Ball()
{
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

Ball Ball::from_decimal(const std::string& mid, const std::string& rad, mpfr_prec_t prec)
{
    Ball b(prec);
    if (mpfr_set_str(b.mid_, mid.c_str(), 10, MPFR_RNDN) != 0) {
        if (mpfr_nan_p(b.mid_)) throw InputError("bad decimal midpoint: " + mid);
        b.round_error_from_mid();
    }
    Tmp r;
    if (mpfr_set_str(r, rad.c_str(), 10, MPFR_RNDU) < 0 || mpfr_nan_p(r))
        throw InputError("bad decimal radius: " + rad);
    mpfr_add(b.rad_, b.rad_, r, MPFR_RNDU);
    return b;
}

Ball Ball::pi(mpfr_prec_t prec)
{
    Ball b(prec);
    mpfr_const_pi(b.mid_, MPFR_RNDN);
    b.round_error_from_mid();
    return b;
}

Ball Ball::log_of(const mpz_class& n, mpfr_prec_t prec)
{
    if (n <= 0) throw InputError("log of non-positive integer");
    Tmp x(prec + 32);
    mpfr_set_z(x, n.get_mpz_t(), MPFR_RNDN);
    Ball b(prec);
    mpfr_log(b.mid_, x, MPFR_RNDN);
    b.round_error_from_mid();
    b.round_error_from_mid();
    return b;
}

void Ball::round_error_from_mid() { add_ulp(rad_, mid_); }

void Ball::add_error(mpfr_srcptr extra)
{
    Tmp e;
    mpfr_abs(e, extra, MPFR_RNDU);
    mpfr_add(rad_, rad_, e, MPFR_RNDU);
}

void Ball::add_error(double extra)
{
    Tmp e;
    mpfr_set_d(e, std::fabs(extra), MPFR_RNDU);
    mpfr_add(rad_, rad_, e, MPFR_RNDU);
}

Ball Ball::operator-() const
{
    Ball r(*this);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

Ball& Ball::operator+=(const Ball& b)
{
    mpfr_prec_t p = std::max(prec(), b.prec());
    if (p != prec()) mpfr_prec_round(mid_, p, MPFR_RNDN);
    if (mpfr_add(mid_, mid_, b.mid_, MPFR_RNDN) != 0) round_error_from_mid();
    mpfr_add(rad_, rad_, b.rad_, MPFR_RNDU);
    return *this;
}

Ball& Ball::operator-=(const Ball& b)
{
    mpfr_prec_t p = std::max(prec(), b.prec());
    if (p != prec()) mpfr_prec_round(mid_, p, MPFR_RNDN);
    if (mpfr_sub(mid_, mid_, b.mid_, MPFR_RNDN) != 0) round_error_from_mid();
    mpfr_add(rad_, rad_, b.rad_, MPFR_RNDU);
    return *this;
}

Ball& Ball::operator*=(const Ball& b)
{
    // rad = |ma| rb + |mb| ra + ra rb
    Tmp t1, t2, t3;
    abs_up(t1, mid_);
    mpfr_mul(t1, t1, b.rad_, MPFR_RNDU);
    abs_up(t2, b.mid_);
    mpfr_mul(t2, t2, rad_, MPFR_RNDU);
    mpfr_mul(t3, rad_, b.rad_, MPFR_RNDU);
    mpfr_add(t1, t1, t2, MPFR_RNDU);
    mpfr_add(rad_, t1, t3, MPFR_RNDU);

    mpfr_prec_t p = std::max(prec(), b.prec());
    if (p != prec()) mpfr_prec_round(mid_, p, MPFR_RNDN);
    if (mpfr_mul(mid_, mid_, b.mid_, MPFR_RNDN) != 0) round_error_from_mid();
    return *this;
}

Ball& Ball::operator/=(const Ball& b)
{
    Tmp lo;
    abs_lower(lo, b.mid_, b.rad_);
    if (mpfr_sgn(lo) <= 0) throw PrecisionError("division by a ball containing zero");
    // rad = (ra |mb| + |ma| rb) / (|mb| (|mb| - rb))
    Tmp t1, t2, den, amb;
    mpfr_abs(amb, b.mid_, MPFR_RNDD);
    abs_up(t1, b.mid_);
    mpfr_mul(t1, t1, rad_, MPFR_RNDU);
    abs_up(t2, mid_);
    mpfr_mul(t2, t2, b.rad_, MPFR_RNDU);
    mpfr_add(t1, t1, t2, MPFR_RNDU);
    mpfr_mul(den, amb, lo, MPFR_RNDD);
    mpfr_div(rad_, t1, den, MPFR_RNDU);

    mpfr_prec_t p = std::max(prec(), b.prec());
    if (p != prec()) mpfr_prec_round(mid_, p, MPFR_RNDN);
    if (mpfr_div(mid_, mid_, b.mid_, MPFR_RNDN) != 0) round_error_from_mid();
    return *this;
}

bool Ball::contains_zero() const
{
    Tmp lo;
    abs_lower(lo, mid_, rad_);
    return mpfr_sgn(lo) <= 0;
}

bool Ball::contains(const mpq_class& q) const
{
    Tmp d(prec() + 64);
    mpfr_set_q(d, q.get_mpq_t(), MPFR_RNDN);
    // |mid - q| <= rad, with q itself rounded: widen by one ulp of d.
    Tmp diff(prec() + 64);
    mpfr_sub(diff, mid_, d, MPFR_RNDN);
    Ball probe(prec() + 64);
    mpfr_set(probe.mid_, diff, MPFR_RNDN);
    mpfr_set(probe.rad_, rad_, MPFR_RNDU);
    add_ulp(probe.rad_, d);
    add_ulp(probe.rad_, diff);
    return probe.contains_zero();
}

int Ball::certified_sign() const
{
    if (contains_zero()) return 0;
    return mpfr_sgn(mid_) > 0 ? 1 : -1;
}

double Ball::abs_upper() const
{
    Tmp t;
    abs_up(t, mid_);
    mpfr_add(t, t, rad_, MPFR_RNDU);
    return mpfr_get_d(t, MPFR_RNDU);
}

std::optional<mpz_class> Ball::certify_integer() const
{
    Tmp quarter;
    mpfr_set_d(quarter, 0.25, MPFR_RNDN);
    if (mpfr_cmp(rad_, quarter) >= 0) return std::nullopt;
    Tmp rounded(prec());
    mpfr_round(rounded, mid_);
    Tmp diff(prec());
    mpfr_sub(diff, mid_, rounded, MPFR_RNDN);  // exact: same exponent range
    mpfr_abs(diff, diff, MPFR_RNDU);
    if (mpfr_cmp(diff, quarter) >= 0) return std::nullopt;
    mpz_class n;
    mpfr_get_z(n.get_mpz_t(), rounded, MPFR_RNDN);
    return n;
}

std::string Ball::mid_string(int digits) const
{
    if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 1;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%%.%dRNe", digits - 1);
    char* out = nullptr;
    mpfr_asprintf(&out, buf, mid_);
    std::string r(out);
    mpfr_free_str(out);
    return r;
}

std::string Ball::rad_string() const
{
    char* out = nullptr;
    mpfr_asprintf(&out, "%.6RUe", rad_);
    std::string r(out);
    mpfr_free_str(out);
    return r;
}

Ball log(const Ball& x)
{
    Tmp lo(std::max<mpfr_prec_t>(x.prec(), kRadPrec));
    mpfr_sub(lo, x.mid_, x.rad_, MPFR_RNDD);
    if (mpfr_sgn(lo) <= 0) throw PrecisionError("log of a ball not certified positive");
    Ball r(x.prec());
    if (mpfr_log(r.mid_, x.mid_, MPFR_RNDN) != 0) r.round_error_from_mid();
    if (!mpfr_zero_p(x.rad_)) {
        Tmp lo64;
        mpfr_set(lo64, lo, MPFR_RNDD);
        mpfr_div(r.rad_, x.rad_, lo64, MPFR_RNDU);
        r.round_error_from_mid();
    }
    return r;
}

Ball exp(const Ball& x)
{
    Ball r(x.prec());
    if (mpfr_exp(r.mid_, x.mid_, MPFR_RNDN) != 0) r.round_error_from_mid();
    if (!mpfr_zero_p(x.rad_)) {
        // |exp(m+t) - exp(m)| <= exp(m) (exp(r) - 1)
        Tmp em, e1;
        mpfr_exp(em, x.mid_, MPFR_RNDU);
        mpfr_expm1(e1, x.rad_, MPFR_RNDU);
        mpfr_mul(em, em, e1, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, em, MPFR_RNDU);
    }
    return r;
}

Ball sqrt(const Ball& x)
{
    Tmp lo(std::max<mpfr_prec_t>(x.prec(), kRadPrec));
    mpfr_sub(lo, x.mid_, x.rad_, MPFR_RNDD);
    if (mpfr_sgn(lo) < 0 || (mpfr_zero_p(lo) && !mpfr_zero_p(x.rad_)))
        throw PrecisionError("sqrt of a ball not certified positive");
    Ball r(x.prec());
    if (mpfr_sqrt(r.mid_, x.mid_, MPFR_RNDN) != 0) r.round_error_from_mid();
    if (!mpfr_zero_p(x.rad_)) {
        Tmp s;
        mpfr_sqrt(s, lo, MPFR_RNDD);
        mpfr_mul_2ui(s, s, 1, MPFR_RNDD);
        mpfr_div(s, x.rad_, s, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, s, MPFR_RNDU);
    }
    return r;
}

Ball sin(const Ball& x)
{
    Ball r(x.prec());
    if (mpfr_sin(r.mid_, x.mid_, MPFR_RNDN) != 0) r.round_error_from_mid();
    mpfr_add(r.rad_, r.rad_, x.rad_, MPFR_RNDU);
    return r;
}

Ball cos(const Ball& x)
{
    Ball r(x.prec());
    if (mpfr_cos(r.mid_, x.mid_, MPFR_RNDN) != 0) r.round_error_from_mid();
    mpfr_add(r.rad_, r.rad_, x.rad_, MPFR_RNDU);
    return r;
}

Ball abs(const Ball& x)
{
    Ball r(x);
    mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

CBall CBall::root_of_unity(long t, long e, mpfr_prec_t prec)
{
    t %= e;
    if (t < 0) t += e;
    if (t == 0) return CBall(Ball(1L, prec));
    if (2 * t == e) return CBall(Ball(-1L, prec));
    if (4 * t == e) return {Ball(0L, prec), Ball(1L, prec)};
    if (4 * t == 3 * e) return {Ball(0L, prec), Ball(-1L, prec)};
    mpq_class turn(2 * t, e);
    turn.canonicalize();
    Ball angle = Ball::pi(prec + 16) * Ball(turn, prec + 16);
    return {cos(angle), sin(angle)};
}

CBall& CBall::operator+=(const CBall& b)
{
    re += b.re;
    im += b.im;
    return *this;
}

CBall& CBall::operator-=(const CBall& b)
{
    re -= b.re;
    im -= b.im;
    return *this;
}

CBall& CBall::operator*=(const CBall& b)
{
    Ball r = re * b.re - im * b.im;
    Ball i = re * b.im + im * b.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

CBall& CBall::operator*=(const Ball& b)
{
    re *= b;
    im *= b;
    return *this;
}

CBall CBall::inverse() const
{
    Ball n = re * re + im * im;
    return {re / n, -(im / n)};
}

double CBall::rad_double() const { return std::max(re.rad_double(), im.rad_double()); }

}  // namespace starklab
