#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "starklab/ball.hpp"
#include "starklab/intmat.hpp"

namespace starklab {

/// a + b sqrt(D) in Q(sqrt D). D = 1 is allowed and stands for Q itself
/// (b is then always 0).
struct QuadNumber {
    long D = 1;
    mpq_class a = 0;
    mpq_class b = 0;

    QuadNumber() = default;
    QuadNumber(long d, mpq_class x, mpq_class y = 0);
    /// x + y omega with omega = (D + sqrt D) / 2.
    static QuadNumber from_coords(long d, const mpz_class& x, const mpz_class& y);

    QuadNumber operator-() const { return {D, -a, -b}; }
    QuadNumber operator+(const QuadNumber& o) const;
    QuadNumber operator-(const QuadNumber& o) const;
    QuadNumber operator*(const QuadNumber& o) const;
    QuadNumber inverse() const;
    QuadNumber pow(long k) const;
    QuadNumber conj() const { return {D, a, -b}; }
    bool operator==(const QuadNumber& o) const { return D == o.D && a == o.a && b == o.b; }
    bool is_zero() const { return a == 0 && b == 0; }

    mpq_class norm() const;
    mpq_class trace() const { return 2 * a; }
    bool is_integral() const;
    /// Coordinates in the basis (1, omega); requires an integral element.
    std::pair<mpz_class, mpz_class> coords() const;
    /// Smallest positive integer n with n * x integral.
    mpz_class denominator() const;

    /// Real embedding with sqrt D -> sign * |sqrt D| (D > 0 or D = 1).
    Ball real_embedding(int sign, mpfr_prec_t prec) const;
    std::string to_string() const;
};

/// Z-lattice ideal of the maximal order, rows in the basis (1, omega), HNF.
struct QuadIdeal {
    long D = 1;
    IntMat basis;

    static QuadIdeal from_generators(long d, const std::vector<QuadNumber>& gens);
    static QuadIdeal unit(long d) { return from_generators(d, {QuadNumber(d, 1)}); }
    mpz_class norm() const;
    bool contains(const QuadNumber& x) const;
    QuadIdeal operator*(const QuadIdeal& o) const;
    QuadIdeal conj() const;
    QuadIdeal power(int k) const;
    bool operator==(const QuadIdeal& o) const { return D == o.D && basis == o.basis; }
};

enum class Splitting { Split, Inert, Ramified };

struct PrimeIdeal {
    long p = 0;
    Splitting type = Splitting::Inert;
    long root = -1;  // omega = root mod the prime; -1 when inert
    long norm = 0;
    int ram_index = 1;
    QuadIdeal ideal;
};

/// The primes of Q(sqrt D) above p; for a split prime the first has the
/// smaller root and the second is its conjugate.
std::vector<PrimeIdeal> primes_above(long D, long p);
Splitting splitting_type(long D, long p);

/// ord_P(x) for x != 0.
int valuation(const QuadNumber& x, const PrimeIdeal& P);

/// (O / P)^x with a fixed generator and a discrete-log table.
class ResidueField {
public:
    ResidueField(long D, const PrimeIdeal& P);
    const PrimeIdeal& prime() const { return P_; }
    long order() const { return order_; }  // N(P) - 1
    /// Discrete log of x mod P; x must be a P-unit.
    long log(const QuadNumber& x) const;
    /// k with log_{conj P}(sigma x) = k * log_P(x). Split primes use the same
    /// generator of F_p on both sides, so k = 1; inert primes give k = p.
    long conjugation_multiplier() const;

private:
    long encode(const QuadNumber& x) const;
    long D_;
    PrimeIdeal P_;
    long order_;
    std::vector<long> table_;
};

struct FundamentalUnit {
    QuadNumber unit;
    int norm = 1;
    Ball log(mpfr_prec_t prec) const;
};

/// Fundamental unit > 1 of Q(sqrt D), D > 0, from the continued fraction of
/// omega. CapacityError past `max_steps` partial quotients.
FundamentalUnit fundamental_unit(long D, long max_steps = 100000);

/// Number of roots of unity.
int roots_of_unity_count(long D);
/// A generator of the roots of unity.
QuadNumber torsion_generator(long D);

}  // namespace starklab
