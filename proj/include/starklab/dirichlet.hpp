#pragma once

#include <optional>
#include <vector>

#include "starklab/group_ring.hpp"

namespace starklab {

/// Kronecker symbol (D / n) for n >= 1.
int kronecker(long D, long n);
bool is_fundamental_discriminant(long D);
long gcd_long(long a, long b);

/// An abelian field K/Q given by a modulus f and the Artin map
/// (Z/f)^x -> G = Gal(K/Q). Characters of G are the Dirichlet characters
/// chi(a) = chi(artin[a]).
struct AbelianRealization {
    GroupPtr group;
    long modulus = 1;
    std::vector<int> artin;  // indexed by residue; -1 when not a unit

    /// G = (Z/f)^x / <kernel_generators>.
    static AbelianRealization from_kernel(long f, const std::vector<long>& kernel_generators);
    /// K = Q(sqrt D_1, ..., sqrt D_m) with G = (Z/2)^m, bit i of Frob_a
    /// set when (D_i / a) = -1.
    static AbelianRealization multiquadratic(const std::vector<long>& discs);
    static AbelianRealization rational() { return from_kernel(1, {}); }

    /// Frobenius of a prime (or integer) coprime to the modulus.
    int frobenius(long n) const;
    bool divides_modulus(long q) const { return modulus % q == 0; }
    long conductor(int chi) const;
    bool is_even(int chi) const;
    /// Exponent t with chi_prim(n) = zeta_e^t, or nullopt when n shares a
    /// factor with the conductor of chi.
    std::optional<int> primitive_exponent(int chi, long n) const;
    /// Element of G that fixes the subfield cut out by the subgroup; used to
    /// check that a place splits completely: Frobenius trivial.
    bool splits_completely(long q) const { return !divides_modulus(q) && frobenius(q) == 0; }
};

/// Dirichlet character of modulus f with values as exponents of zeta_e.
struct DirichletChar {
    long modulus = 1;
    int exponent = 1;
    std::vector<int> values;  // -1 where gcd(a, f) > 1
    long conductor = 1;
    bool even = true;
    bool primitive = true;
};
DirichletChar dirichlet_char(const AbelianRealization& r, int chi);

}  // namespace starklab
