#pragma once

#include <vector>

#include "starklab/forms.hpp"
#include "starklab/lfun.hpp"
#include "starklab/multilin.hpp"
#include "starklab/quadfield.hpp"
#include "starklab/zideal.hpp"

namespace starklab {

// Fields handled here are Q (D = 1) and Q(sqrt D) for fundamental D.
// Absolute values are normalized so that the product formula holds: real
// places |x|, complex places |x|^2, finite places N(P)^{-ord_P(x)}.

/// Galois group of Q(sqrt D) over Q (trivial for D = 1).
GroupPtr galois_group(long D);

/// Class group with sigma acting by inversion.
FiniteGModule class_group_module(long D);

struct PlaceData {
    enum class Kind { Real, Complex, Finite } kind = Kind::Real;
    long p = 0;        // 0 for archimedean places
    long norm = 0;     // N(P) for finite places
    int sign = 1;      // real places: the image of sqrt D is sign * |sqrt D|
    PrimeIdeal prime;  // finite places of a quadratic field
};

/// The places of S_K: archimedean ones first (for a real field the
/// embedding with sqrt D > 0 first), then the primes above each finite
/// q in S in the given order. `sigma[i]` is the index of the conjugate place.
struct FieldPlaces {
    long D = 1;
    std::vector<PlaceData> places;
    std::vector<int> sigma;
    size_t size() const { return places.size(); }
    /// First place above the finite prime q.
    int first_above(long q) const;
};
FieldPlaces field_places(long D, const std::vector<long>& finite_S);

/// -log|x|_w at every place.
std::vector<Ball> log_vector(const QuadNumber& x, const FieldPlaces& pl, mpfr_prec_t prec);

/// O_{K,S,T}^x as a G-lattice. Elements are exponent rows over `base`
/// (a root of unity first, then the fundamental unit for D > 0, then the
/// S-unit generators).
struct SUnitLattice {
    long D = 1;
    FieldPlaces places;
    std::vector<QuadNumber> base;
    int torsion_order = 2;
    IntMat basis;
    GLattice lattice;
    mpfr_prec_t prec = 256;

    int rank() const { return static_cast<int>(basis.size()); }
    QuadNumber element(int i) const;
};

/// DatumError when T leaves torsion in the unit group or S, T overlap;
/// CapacityError when the generator search exhausts its box.
SUnitLattice s_unit_lattice(long D, const PlaceSets& st, mpfr_prec_t prec = 256);

/// Rows -log|u|_w over the places of S_K, for each basis element u.
std::vector<std::vector<Ball>> regulator_map(const SUnitLattice& u, mpfr_prec_t prec);

struct RayClassData {
    long D = 1;
    PlaceSets st;
    FiniteGModule cl;
    long class_number = 1;
    long residue_order = 1;            // |(O/T)^x|
    long global_unit_image_order = 1;  // |image of O^x in (O/T)^x|
    int p_rank(long p) const;
    size_t order() const { return cl.order(); }
};

RayClassData ray_class(long D, const PlaceSets& st);

/// h * log(eps) for D > 0.
Ball acnf_real_prediction(long D, mpfr_prec_t prec);
/// 2h / w for D < 0.
mpq_class acnf_imaginary_prediction(long D);

/// Units of the quadratic subfields of a totally real multiquadratic field
/// and their logarithms at its real places. The real place indexed by the
/// group element g sends sqrt D_i to -|sqrt D_i| exactly when component i
/// of g is 1.
struct MultiquadUnits {
    std::vector<long> discs;
    std::vector<long> subfield_discs;  // one per nonzero bit pattern
    std::vector<QuadNumber> units;
    std::vector<std::vector<Ball>> logs;  // logs[u][place] = log|u|_place
};
MultiquadUnits multiquad_units(const std::vector<long>& discs, mpfr_prec_t prec);

/// x with x * m = v for a square ball matrix m; PrecisionError when a pivot
/// cannot be certified nonzero.
std::vector<Ball> ball_solve_left(const std::vector<std::vector<Ball>>& m, const std::vector<Ball>& v);

/// Fundamental discriminant of the squarefree part of n.
long fundamental_part(long n);

}  // namespace starklab
