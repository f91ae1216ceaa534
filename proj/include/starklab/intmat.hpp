#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace starklab {

using IntVec = std::vector<mpz_class>;
using IntMat = std::vector<IntVec>;  // row-major; rows are vectors
using RatVec = std::vector<mpq_class>;
using RatMat = std::vector<RatVec>;

IntMat zero_matrix(size_t rows, size_t cols);
IntMat identity_matrix(size_t n);
IntMat transpose(const IntMat& a);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec vec_mat_mul(const IntVec& v, const IntMat& a);

/// Row-style Hermite normal form of the lattice spanned by the rows of `rows`
/// (each of length `cols`). Zero rows are dropped; pivots are positive and the
/// entries above each pivot are reduced into [0, pivot).
IntMat hnf(IntMat rows, size_t cols);

/// Whether v lies in the lattice whose HNF basis is `basis`.
bool hnf_contains(const IntMat& basis, const IntVec& v);
/// Coordinates of v in the HNF basis, if v lies in the lattice.
std::optional<IntVec> hnf_coordinates(const IntMat& basis, const IntVec& v);

/// Absolute index [Z^n : L] of a full-rank lattice in HNF (0 when not full rank).
mpz_class hnf_index(const IntMat& basis, size_t n);

struct SmithForm {
    IntVec diagonal;   // d_1 | d_2 | ... (length min(rows, cols), zeros at the end)
    IntMat col_transform;      // V with U A V = D
    IntMat col_transform_inv;  // V^{-1}
};
SmithForm smith(const IntMat& a, size_t cols);

/// Lattice of x in Z^k with x * A = 0 in Z^n / diag(moduli), where a modulus
/// of 0 means no reduction in that column. A is k x n. Returned in HNF.
IntMat kernel_mod(const IntMat& a, const IntVec& moduli);

/// Rational helpers.
RatMat to_rat(const IntMat& a);
std::optional<RatMat> rat_inverse(RatMat a);
mpq_class rat_det(RatMat a);
/// Solution y of y * A = v for square invertible A.
std::optional<RatVec> rat_solve_left(const RatMat& a, const RatVec& v);
mpz_class int_det(const IntMat& a);

}  // namespace starklab
