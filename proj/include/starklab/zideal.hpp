#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starklab/group_ring.hpp"
#include "starklab/intmat.hpp"

namespace starklab {

/// A G-stable sublattice of Z[G] = Z^{|G|}, kept in Hermite normal form so
/// that equal ideals have identical bases.
class GIdeal {
public:
    explicit GIdeal(GroupPtr g) : g_(std::move(g)) {}
    /// `basis` must already be the HNF of a G-stable lattice.
    GIdeal(GroupPtr g, IntMat basis) : g_(std::move(g)), basis_(std::move(basis)) {}

    static GIdeal zero(GroupPtr g) { return GIdeal(std::move(g)); }
    static GIdeal unit(GroupPtr g);
    static GIdeal from_generators(GroupPtr g, const std::vector<IntGR>& gens);
    static GIdeal principal(const IntGR& x) { return from_generators(x.group_ptr(), {x}); }

    const GroupPtr& group_ptr() const { return g_; }
    const IntMat& basis() const { return basis_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    bool is_zero() const { return basis_.empty(); }
    std::vector<IntGR> basis_elements() const;
    /// [Z[G] : I], or 0 when I has lower rank.
    mpz_class index() const { return hnf_index(basis_, g_->order()); }

    bool contains(const IntGR& x) const;
    bool contains(const GIdeal& other) const;
    bool is_g_stable() const;

    GIdeal operator+(const GIdeal& b) const;
    GIdeal operator*(const GIdeal& b) const;
    GIdeal sharp() const;
    GIdeal scaled(const mpz_class& k) const;
    GIdeal power(int c) const;

    friend bool operator==(const GIdeal& a, const GIdeal& b) { return *a.g_ == *b.g_ && a.basis_ == b.basis_; }

    std::string to_json_string() const;
    static GIdeal from_json_string(const std::string& s);

private:
    GroupPtr g_;
    IntMat basis_;
};

/// I_G^c; I_G^0 is the unit ideal.
GIdeal aug_ideal_power(GroupPtr g, int c);

/// Relations-by-generators matrix over Z[G].
struct Presentation {
    GroupPtr group;
    int n_generators = 0;
    std::vector<std::vector<IntGR>> relations;

    void add_relation(std::vector<IntGR> row);
    /// Block-diagonal presentation of the direct sum.
    Presentation direct_sum(const Presentation& other) const;
};

/// A finite Z[G]-module: Z/d_1 + ... + Z/d_t with the generators of G (the
/// unit vectors of its factor decomposition) acting on row vectors by
/// x -> x * action[i].
struct FiniteGModule {
    GroupPtr group;
    IntVec invariants;
    std::vector<IntMat> action;

    static FiniteGModule trivial_action(GroupPtr g, IntVec invariants);
    size_t dim() const { return invariants.size(); }
    /// Matrix of the group element with index `sigma`.
    IntMat element_matrix(int sigma) const;
    /// Checks commuting matrices of the right orders preserving the torsion.
    bool is_valid() const;
    FiniteGModule direct_sum(const FiniteGModule& other) const;
    Presentation presentation() const;
    size_t order() const;
};

/// Fitt^n: the ideal generated by the (g-n)-minors of the relations matrix.
/// g-n <= 0 gives the unit ideal; fewer than g-n relations gives zero.
GIdeal fitting_ideal(const Presentation& p, int n);

GIdeal annihilator(const FiniteGModule& m);

/// Fitt^0(cl) * I_G^{d-1} for G cyclic of prime order.
GIdeal fitting_from_extension(const FiniteGModule& cl, int d);

/// Determinant of a square matrix over Z[G].
IntGR group_ring_det(const std::vector<std::vector<IntGR>>& m);

/// Membership of an exact element.
bool membership(const IntGR& x, const GIdeal& a);
/// Membership of a ball element. A ball vector certified to contain no
/// integral vector is not a member; an uncertifiable one is UndecidedError.
bool membership(const BallGR& x, const GIdeal& a);
/// The integral vector of a ball element (radius < 1/4, within 1/4 of an
/// integer); nullopt when some coefficient certifiably contains no integer;
/// UndecidedError otherwise.
std::optional<IntGR> recognize_integral(const BallGR& x);

}  // namespace starklab
