#pragma once

#include <optional>
#include <vector>

#include "starklab/zideal.hpp"

namespace starklab {

/// Quotient G/H with the projection sigma -> index in the quotient.
struct QuotientGroup {
    GroupPtr group;
    std::vector<int> projection;
    /// One preimage per quotient element.
    std::vector<int> section;
};
QuotientGroup quotient_group(const GroupPtr& g, const std::vector<bool>& h_bits);

/// Z^k with a G-action on row vectors, x -> x * action[i] for the i-th
/// generator of G.
struct GLattice {
    GroupPtr group;
    int rank = 0;
    std::vector<IntMat> action;

    static GLattice free_module(GroupPtr g, int n);
    IntMat element_matrix(int sigma) const;
    bool is_valid() const;
};

/// A Z[G]-linear map from the cover R[G]^n, given by its values on the
/// cover basis.
using CoverFunctional = std::vector<BallGR>;

/// Free cover Z[G]^n -> M, fixed by the images of the cover basis.
struct FreeCover {
    GLattice lattice;
    std::vector<IntVec> images;

    int size() const { return static_cast<int>(images.size()); }
    static FreeCover identity(GroupPtr g, int n);
    /// The Z[G]-generators f_t(m) = sum_sigma m_t(sigma^{-1} m) sigma of
    /// Hom(M, Z[G]), pulled back to the cover.
    std::vector<CoverFunctional> dual_generators(mpfr_prec_t prec) const;
};

/// Element of the r-th exterior power of R[G]^n: coefficients on the basis
/// e_I, I an r-subset of {0..n-1} in lexicographic order.
class WedgeElement {
public:
    WedgeElement(GroupPtr g, int n, int degree, mpfr_prec_t prec);

    static std::vector<std::vector<int>> subsets(int n, int r);
    /// e_{i_1} ^ ... ^ e_{i_r} with sign from sorting the indices.
    static WedgeElement basis_wedge(GroupPtr g, int n, const std::vector<int>& idx, mpfr_prec_t prec);
    /// Wedge product of degree-1 elements given as coefficient vectors.
    static WedgeElement wedge_of(const std::vector<std::vector<BallGR>>& vectors);

    const GroupPtr& group_ptr() const { return g_; }
    int cover_size() const { return n_; }
    int degree() const { return r_; }
    mpfr_prec_t prec() const { return prec_; }
    const std::vector<std::vector<int>>& index_sets() const { return sets_; }
    BallGR& coeff(size_t k) { return c_[k]; }
    const BallGR& coeff(size_t k) const { return c_[k]; }
    size_t coeff_count() const { return c_.size(); }
    /// Position of a sorted index set.
    size_t position(const std::vector<int>& idx) const;

    WedgeElement& operator+=(const WedgeElement& b);
    WedgeElement& operator-=(const WedgeElement& b);
    WedgeElement scaled(const BallGR& x) const;
    bool is_zero_certified() const;
    /// Largest coefficient radius.
    double max_radius() const;

private:
    GroupPtr g_;
    int n_;
    int r_;
    mpfr_prec_t prec_;
    std::vector<std::vector<int>> sets_;
    std::vector<BallGR> c_;
};

BallGR ball_det(const std::vector<std::vector<BallGR>>& m);

/// sum_I c_I det(f_i(e_{I_j})).
BallGR det_pairing(const WedgeElement& a, const std::vector<CoverFunctional>& fs);

enum class Integrality { Integral, NonIntegral };
struct ImageResult {
    Integrality status = Integrality::Integral;
    std::optional<GIdeal> ideal;
};

/// The ideal generated by all pairings of `eps` with r-fold wedges of the
/// dual generators. UndecidedError when some pairing cannot be certified.
ImageResult image_lattice(const WedgeElement& eps, const FreeCover& cover);
bool bidual_member(const WedgeElement& a, const FreeCover& cover);

/// The map from the exterior power over Z[G/H] to the one over Z[G]: cover
/// slots e'_k -> N_H e_k, coefficients through Q[G/H] = e_H Q[G], scaled by
/// |H|^{max(0, 1-r)}. The result coefficient is lift(c) N_H^{max(r,1)}.
WedgeElement nu_map(const WedgeElement& a, const GroupPtr& g, const std::vector<bool>& h_bits);

/// Interior product by each functional in turn; the j-th slot carries (-1)^j.
WedgeElement wedge_psi(const WedgeElement& eps, const std::vector<CoverFunctional>& psis);

struct ResidualCheck {
    bool holds = false;
    double residual = 0;
};
/// eps_K - p^{-(m-1)} (sum_{H in Omega*} nu_H(eps_H) + ((p^{m-1}-1) - sum p^i) nu_G(eps_k)).
/// `eps_subfields` follows the order of enumerate_omega_star(p, m).members()
/// (G last). Holds when the residual contains 0 with radius below `tolerance`;
/// a residual excluding 0 fails; otherwise UndecidedError.
ResidualCheck prop42_check(const WedgeElement& eps_field, const std::vector<WedgeElement>& eps_subfields, int p, int m,
                           double tolerance = 1e-20);

}  // namespace starklab
