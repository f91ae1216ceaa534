#pragma once

#include <memory>
#include <vector>

#include "starklab/dirichlet.hpp"
#include "starklab/jet.hpp"

namespace starklab {

constexpr int kMaxJetOrder = 4;

/// Partial zeta jets Z_sigma(s) = sum over k >= 1 coprime to f with
/// Frob_k = sigma of k^{-s}, for every sigma in G.
class PartialZeta {
public:
    PartialZeta(const AbelianRealization& r, int K, mpfr_prec_t prec);
    const AbelianRealization& realization() const { return r_; }
    int truncation() const { return K_; }
    mpfr_prec_t prec() const { return prec_; }
    const Jet& of(int sigma) const { return jets_[sigma]; }
    const EulerMaclaurinParams& params() const { return params_; }

private:
    AbelianRealization r_;
    int K_;
    mpfr_prec_t prec_;
    EulerMaclaurinParams params_;
    std::vector<Jet> jets_;
};

/// Finite primes of S (infinity is implicit) and T.
struct PlaceSets {
    std::vector<long> S;
    std::vector<long> T;
};

/// Checks S and T are sets of primes, disjoint, and S contains every prime
/// dividing the modulus. Throws DatumError.
void validate_places(const AbelianRealization& r, const PlaceSets& st);

/// Exact order of vanishing of L_{S,T}(chi, s) at s = 0.
int exact_order(const AbelianRealization& r, int chi, const PlaceSets& st);

struct LJet {
    Jet jet;
    int order = 0;
    EulerMaclaurinParams params;
};

/// Jet of L_{Q,S,T}(chi, s) at 0 from the partial zeta jets.
LJet l_jet(const PartialZeta& z, int chi, const PlaceSets& st);
/// Convenience: builds the partial zeta jets at truncation K, raising K up to
/// kMaxJetOrder when the order exceeds it (UnresolvedOrderError beyond).
LJet l_jet(const AbelianRealization& r, int chi, const PlaceSets& st, int K, mpfr_prec_t prec);

/// Leading coefficient at the jet's order; PrecisionError when it is not
/// certified nonzero.
CBall leading_coefficient(const LJet& l);

/// L_{S,T}(chi, 0) exactly; WrongOrderError when the order is positive.
CycloNumber bernoulli_value(const AbelianRealization& r, int chi, const PlaceSets& st);

/// sum_chi c_r(chi^{-1}) e_chi with c_r the coefficient of s^r.
BallGR stickelberger(const AbelianRealization& r, const PlaceSets& st, int r_order, mpfr_prec_t prec);
/// The r = 0 element with exact rational coefficients.
RatGR stickelberger_exact(const AbelianRealization& r, const PlaceSets& st);
/// sum_chi L*_{S,T}(chi^{-1}, 0) e_chi with each character at its own order.
BallGR leading_term_element(const AbelianRealization& r, const PlaceSets& st, mpfr_prec_t prec);

/// Components of an element in the character basis: x = sum_chi comps[chi] e_chi.
std::vector<CBall> character_components(const BallGR& x);

}  // namespace starklab
