#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "starklab/abelian_group.hpp"
#include "starklab/ball.hpp"
#include "starklab/cyclotomic.hpp"
#include "starklab/errors.hpp"

namespace starklab {

using GroupPtr = std::shared_ptr<const AbelianGroup>;

inline GroupPtr make_group(std::vector<int> factors) {
    return std::make_shared<const AbelianGroup>(std::move(factors));
}

inline mpz_class one_like(const mpz_class&) { return 1; }
inline mpq_class one_like(const mpq_class&) { return 1; }
inline CycloNumber one_like(const CycloNumber& z) { return CycloNumber(z.order(), mpq_class(1)); }
inline Ball one_like(const Ball& z) { return Ball(1L, z.prec()); }
inline CBall one_like(const CBall& z) { return CBall(Ball(1L, z.prec()), Ball(0L, z.prec())); }

/// Element of R[G]: dense coefficients in the group's element order. `zero`
/// fixes the coefficient ring (cyclotomic order, ball precision).
template <class C>
class GroupRingElement {
public:
    GroupRingElement(GroupPtr g, C zero) : g_(std::move(g)), zero_(zero), c_(g_->order(), zero) {}

    static GroupRingElement basis(GroupPtr g, int sigma, const C& zero) {
        GroupRingElement x(std::move(g), zero);
        x.c_[sigma] = one_like(zero);
        return x;
    }
    static GroupRingElement one(GroupPtr g, const C& zero) { return basis(std::move(g), 0, zero); }

    const GroupPtr& group_ptr() const { return g_; }
    const AbelianGroup& group() const { return *g_; }
    const C& zero() const { return zero_; }
    int size() const { return static_cast<int>(c_.size()); }
    C& operator[](int i) { return c_[i]; }
    const C& operator[](int i) const { return c_[i]; }
    const std::vector<C>& coeffs() const { return c_; }

    GroupRingElement operator-() const {
        GroupRingElement r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    GroupRingElement& operator+=(const GroupRingElement& b) {
        check(b);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& b) {
        check(b);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
        return *this;
    }
    GroupRingElement& operator*=(const GroupRingElement& b) {
        check(b);
        std::vector<C> out(c_.size(), zero_);
        const int n = size();
        for (int i = 0; i < n; ++i) {
            if (is_structural_zero(c_[i])) continue;
            for (int j = 0; j < n; ++j) {
                if (is_structural_zero(b.c_[j])) continue;
                out[g_->add(i, j)] += c_[i] * b.c_[j];
            }
        }
        c_ = std::move(out);
        return *this;
    }
    GroupRingElement& scale(const C& s) {
        for (auto& x : c_) x = x * s;
        return *this;
    }
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(GroupRingElement a, const GroupRingElement& b) { return a *= b; }

    /// Multiplication by the group element sigma (a coefficient shift).
    GroupRingElement shifted(int sigma) const {
        GroupRingElement r(g_, zero_);
        for (int i = 0; i < size(); ++i) r.c_[g_->add(i, sigma)] = c_[i];
        return r;
    }
    /// The # involution sigma -> sigma^{-1}.
    GroupRingElement sharp() const {
        GroupRingElement r(g_, zero_);
        for (int i = 0; i < size(); ++i) r.c_[g_->neg(i)] = c_[i];
        return r;
    }
    C augmentation() const {
        C s = zero_;
        for (const auto& x : c_) s += x;
        return s;
    }

private:
    void check(const GroupRingElement& b) const {
        if (g_ != b.g_ && *g_ != *b.g_) throw InputError("group ring elements over different groups");
    }
    static bool is_structural_zero(const mpz_class& x) { return x == 0; }
    static bool is_structural_zero(const mpq_class& x) { return x == 0; }
    static bool is_structural_zero(const CycloNumber& x) { return x.is_zero(); }
    static bool is_structural_zero(const Ball&) { return false; }
    static bool is_structural_zero(const CBall&) { return false; }

    GroupPtr g_;
    C zero_;
    std::vector<C> c_;
};

template <class C>
bool operator==(const GroupRingElement<C>& a, const GroupRingElement<C>& b) {
    return a.group() == b.group() && a.coeffs() == b.coeffs();
}

using IntGR = GroupRingElement<mpz_class>;
using RatGR = GroupRingElement<mpq_class>;
using CycGR = GroupRingElement<CycloNumber>;
using BallGR = GroupRingElement<Ball>;
using CBallGR = GroupRingElement<CBall>;

IntGR int_zero(GroupPtr g);
IntGR int_basis(GroupPtr g, int sigma);
RatGR to_rat(const IntGR& x);
CycGR to_cyc(const RatGR& x, int e);
CycGR to_cyc(const IntGR& x, int e);
BallGR to_ball(const RatGR& x, mpfr_prec_t prec);
BallGR to_ball(const IntGR& x, mpfr_prec_t prec);
CBallGR to_cball(const CycGR& x, mpfr_prec_t prec);
CBallGR to_cball(const BallGR& x);
/// Real parts of the coefficients; throws UndecidedError when an imaginary
/// part does not contain zero.
BallGR real_part(const CBallGR& x);

/// Sum of the elements of the subgroup generated by `gens`.
IntGR norm_element(GroupPtr g, const std::vector<int>& gens);
IntGR norm_element_of(GroupPtr g, const std::vector<bool>& subgroup_bits);

/// e_chi = |G|^{-1} sum chi(sigma)^{-1} sigma over Q(zeta_e), e = exponent.
CycGR idempotent(GroupPtr g, int chi);

/// chi(x) = sum_sigma x_sigma chi(sigma).
CycloNumber character_value(const CycGR& x, int chi);
CycloNumber character_value(const IntGR& x, int chi);
CBall character_value(const BallGR& x, int chi);
CBall character_value(const CBallGR& x, int chi);

/// sum_chi a_chi e_chi with complex-ball components indexed by character.
CBallGR from_components(GroupPtr g, const std::vector<CBall>& components);

/// The Aff(q) central-character map. `psi_values` lists the q-1 linear
/// characters of Aff(q)/G (trivial first) followed by the degree q-1
/// character. G is the order-q normal subgroup, i.e. (Z/p)^k for q = p^k.
CBallGR rho_aff(int q, const std::vector<CBall>& psi_values);

std::string to_json_string(const IntGR& x);
std::string to_json_string(const RatGR& x);
std::string to_json_string(const CycGR& x);
std::string to_json_string(const BallGR& x);
IntGR int_from_json_string(const std::string& s);
RatGR rat_from_json_string(const std::string& s);
BallGR ball_from_json_string(const std::string& s);

}  // namespace starklab
