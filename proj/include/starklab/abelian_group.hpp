#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace starklab {

constexpr int kMaxGroupOrder = 1024;

/// Finite abelian group Z/d_1 x ... x Z/d_m. Elements are indexed by their
/// position in lexicographic order of the tuples (a_1, ..., a_m).
class AbelianGroup {
public:
    AbelianGroup() : AbelianGroup(std::vector<int>{}) {}
    /// Factors need not divide each other; each must be >= 2.
    explicit AbelianGroup(std::vector<int> factors);

    static AbelianGroup elementary(int p, int m) { return AbelianGroup(std::vector<int>(m, p)); }

    const std::vector<int>& factors() const { return factors_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    int order() const { return order_; }
    int exponent() const { return exponent_; }

    std::vector<int> element(int idx) const;
    int index(const std::vector<int>& tuple) const;
    /// Validates and reduces nothing: a tuple out of range throws InputError.
    int checked_index(const std::vector<int>& tuple) const;

    int add(int a, int b) const { return add_[static_cast<size_t>(a) * order_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int scale(int a, long k) const;
    int element_order(int a) const;

    /// Characters are indexed like elements: character b sends a to
    /// zeta_e^{sum a_i b_i e/d_i}. Returns that exponent mod e.
    int char_exponent(int chi, int a) const;
    int char_order(int chi) const { return element_order(chi); }
    int char_mul(int chi, int psi) const { return add(chi, psi); }
    int char_inv(int chi) const { return neg(chi); }

    /// Element bitset of the subgroup generated by the given elements.
    std::vector<bool> subgroup(const std::vector<int>& gens) const;
    static int subgroup_order(const std::vector<bool>& bits);

    bool is_elementary(int p) const;
    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    std::vector<int> factors_;
    int order_ = 1;
    int exponent_ = 1;
    std::vector<int> add_;
    std::vector<int> neg_;
};

/// Structure of a finite abelian group given by an enumerated set of ids
/// 0..n-1 and a multiplication, optionally modulo the subgroup generated by
/// `kernel` ids. `log[id]` is the image of id in `group`, `section[g]` one
/// preimage of each element.
struct EnumeratedStructure {
    std::shared_ptr<const AbelianGroup> group;
    std::vector<int> log;
    std::vector<int> section;
};
EnumeratedStructure structure_of(int n, int identity, const std::function<int(int, int)>& mul,
                                 const std::vector<int>& kernel = {});

}  // namespace starklab
