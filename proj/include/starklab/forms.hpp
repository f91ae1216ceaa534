#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "starklab/abelian_group.hpp"
#include "starklab/quadfield.hpp"

namespace starklab {

/// Primitive binary quadratic form a x^2 + b xy + c y^2.
struct Form {
    long a = 1, b = 0, c = 0;
    long disc() const { return b * b - 4 * a * c; }
    bool operator<(const Form& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
};

bool is_reduced(const Form& f);
/// Reduction for D < 0; the rho walk into the reduced cycle for D > 0.
Form reduce_form(Form f);
/// Dirichlet composition followed by reduction.
Form compose(Form f, Form g);
Form principal_form(long D);
/// Every reduced primitive form of discriminant D.
std::vector<Form> reduced_forms(long D);
/// The form attached to a prime ideal above a split or ramified prime.
Form form_of_prime(const PrimeIdeal& P, long D);

/// Class group of Q(sqrt D). For D > 0 the form classes give the narrow
/// group; the wide group is its quotient by the class of the form
/// representing -1 when the fundamental unit has norm +1.
class ClassGroup {
public:
    explicit ClassGroup(long D);
    long disc() const { return D_; }
    int narrow_order() const { return static_cast<int>(reps_.size()); }
    int order() const { return structure_.group->order(); }
    const AbelianGroup& group() const { return *structure_.group; }
    /// Element of the wide group containing the class of f.
    int element_of(const Form& f) const;
    int element_of(const PrimeIdeal& P) const;
    /// Reduced representative of a wide class.
    const Form& representative(int element) const { return reps_[structure_.section[element]]; }

private:
    int narrow_index(const Form& f) const;
    long D_;
    std::vector<Form> reps_;
    std::map<Form, int> index_;
    EnumeratedStructure structure_;
};

}  // namespace starklab
