#pragma once

#include <vector>

#include "starklab/group_ring.hpp"

namespace starklab {

bool is_prime(long n);

/// The subgroups of index at most p in (Z/p)^m: every hyperplane, keyed by its
/// normal vector scaled so the first nonzero entry is 1, plus G itself.
struct HyperplaneSet {
    int p = 0;
    int m = 0;
    GroupPtr group;
    std::vector<std::vector<int>> normals;

    size_t proper_count() const { return normals.size(); }
    /// Proper hyperplanes plus G.
    size_t total_count() const { return normals.size() + 1; }
    std::vector<bool> plane_bits(size_t i) const;
    /// Element bitsets of every member of Omega*, G last.
    std::vector<std::vector<bool>> members() const;
};

HyperplaneSet enumerate_omega_star(int p, int m);

/// Proper hyperplanes not containing the nonzero element v (a tuple).
long count_avoiding(int p, int m, const std::vector<int>& v);
long count_containing(int p, int m, const std::vector<int>& v);

/// sum_{H in Omega*} N_H + ((p^{m-1}-1) - sum_{i<m} p^i) N_G, which must be the
/// constant p^{m-1}; throws ConsistencyError otherwise.
IntGR lemma41_element(int p, int m);

long int_pow(long b, int e);

}  // namespace starklab
