#include "starklab/sublat.hpp"

namespace starklab {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long int_pow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

namespace {

void check_params(int p, int m) {
    if (!is_prime(p)) throw InputError("p must be prime");
    if (m < 1) throw InputError("m must be positive");
    double size = 1;
    for (int i = 0; i < m; ++i) size *= p;
    if (size > 729) throw CapacityError("p^m exceeds 3^6");
}

bool on_plane(const std::vector<int>& normal, const std::vector<int>& x, int p) {
    long s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += static_cast<long>(normal[i]) * x[i];
    return s % p == 0;
}

}  // namespace

std::vector<bool> HyperplaneSet::plane_bits(size_t i) const {
    std::vector<bool> bits(group->order());
    for (int a = 0; a < group->order(); ++a) bits[a] = on_plane(normals[i], group->element(a), p);
    return bits;
}

std::vector<std::vector<bool>> HyperplaneSet::members() const {
    std::vector<std::vector<bool>> out;
    for (size_t i = 0; i < normals.size(); ++i) out.push_back(plane_bits(i));
    out.emplace_back(group->order(), true);
    return out;
}

HyperplaneSet enumerate_omega_star(int p, int m) {
    check_params(p, m);
    HyperplaneSet hs;
    hs.p = p;
    hs.m = m;
    hs.group = make_group(std::vector<int>(m, p));
    // Element tuples double as normal vectors; keep those whose first nonzero
    // entry is 1.
    for (int a = 1; a < hs.group->order(); ++a) {
        auto v = hs.group->element(a);
        size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] == 1) hs.normals.push_back(v);
    }
    return hs;
}

long count_avoiding(int p, int m, const std::vector<int>& v) {
    auto hs = enumerate_omega_star(p, m);
    hs.group->checked_index(v);
    bool nonzero = false;
    for (int x : v) nonzero = nonzero || x != 0;
    if (!nonzero) throw InputError("v must be nonzero");
    long n = 0;
    for (const auto& normal : hs.normals) n += on_plane(normal, v, p) ? 0 : 1;
    return n;
}

long count_containing(int p, int m, const std::vector<int>& v) {
    auto hs = enumerate_omega_star(p, m);
    return static_cast<long>(hs.proper_count()) - count_avoiding(p, m, v);
}

IntGR lemma41_element(int p, int m) {
    auto hs = enumerate_omega_star(p, m);
    IntGR acc = int_zero(hs.group);
    for (const auto& bits : hs.members()) acc += norm_element_of(hs.group, bits);
    long geometric = 0;
    for (int i = 0; i < m; ++i) geometric += int_pow(p, i);
    const long coeff = (int_pow(p, m - 1) - 1) - geometric;
    IntGR ng = norm_element_of(hs.group, std::vector<bool>(hs.group->order(), true));
    for (int i = 0; i < hs.group->order(); ++i) acc[i] += coeff * ng[i];
    IntGR expected = int_zero(hs.group);
    expected[0] = int_pow(p, m - 1);
    if (!(acc == expected)) throw ConsistencyError("norm-element identity failed");
    return acc;
}

}  // namespace starklab
