#include "starklab/abelian_group.hpp"

#include <numeric>
#include <sstream>

#include "starklab/errors.hpp"
#include "starklab/intmat.hpp"

namespace starklab {

AbelianGroup::AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    long order = 1;
    for (int d : factors_) {
        if (d < 2) throw InputError("invariant factor must be >= 2");
        order *= d;
        if (order > kMaxGroupOrder) throw CapacityError("group order exceeds desk bound");
        exponent_ = std::lcm(exponent_, d);
    }
    order_ = static_cast<int>(order);
    add_.resize(static_cast<size_t>(order_) * order_);
    neg_.resize(order_);
    std::vector<std::vector<int>> tuples(order_);
    for (int i = 0; i < order_; ++i) tuples[i] = element(i);
    std::vector<int> t(rank());
    for (int a = 0; a < order_; ++a) {
        for (int i = 0; i < rank(); ++i) t[i] = (factors_[i] - tuples[a][i]) % factors_[i];
        neg_[a] = index(t);
        for (int b = 0; b < order_; ++b) {
            for (int i = 0; i < rank(); ++i) t[i] = (tuples[a][i] + tuples[b][i]) % factors_[i];
            add_[static_cast<size_t>(a) * order_ + b] = index(t);
        }
    }
}

std::vector<int> AbelianGroup::element(int idx) const {
    std::vector<int> t(rank());
    for (int i = rank() - 1; i >= 0; --i) {
        t[i] = idx % factors_[i];
        idx /= factors_[i];
    }
    return t;
}

int AbelianGroup::index(const std::vector<int>& tuple) const {
    int idx = 0;
    for (int i = 0; i < rank(); ++i) idx = idx * factors_[i] + tuple[i];
    return idx;
}

int AbelianGroup::checked_index(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != rank()) throw InputError("tuple length does not match group rank");
    for (int i = 0; i < rank(); ++i)
        if (tuple[i] < 0 || tuple[i] >= factors_[i]) throw InputError("tuple entry out of range");
    return index(tuple);
}

int AbelianGroup::scale(int a, long k) const {
    auto t = element(a);
    for (int i = 0; i < rank(); ++i) {
        long v = (static_cast<long>(t[i]) * (k % factors_[i])) % factors_[i];
        t[i] = static_cast<int>((v + factors_[i]) % factors_[i]);
    }
    return index(t);
}

int AbelianGroup::element_order(int a) const {
    auto t = element(a);
    int ord = 1;
    for (int i = 0; i < rank(); ++i) ord = std::lcm(ord, factors_[i] / std::gcd(factors_[i], t[i]));
    return ord;
}

int AbelianGroup::char_exponent(int chi, int a) const {
    auto b = element(chi);
    auto x = element(a);
    long s = 0;
    for (int i = 0; i < rank(); ++i) s += static_cast<long>(x[i]) * b[i] * (exponent_ / factors_[i]);
    return static_cast<int>(s % exponent_);
}

std::vector<bool> AbelianGroup::subgroup(const std::vector<int>& gens) const {
    std::vector<bool> in(order_, false);
    std::vector<int> members{0};
    in[0] = true;
    for (int g : gens)
        if (g < 0 || g >= order_) throw InputError("subgroup generator out of range");
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t k = 0; k < members.size(); ++k) {
            for (int g : gens) {
                int x = add(members[k], g);
                if (!in[x]) {
                    in[x] = true;
                    members.push_back(x);
                    changed = true;
                }
            }
        }
    }
    return in;
}

int AbelianGroup::subgroup_order(const std::vector<bool>& bits) {
    int n = 0;
    for (bool b : bits) n += b ? 1 : 0;
    return n;
}

bool AbelianGroup::is_elementary(int p) const {
    for (int d : factors_)
        if (d != p) return false;
    return true;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rank(); ++i) os << (i ? "," : "") << factors_[i];
    os << "]";
    return os.str();
}

EnumeratedStructure structure_of(int n, int identity, const std::function<int(int, int)>& mul,
                                 const std::vector<int>& kernel) {
    if (n > kMaxGroupOrder * 64) throw CapacityError("enumerated group too large");
    // Greedy generators: each new generator g has a relation k e_g = (word in
    // earlier generators) where k is the order of g modulo the span so far.
    std::vector<std::vector<long>> exps(n);
    std::vector<bool> known(n, false);
    std::vector<int> members{identity};
    known[identity] = true;
    exps[identity] = {};
    std::vector<IntVec> relations;
    int gens = 0;
    for (int cand = 0; cand < n && static_cast<int>(members.size()) < n; ++cand) {
        if (known[cand]) continue;
        int x = cand;
        long k = 1;
        while (!known[x]) {
            x = mul(x, cand);
            ++k;
        }
        IntVec rel(gens + 1, 0);
        for (int i = 0; i < gens; ++i) rel[i] = -exps[x][i];
        rel[gens] = k;
        for (auto& r : relations) r.push_back(0);
        relations.push_back(rel);
        ++gens;
        for (int m : members) exps[m].push_back(0);
        const size_t old = members.size();
        int power = identity;
        for (long j = 1; j < k; ++j) {
            power = mul(power, cand);
            for (size_t t = 0; t < old; ++t) {
                int id = mul(members[t], power);
                if (known[id]) throw ConsistencyError("enumerated multiplication is not a group law");
                known[id] = true;
                exps[id] = exps[members[t]];
                exps[id].back() = j;
                members.push_back(id);
            }
        }
    }
    if (static_cast<int>(members.size()) != n) throw ConsistencyError("enumeration did not close");
    IntMat rel = relations;
    for (int id : kernel) {
        IntVec row(gens, 0);
        for (int i = 0; i < gens; ++i) row[i] = exps[id][i];
        rel.push_back(row);
    }
    EnumeratedStructure out;
    std::vector<int> factors;
    std::vector<int> kept;
    SmithForm s;
    if (gens > 0) {
        s = smith(rel, gens);
        for (int i = 0; i < gens; ++i)
            if (s.diagonal[i] > 1) {
                factors.push_back(static_cast<int>(s.diagonal[i].get_si()));
                kept.push_back(i);
            }
    }
    out.group = std::make_shared<const AbelianGroup>(factors);
    out.log.resize(n);
    out.section.assign(out.group->order(), -1);
    for (int id = 0; id < n; ++id) {
        std::vector<int> coords;
        if (gens > 0) {
            IntVec v(exps[id].begin(), exps[id].end());
            IntVec img = vec_mat_mul(v, s.col_transform);
            for (int i : kept) {
                mpz_class r;
                mpz_fdiv_r(r.get_mpz_t(), img[i].get_mpz_t(), s.diagonal[i].get_mpz_t());
                coords.push_back(static_cast<int>(r.get_si()));
            }
        }
        out.log[id] = out.group->index(coords);
        if (out.section[out.log[id]] < 0) out.section[out.log[id]] = id;
    }
    return out;
}

}  // namespace starklab
