#include "starklab/zideal.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace starklab {

namespace {

IntVec as_vec(const IntGR& x) { return x.coeffs(); }

IntGR as_element(const GroupPtr& g, const IntVec& v) {
    IntGR x = int_zero(g);
    for (int i = 0; i < g->order(); ++i) x[i] = v[i];
    return x;
}

}  // namespace

GIdeal GIdeal::unit(GroupPtr g) {
    const size_t n = g->order();
    return GIdeal(std::move(g), identity_matrix(n));
}

GIdeal GIdeal::from_generators(GroupPtr g, const std::vector<IntGR>& gens) {
    IntMat rows;
    for (const auto& x : gens)
        for (int s = 0; s < g->order(); ++s) rows.push_back(as_vec(x.shifted(s)));
    const size_t n = g->order();
    return GIdeal(std::move(g), hnf(std::move(rows), n));
}

std::vector<IntGR> GIdeal::basis_elements() const {
    std::vector<IntGR> out;
    for (const auto& row : basis_) out.push_back(as_element(g_, row));
    return out;
}

bool GIdeal::contains(const IntGR& x) const { return hnf_contains(basis_, as_vec(x)); }

bool GIdeal::contains(const GIdeal& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const IntVec& row) { return hnf_contains(basis_, row); });
}

bool GIdeal::is_g_stable() const {
    for (const auto& x : basis_elements())
        for (int s = 0; s < g_->order(); ++s)
            if (!contains(x.shifted(s))) return false;
    return true;
}

GIdeal GIdeal::operator+(const GIdeal& b) const {
    IntMat rows = basis_;
    rows.insert(rows.end(), b.basis_.begin(), b.basis_.end());
    return GIdeal(g_, hnf(std::move(rows), g_->order()));
}

GIdeal GIdeal::operator*(const GIdeal& b) const {
    auto xs = basis_elements();
    auto ys = b.basis_elements();
    IntMat rows;
    for (const auto& x : xs)
        for (const auto& y : ys) rows.push_back(as_vec(x * y));
    return GIdeal(g_, hnf(std::move(rows), g_->order()));
}

GIdeal GIdeal::sharp() const {
    IntMat rows;
    for (const auto& x : basis_elements()) rows.push_back(as_vec(x.sharp()));
    return GIdeal(g_, hnf(std::move(rows), g_->order()));
}

GIdeal GIdeal::scaled(const mpz_class& k) const {
    IntMat rows = basis_;
    for (auto& row : rows)
        for (auto& x : row) x *= k;
    return GIdeal(g_, hnf(std::move(rows), g_->order()));
}

GIdeal GIdeal::power(int c) const {
    GIdeal acc = unit(g_);
    for (int i = 0; i < c; ++i) acc = acc * *this;
    return acc;
}

std::string GIdeal::to_json_string() const {
    nlohmann::json j;
    j["group"] = g_->factors();
    j["hnf"] = nlohmann::json::array();
    for (const auto& row : basis_) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& x : row) r.push_back(x.get_str());
        j["hnf"].push_back(r);
    }
    return j.dump();
}

GIdeal GIdeal::from_json_string(const std::string& s) {
    auto j = nlohmann::json::parse(s);
    auto g = make_group(j.at("group").get<std::vector<int>>());
    IntMat rows;
    for (const auto& r : j.at("hnf")) {
        IntVec row;
        for (const auto& x : r) row.emplace_back(x.get<std::string>());
        if (static_cast<int>(row.size()) != g->order()) throw InputError("lattice row length must equal |G|");
        rows.push_back(std::move(row));
    }
    GIdeal out(g, hnf(rows, g->order()));
    if (!out.is_g_stable()) throw InputError("lattice is not G-stable");
    return out;
}

GIdeal aug_ideal_power(GroupPtr g, int c) {
    if (c < 0) throw InputError("augmentation power must be non-negative");
    std::vector<IntGR> gens;
    for (int s = 1; s < g->order(); ++s) gens.push_back(int_basis(g, s) - IntGR::one(g, 0));
    GIdeal aug = GIdeal::from_generators(g, gens);
    return aug.power(c);
}

void Presentation::add_relation(std::vector<IntGR> row) {
    if (static_cast<int>(row.size()) != n_generators) throw InputError("relation length must equal generator count");
    relations.push_back(std::move(row));
}

Presentation Presentation::direct_sum(const Presentation& other) const {
    Presentation out{group, n_generators + other.n_generators, {}};
    for (const auto& r : relations) {
        auto row = r;
        for (int j = 0; j < other.n_generators; ++j) row.push_back(int_zero(group));
        out.relations.push_back(std::move(row));
    }
    for (const auto& r : other.relations) {
        std::vector<IntGR> row;
        for (int j = 0; j < n_generators; ++j) row.push_back(int_zero(group));
        row.insert(row.end(), r.begin(), r.end());
        out.relations.push_back(std::move(row));
    }
    return out;
}

FiniteGModule FiniteGModule::trivial_action(GroupPtr g, IntVec invariants) {
    FiniteGModule m{g, std::move(invariants), {}};
    for (int i = 0; i < g->rank(); ++i) m.action.push_back(identity_matrix(m.invariants.size()));
    return m;
}

namespace {

IntMat reduce_mod(IntMat a, const IntVec& moduli) {
    for (auto& row : a)
        for (size_t k = 0; k < row.size(); ++k) row[k] = (moduli[k] == 0) ? row[k] : mpz_class(((row[k] % moduli[k]) + moduli[k]) % moduli[k]);
    return a;
}

}  // namespace

IntMat FiniteGModule::element_matrix(int sigma) const {
    auto t = group->element(sigma);
    IntMat acc = identity_matrix(dim());
    for (int i = 0; i < group->rank(); ++i)
        for (int k = 0; k < t[i]; ++k) acc = reduce_mod(mat_mul(acc, action[i]), invariants);
    return acc;
}

bool FiniteGModule::is_valid() const {
    if (static_cast<int>(action.size()) != group->rank()) return false;
    const size_t t = dim();
    for (size_t i = 0; i < action.size(); ++i) {
        // Rows must respect the torsion: d_j e_j maps to 0.
        for (size_t j = 0; j < t; ++j)
            for (size_t k = 0; k < t; ++k)
                if (invariants[k] != 0 && (invariants[j] * action[i][j][k]) % invariants[k] != 0) return false;
        IntMat pw = identity_matrix(t);
        for (int k = 0; k < group->factors()[i]; ++k) pw = reduce_mod(mat_mul(pw, action[i]), invariants);
        if (pw != reduce_mod(identity_matrix(t), invariants)) return false;
        for (size_t j = 0; j < action.size(); ++j)
            if (reduce_mod(mat_mul(action[i], action[j]), invariants) != reduce_mod(mat_mul(action[j], action[i]), invariants))
                return false;
    }
    return true;
}

FiniteGModule FiniteGModule::direct_sum(const FiniteGModule& other) const {
    FiniteGModule out{group, invariants, {}};
    out.invariants.insert(out.invariants.end(), other.invariants.begin(), other.invariants.end());
    const size_t a = dim(), b = other.dim();
    for (size_t i = 0; i < action.size(); ++i) {
        IntMat m = zero_matrix(a + b, a + b);
        for (size_t r = 0; r < a; ++r)
            for (size_t c = 0; c < a; ++c) m[r][c] = action[i][r][c];
        for (size_t r = 0; r < b; ++r)
            for (size_t c = 0; c < b; ++c) m[a + r][a + c] = other.action[i][r][c];
        out.action.push_back(std::move(m));
    }
    return out;
}

size_t FiniteGModule::order() const {
    size_t n = 1;
    for (const auto& d : invariants) n *= d.get_ui();
    return n;
}

Presentation FiniteGModule::presentation() const {
    const int t = static_cast<int>(dim());
    Presentation p{group, t, {}};
    for (int i = 0; i < group->rank(); ++i) {
        std::vector<int> unit(group->rank(), 0);
        unit[i] = 1;
        const int gen = group->index(unit);
        for (int j = 0; j < t; ++j) {
            std::vector<IntGR> row(t, int_zero(group));
            row[j] += int_basis(group, gen);
            for (int k = 0; k < t; ++k) row[k][0] -= action[i][j][k];
            p.relations.push_back(std::move(row));
        }
    }
    for (int j = 0; j < t; ++j) {
        if (invariants[j] == 0) continue;
        std::vector<IntGR> row(t, int_zero(group));
        row[j][0] = invariants[j];
        p.relations.push_back(std::move(row));
    }
    return p;
}

namespace {

class MinorEngine {
public:
    explicit MinorEngine(const std::vector<std::vector<IntGR>>& m, GroupPtr g) : m_(m), g_(std::move(g)) {}

    // Determinant of the minor on the given rows and columns (bitmasks of equal popcount).
    IntGR det(uint64_t rows, const std::vector<int>& cols, size_t col_pos, uint64_t col_key) {
        if (col_pos == cols.size()) return IntGR::one(g_, 0);
        auto key = std::make_pair(rows, col_key);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        IntGR acc = int_zero(g_);
        const int c = cols[col_pos];
        int sign = 1;
        for (size_t r = 0; r < m_.size(); ++r) {
            if (!(rows >> r & 1)) continue;
            const IntGR& entry = m_[r][c];
            bool zero = std::all_of(entry.coeffs().begin(), entry.coeffs().end(), [](const mpz_class& x) { return x == 0; });
            if (!zero) {
                IntGR sub = det(rows & ~(uint64_t{1} << r), cols, col_pos + 1, col_key & ~(uint64_t{1} << c));
                if (sign > 0) acc += entry * sub;
                else acc -= entry * sub;
            }
            sign = -sign;
        }
        memo_.emplace(key, acc);
        return acc;
    }

private:
    const std::vector<std::vector<IntGR>>& m_;
    GroupPtr g_;
    std::map<std::pair<uint64_t, uint64_t>, IntGR> memo_;
};

template <class F>
void for_each_subset(int n, int k, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

IntGR group_ring_det(const std::vector<std::vector<IntGR>>& m) {
    if (m.empty()) throw InputError("empty matrix has no group ring");
    const int n = static_cast<int>(m.size());
    if (n > 63) throw CapacityError("matrix too large for cofactor expansion");
    MinorEngine eng(m, m[0][0].group_ptr());
    std::vector<int> cols(n);
    uint64_t key = 0;
    for (int i = 0; i < n; ++i) {
        cols[i] = i;
        key |= uint64_t{1} << i;
    }
    return eng.det((n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1), cols, 0, key);
}

GIdeal fitting_ideal(const Presentation& p, int n) {
    const GroupPtr& g = p.group;
    const int k = p.n_generators - n;
    if (k <= 0) return GIdeal::unit(g);
    const int r = static_cast<int>(p.relations.size());
    if (r < k) return GIdeal::zero(g);
    if (r > 63 || p.n_generators > 63) throw CapacityError("presentation too large for minor enumeration");
    MinorEngine eng(p.relations, g);
    GIdeal acc = GIdeal::zero(g);
    std::vector<IntGR> pending;
    auto flush = [&]() {
        if (pending.empty()) return;
        acc = acc + GIdeal::from_generators(g, pending);
        pending.clear();
    };
    for_each_subset(p.n_generators, k, [&](const std::vector<int>& cols) {
        uint64_t col_key = 0;
        for (int c : cols) col_key |= uint64_t{1} << c;
        for_each_subset(r, k, [&](const std::vector<int>& rows) {
            if (acc.index() == 1) return;
            uint64_t row_key = 0;
            for (int x : rows) row_key |= uint64_t{1} << x;
            IntGR d = eng.det(row_key, cols, 0, col_key);
            if (acc.contains(d)) return;
            pending.push_back(std::move(d));
            if (pending.size() >= 8) flush();
        });
    });
    flush();
    return acc;
}

GIdeal annihilator(const FiniteGModule& m) {
    const GroupPtr& g = m.group;
    const size_t t = m.dim();
    if (t == 0) return GIdeal::unit(g);
    IntMat a;
    IntVec moduli;
    for (size_t j = 0; j < t; ++j) moduli.insert(moduli.end(), m.invariants.begin(), m.invariants.end());
    for (int s = 0; s < g->order(); ++s) {
        IntMat ms = m.element_matrix(s);
        IntVec row;
        for (size_t j = 0; j < t; ++j) row.insert(row.end(), ms[j].begin(), ms[j].end());
        a.push_back(std::move(row));
    }
    return GIdeal(g, kernel_mod(a, moduli));
}

GIdeal fitting_from_extension(const FiniteGModule& cl, int d) {
    const auto& g = cl.group;
    if (g->rank() != 1) throw UnsupportedError("extension formula needs G cyclic of prime order");
    const int p = g->order();
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw UnsupportedError("extension formula needs G cyclic of prime order");
    if (d < 1) throw InputError("d must be positive");
    return fitting_ideal(cl.presentation(), 0) * aug_ideal_power(g, d - 1);
}

bool membership(const IntGR& x, const GIdeal& a) { return a.contains(x); }

std::optional<IntGR> recognize_integral(const BallGR& x) {
    IntGR out = int_zero(x.group_ptr());
    bool nonintegral = false;
    double worst = 0;
    for (int i = 0; i < x.size(); ++i) {
        if (auto n = x[i].certify_integer()) {
            out[i] = *n;
            continue;
        }
        worst = std::max(worst, x[i].rad_double());
        mpz_class n;
        mpfr_get_z(n.get_mpz_t(), x[i].mid(), MPFR_RNDN);
        const bool narrow = x[i].rad_double() < 0.5;
        if (narrow && !x[i].contains(mpq_class(n)) && !x[i].contains(mpq_class(n - 1)) && !x[i].contains(mpq_class(n + 1)))
            nonintegral = true;
        else
            throw UndecidedError("coefficient cannot be certified integral", worst);
    }
    if (nonintegral) return std::nullopt;
    return out;
}

bool membership(const BallGR& x, const GIdeal& a) {
    auto v = recognize_integral(x);
    return v && a.contains(*v);
}

}  // namespace starklab
