#include "starklab/multilin.hpp"

#include <algorithm>

#include "starklab/sublat.hpp"

namespace starklab {

QuotientGroup quotient_group(const GroupPtr& g, const std::vector<bool>& h_bits) {
    const int m = g->rank();
    IntMat rel;
    for (int i = 0; i < m; ++i) {
        IntVec row(m, 0);
        row[i] = g->factors()[i];
        rel.push_back(row);
    }
    for (int h = 0; h < g->order(); ++h) {
        if (!h_bits[h]) continue;
        auto t = g->element(h);
        rel.emplace_back(t.begin(), t.end());
    }
    SmithForm s = smith(rel, m);
    std::vector<int> factors;
    std::vector<size_t> kept;
    for (int i = 0; i < m; ++i)
        if (s.diagonal[i] > 1) {
            factors.push_back(static_cast<int>(s.diagonal[i].get_si()));
            kept.push_back(i);
        }
    QuotientGroup q{make_group(factors), std::vector<int>(g->order()), {}};
    q.section.assign(q.group->order(), -1);
    for (int x = 0; x < g->order(); ++x) {
        auto t = g->element(x);
        IntVec row(t.begin(), t.end());
        IntVec img = vec_mat_mul(row, s.col_transform);
        std::vector<int> coords;
        for (size_t k = 0; k < kept.size(); ++k) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), img[kept[k]].get_mpz_t(), s.diagonal[kept[k]].get_mpz_t());
            coords.push_back(static_cast<int>(r.get_si()));
        }
        q.projection[x] = q.group->index(coords);
        if (q.section[q.projection[x]] < 0) q.section[q.projection[x]] = x;
    }
    return q;
}

GLattice GLattice::free_module(GroupPtr g, int n) {
    GLattice l{g, n * g->order(), {}};
    for (int i = 0; i < g->rank(); ++i) {
        std::vector<int> unit(g->rank(), 0);
        unit[i] = 1;
        const int u = g->index(unit);
        IntMat a = zero_matrix(l.rank, l.rank);
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < g->order(); ++s) a[j * g->order() + s][j * g->order() + g->add(s, u)] = 1;
        l.action.push_back(std::move(a));
    }
    return l;
}

IntMat GLattice::element_matrix(int sigma) const {
    auto t = group->element(sigma);
    IntMat acc = identity_matrix(rank);
    for (int i = 0; i < group->rank(); ++i)
        for (int k = 0; k < t[i]; ++k) acc = mat_mul(acc, action[i]);
    return acc;
}

bool GLattice::is_valid() const {
    if (static_cast<int>(action.size()) != group->rank()) return false;
    for (size_t i = 0; i < action.size(); ++i) {
        IntMat pw = identity_matrix(rank);
        for (int k = 0; k < group->factors()[i]; ++k) pw = mat_mul(pw, action[i]);
        if (pw != identity_matrix(rank)) return false;
        for (size_t j = 0; j < action.size(); ++j)
            if (mat_mul(action[i], action[j]) != mat_mul(action[j], action[i])) return false;
    }
    return true;
}

FreeCover FreeCover::identity(GroupPtr g, int n) {
    FreeCover c{GLattice::free_module(g, n), {}};
    for (int j = 0; j < n; ++j) {
        IntVec v(c.lattice.rank, 0);
        v[j * g->order()] = 1;
        c.images.push_back(std::move(v));
    }
    return c;
}

std::vector<CoverFunctional> FreeCover::dual_generators(mpfr_prec_t prec) const {
    const auto& g = lattice.group;
    std::vector<IntMat> inverse_mats;
    for (int s = 0; s < g->order(); ++s) inverse_mats.push_back(lattice.element_matrix(g->neg(s)));
    std::vector<CoverFunctional> out;
    for (int t = 0; t < lattice.rank; ++t) {
        CoverFunctional f;
        for (const auto& m : images) {
            BallGR v(g, Ball(prec));
            for (int s = 0; s < g->order(); ++s) {
                IntVec moved = vec_mat_mul(m, inverse_mats[s]);
                v[s] = Ball(moved[t], prec);
            }
            f.push_back(std::move(v));
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<std::vector<int>> WedgeElement::subsets(int n, int r) {
    std::vector<std::vector<int>> out;
    if (r < 0 || r > n) return out;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) return out;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

WedgeElement::WedgeElement(GroupPtr g, int n, int degree, mpfr_prec_t prec)
    : g_(std::move(g)), n_(n), r_(degree), prec_(prec), sets_(subsets(n, degree)) {
    if (degree < 0 || degree > n) throw InputError("wedge degree must lie in [0, n]");
    c_.assign(sets_.size(), BallGR(g_, Ball(prec)));
}

size_t WedgeElement::position(const std::vector<int>& idx) const {
    auto it = std::lower_bound(sets_.begin(), sets_.end(), idx);
    if (it == sets_.end() || *it != idx) throw InputError("index set not in wedge basis");
    return static_cast<size_t>(it - sets_.begin());
}

WedgeElement WedgeElement::basis_wedge(GroupPtr g, int n, const std::vector<int>& idx, mpfr_prec_t prec) {
    WedgeElement w(g, n, static_cast<int>(idx.size()), prec);
    std::vector<int> sorted = idx;
    int sign = 1;
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = 0; j + 1 < sorted.size() - i; ++j)
            if (sorted[j] > sorted[j + 1]) {
                std::swap(sorted[j], sorted[j + 1]);
                sign = -sign;
            }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return w;
    BallGR one = BallGR::one(g, Ball(prec));
    w.c_[w.position(sorted)] = sign > 0 ? one : -one;
    return w;
}

BallGR ball_det(const std::vector<std::vector<BallGR>>& m) {
    const size_t n = m.size();
    if (n == 0) throw InputError("empty determinant needs a group");
    if (n == 1) return m[0][0];
    BallGR acc(m[0][0].group_ptr(), m[0][0].zero());
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::vector<BallGR>> minor;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            minor.emplace_back(m[r].begin() + 1, m[r].end());
        }
        BallGR term = m[i][0] * ball_det(minor);
        if (i % 2 == 0) acc += term;
        else acc -= term;
    }
    return acc;
}

WedgeElement WedgeElement::wedge_of(const std::vector<std::vector<BallGR>>& vectors) {
    if (vectors.empty()) throw InputError("wedge_of needs at least one vector");
    const auto& g = vectors[0][0].group_ptr();
    const int n = static_cast<int>(vectors[0].size());
    const int r = static_cast<int>(vectors.size());
    WedgeElement w(g, n, r, vectors[0][0].zero().prec());
    for (size_t k = 0; k < w.sets_.size(); ++k) {
        std::vector<std::vector<BallGR>> m(r);
        for (int i = 0; i < r; ++i)
            for (int j : w.sets_[k]) m[i].push_back(vectors[i][j]);
        // Rows are vectors, columns are the chosen coordinates.
        w.c_[k] = ball_det(m);
    }
    return w;
}

WedgeElement& WedgeElement::operator+=(const WedgeElement& b) {
    if (b.n_ != n_ || b.r_ != r_) throw InputError("wedge shapes differ");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
    return *this;
}

WedgeElement& WedgeElement::operator-=(const WedgeElement& b) {
    if (b.n_ != n_ || b.r_ != r_) throw InputError("wedge shapes differ");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
    return *this;
}

WedgeElement WedgeElement::scaled(const BallGR& x) const {
    WedgeElement w = *this;
    for (auto& c : w.c_) c = c * x;
    return w;
}

bool WedgeElement::is_zero_certified() const {
    for (const auto& c : c_)
        for (const auto& b : c.coeffs())
            if (!b.contains(0)) return false;
    return true;
}

double WedgeElement::max_radius() const {
    double worst = 0;
    for (const auto& c : c_)
        for (const auto& b : c.coeffs()) worst = std::max(worst, b.rad_double());
    return worst;
}

BallGR det_pairing(const WedgeElement& a, const std::vector<CoverFunctional>& fs) {
    if (static_cast<int>(fs.size()) != a.degree()) throw InputError("pairing needs one functional per wedge slot");
    BallGR acc(a.group_ptr(), Ball(a.prec()));
    if (a.degree() == 0) return a.coeff(0);
    for (size_t k = 0; k < a.coeff_count(); ++k) {
        const auto& idx = a.index_sets()[k];
        std::vector<std::vector<BallGR>> m(fs.size());
        for (size_t i = 0; i < fs.size(); ++i)
            for (int j : idx) m[i].push_back(fs[i][j]);
        acc += a.coeff(k) * ball_det(m);
    }
    return acc;
}

ImageResult image_lattice(const WedgeElement& eps, const FreeCover& cover) {
    const auto& g = eps.group_ptr();
    ImageResult out;
    std::vector<IntGR> gens;
    auto record = [&](const BallGR& value) {
        auto v = recognize_integral(value);
        if (!v) {
            out.status = Integrality::NonIntegral;
            return false;
        }
        gens.push_back(*v);
        return true;
    };
    if (eps.degree() == 0) {
        if (record(eps.coeff(0))) out.ideal = GIdeal::from_generators(g, gens);
        return out;
    }
    auto duals = cover.dual_generators(eps.prec());
    for (const auto& pick : WedgeElement::subsets(static_cast<int>(duals.size()), eps.degree())) {
        std::vector<CoverFunctional> fs;
        for (int t : pick) fs.push_back(duals[t]);
        if (!record(det_pairing(eps, fs))) return out;
    }
    out.ideal = GIdeal::from_generators(g, gens);
    return out;
}

bool bidual_member(const WedgeElement& a, const FreeCover& cover) {
    return image_lattice(a, cover).status == Integrality::Integral;
}

WedgeElement nu_map(const WedgeElement& a, const GroupPtr& g, const std::vector<bool>& h_bits) {
    QuotientGroup q = quotient_group(g, h_bits);
    if (*q.group != *a.group_ptr()) throw InputError("wedge element is not over Z[G/H]");
    const int r = a.degree();
    // Coefficients embed through Q[G/H] = e_H Q[G] and slots through
    // e'_k -> N_H e_k, so the image is |H|^{max(0,1-r)} e_H N_H^r = N_H^{max(r,1)}.
    IntGR norm = norm_element_of(g, h_bits);
    IntGR factor = norm;
    for (int i = 1; i < r; ++i) factor = factor * norm;
    BallGR ball_factor = to_ball(factor, a.prec());
    WedgeElement out(g, a.cover_size(), r, a.prec());
    for (size_t k = 0; k < a.coeff_count(); ++k) {
        BallGR lift(g, Ball(a.prec()));
        for (int x = 0; x < q.group->order(); ++x) lift[q.section[x]] = a.coeff(k)[x];
        out.coeff(k) = lift * ball_factor;
    }
    return out;
}

WedgeElement wedge_psi(const WedgeElement& eps, const std::vector<CoverFunctional>& psis) {
    if (static_cast<int>(psis.size()) > eps.degree()) throw InputError("contraction below degree 0");
    WedgeElement cur = eps;
    for (const auto& f : psis) {
        WedgeElement next(cur.group_ptr(), cur.cover_size(), cur.degree() - 1, cur.prec());
        for (size_t k = 0; k < cur.coeff_count(); ++k) {
            const auto& idx = cur.index_sets()[k];
            for (size_t j = 0; j < idx.size(); ++j) {
                std::vector<int> rest;
                for (size_t t = 0; t < idx.size(); ++t)
                    if (t != j) rest.push_back(idx[t]);
                BallGR term = f[idx[j]] * cur.coeff(k);
                size_t pos = next.position(rest);
                if (j % 2 == 0) next.coeff(pos) += term;
                else next.coeff(pos) -= term;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

ResidualCheck prop42_check(const WedgeElement& eps_field, const std::vector<WedgeElement>& eps_subfields, int p, int m,
                           double tolerance) {
    auto hs = enumerate_omega_star(p, m);
    auto members = hs.members();
    if (eps_subfields.size() != members.size()) throw InputError("one subfield element per member of Omega*");
    const GroupPtr& g = eps_field.group_ptr();
    if (*g != *hs.group) throw InputError("field element is not over (Z/p)^m");
    const mpfr_prec_t prec = eps_field.prec();
    WedgeElement total(g, eps_field.cover_size(), eps_field.degree(), prec);
    for (size_t i = 0; i < members.size(); ++i) total += nu_map(eps_subfields[i], g, members[i]);
    long geometric = 0;
    for (int i = 0; i < m; ++i) geometric += int_pow(p, i);
    const long coeff = (int_pow(p, m - 1) - 1) - geometric;
    BallGR scalar = BallGR::one(g, Ball(prec));
    scalar[0] = Ball(coeff, prec);
    total += nu_map(eps_subfields.back(), g, members.back()).scaled(scalar);
    BallGR inv = BallGR::one(g, Ball(prec));
    inv[0] = Ball(mpq_class(1, int_pow(p, m - 1)), prec);
    WedgeElement residual = eps_field;
    residual -= total.scaled(inv);
    ResidualCheck out;
    out.residual = residual.max_radius();
    bool excludes = false;
    for (size_t k = 0; k < residual.coeff_count(); ++k)
        for (const auto& b : residual.coeff(k).coeffs()) {
            out.residual = std::max(out.residual, b.abs_upper());
            if (b.excludes_zero()) excludes = true;
        }
    if (excludes) return out;
    if (out.residual < tolerance) {
        out.holds = true;
        return out;
    }
    throw UndecidedError("residual contains 0 but is too wide", out.residual);
}

}  // namespace starklab
