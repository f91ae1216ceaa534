#include "starklab/numfld.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "starklab/dirichlet.hpp"
#include "starklab/errors.hpp"
#include "starklab/sublat.hpp"

namespace starklab {

namespace {

Ball ball_log(const Ball& x) { return log(abs(x)); }

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

GroupPtr galois_group(long D) { return D == 1 ? make_group({}) : make_group({2}); }

long fundamental_part(long n) {
    if (n == 0) throw InputError("zero has no squarefree part");
    long sign = n < 0 ? -1 : 1;
    long m = std::labs(n), out = 1;
    for (long p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    out *= m * sign;
    return mod(out, 4) == 1 ? out : 4 * out;
}

FiniteGModule class_group_module(long D) {
    GroupPtr g = galois_group(D);
    if (D == 1) return FiniteGModule::trivial_action(g, {});
    ClassGroup cg(D);
    IntVec inv;
    for (int d : cg.group().factors()) inv.push_back(d);
    FiniteGModule m;
    m.group = g;
    m.invariants = inv;
    IntMat a = zero_matrix(inv.size(), inv.size());
    for (size_t i = 0; i < inv.size(); ++i) a[i][i] = inv[i] - 1;
    m.action = {a};
    return m;
}

int FieldPlaces::first_above(long q) const {
    for (size_t i = 0; i < places.size(); ++i)
        if (places[i].p == q) return static_cast<int>(i);
    throw InputError("no place above the requested prime");
}

FieldPlaces field_places(long D, const std::vector<long>& finite_S) {
    FieldPlaces pl;
    pl.D = D;
    auto add = [&](PlaceData p, int conj_offset) {
        const int i = static_cast<int>(pl.places.size());
        pl.places.push_back(std::move(p));
        pl.sigma.push_back(i + conj_offset);
    };
    if (D < 0) {
        PlaceData c;
        c.kind = PlaceData::Kind::Complex;
        add(c, 0);
    } else if (D == 1) {
        add(PlaceData{}, 0);
    } else {
        PlaceData a, b;
        b.sign = -1;
        add(a, 1);
        add(b, -1);
    }
    for (long q : finite_S) {
        if (!is_prime(q)) throw DatumError("S may only contain primes besides infinity");
        if (D == 1) {
            PlaceData f;
            f.kind = PlaceData::Kind::Finite;
            f.p = q;
            f.norm = q;
            add(f, 0);
            continue;
        }
        auto ps = primes_above(D, q);
        for (size_t k = 0; k < ps.size(); ++k) {
            PlaceData f;
            f.kind = PlaceData::Kind::Finite;
            f.p = q;
            f.norm = ps[k].norm;
            f.prime = ps[k];
            add(f, ps.size() == 2 ? (k == 0 ? 1 : -1) : 0);
        }
    }
    return pl;
}

std::vector<Ball> log_vector(const QuadNumber& x, const FieldPlaces& pl, mpfr_prec_t prec) {
    if (x.is_zero()) throw InputError("logarithm of zero");
    std::vector<Ball> out;
    for (const auto& w : pl.places) {
        switch (w.kind) {
        case PlaceData::Kind::Real:
            out.push_back(-ball_log(x.real_embedding(w.sign, prec)));
            break;
        case PlaceData::Kind::Complex:
            out.push_back(-ball_log(Ball(x.norm(), prec)));
            break;
        case PlaceData::Kind::Finite: {
            long ord;
            if (pl.D == 1) {
                ord = 0;
                mpz_class num = x.a.get_num(), den = x.a.get_den();
                while (num % w.p == 0) num /= w.p, ++ord;
                while (den % w.p == 0) den /= w.p, --ord;
            } else {
                ord = valuation(x, w.prime);
            }
            out.push_back(Ball(ord, prec) * Ball::log_of(w.norm, prec));
            break;
        }
        }
    }
    return out;
}

std::vector<Ball> ball_solve_left(const std::vector<std::vector<Ball>>& m, const std::vector<Ball>& v) {
    const size_t n = m.size();
    if (v.size() != n) throw InputError("dimension mismatch in ball solve");
    // Solve m^T x^T = v^T by elimination with the largest-midpoint pivot.
    std::vector<std::vector<Ball>> a(n);
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw InputError("ball solve needs a square matrix");
        for (size_t j = 0; j < n; ++j) a[i].push_back(m[j][i]);
        a[i].push_back(v[i]);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col].mid_double()) > std::fabs(a[piv][col].mid_double())) piv = r;
        if (!a[piv][col].excludes_zero()) throw PrecisionError("pivot not certified nonzero");
        std::swap(a[col], a[piv]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Ball f = a[r][col] / a[col][col];
            for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<Ball> x;
    for (size_t i = 0; i < n; ++i) x.push_back(a[i][n] / a[i][i]);
    return x;
}

Ball acnf_real_prediction(long D, mpfr_prec_t prec) {
    if (D <= 1) throw InputError("real prediction needs D > 0");
    ClassGroup cg(D);
    return Ball(static_cast<long>(cg.order()), prec) * fundamental_unit(D).log(prec);
}

mpq_class acnf_imaginary_prediction(long D) {
    if (D >= 0) throw InputError("imaginary prediction needs D < 0");
    ClassGroup cg(D);
    mpq_class out(2 * cg.order(), roots_of_unity_count(D));
    out.canonicalize();
    return out;
}

MultiquadUnits multiquad_units(const std::vector<long>& discs, mpfr_prec_t prec) {
    const int m = static_cast<int>(discs.size());
    if (m < 1 || m > 4) throw InputError("between one and four discriminants");
    for (long d : discs)
        if (d <= 1 || !is_fundamental_discriminant(d)) throw InputError("totally real fields need positive fundamental discriminants");
    GroupPtr g = make_group(std::vector<int>(m, 2));
    MultiquadUnits out;
    out.discs = discs;
    for (int bits = 1; bits < (1 << m); ++bits) {
        long prod = 1;
        for (int i = 0; i < m; ++i)
            if (bits >> (m - 1 - i) & 1) prod *= discs[i];
        const long d = fundamental_part(prod);
        if (d == 1) throw InputError("discriminants are not independent");
        if (std::find(out.subfield_discs.begin(), out.subfield_discs.end(), d) != out.subfield_discs.end())
            throw InputError("discriminants are not independent");
        out.subfield_discs.push_back(d);
        const QuadNumber u = fundamental_unit(d).unit;
        out.units.push_back(u);
        std::vector<Ball> row;
        for (int s = 0; s < g->order(); ++s) {
            const auto el = g->element(s);
            int sign = 1;
            for (int i = 0; i < m; ++i)
                if ((bits >> (m - 1 - i) & 1) && el[i]) sign = -sign;
            row.push_back(ball_log(u.real_embedding(sign, prec)));
        }
        out.logs.push_back(std::move(row));
    }
    return out;
}

}  // namespace starklab

namespace starklab {

namespace {

struct Residue {
    long t = 0;
    long order = 1;
    int conj = 0;
    long multiplier = 1;
    std::shared_ptr<ResidueField> field;
    std::vector<long> table;  // rational case: table[a] = log of a mod t

    long log(const QuadNumber& x) const {
        if (field) return field->log(x);
        const mpz_class num = x.a.get_num(), den = x.a.get_den();
        const long n = mod(mpz_class(num % t).get_si(), t), d = mod(mpz_class(den % t).get_si(), t);
        if (n == 0 || d == 0) throw InputError("element is not a unit at the residue prime");
        return mod(table[n] - table[d], order);
    }
};

std::vector<Residue> residues_above(long D, const std::vector<long>& T) {
    std::vector<Residue> out;
    for (long t : T) {
        if (!is_prime(t)) throw DatumError("T may only contain primes");
        if (D == 1) {
            Residue r;
            r.t = t;
            r.order = t - 1;
            r.conj = static_cast<int>(out.size());
            r.table.assign(t, -1);
            for (long g = 1; g < t; ++g) {
                std::vector<long> seen(t, 0);
                long x = 1, k = 0;
                bool ok = true;
                for (; k < t - 1; ++k) {
                    if (seen[x]) {
                        ok = false;
                        break;
                    }
                    seen[x] = 1;
                    r.table[x] = k;
                    x = x * g % t;
                }
                if (ok) break;
            }
            out.push_back(std::move(r));
            continue;
        }
        auto ps = primes_above(D, t);
        const int first = static_cast<int>(out.size());
        for (size_t k = 0; k < ps.size(); ++k) {
            Residue r;
            r.t = t;
            r.field = std::make_shared<ResidueField>(D, ps[k]);
            r.order = r.field->order();
            r.multiplier = r.field->conjugation_multiplier();
            r.conj = ps.size() == 2 ? first + 1 - static_cast<int>(k) : first + static_cast<int>(k);
            out.push_back(std::move(r));
        }
    }
    return out;
}

struct Relation {
    QuadNumber alpha;
    IntVec valuations;
};

IntVec valuation_row(const QuadNumber& a, const std::vector<PrimeIdeal>& fb) {
    IntVec row;
    for (const auto& P : fb) row.push_back(valuation(a, P));
    return row;
}

// Elements with fb-smooth norm whose valuation rows span the lattice of
// principal combinations, which has index `target` in Z^fb.
std::vector<Relation> find_relations(long D, const std::vector<PrimeIdeal>& fb, long target, long max_radius = 2500) {
    std::vector<Relation> out;
    const size_t k = fb.size();
    if (k == 0) return out;
    std::vector<long> ps;
    for (const auto& P : fb)
        if (std::find(ps.begin(), ps.end(), P.p) == ps.end()) ps.push_back(P.p);
    IntMat lattice;
    auto done = [&] { return lattice.size() == k && hnf_index(lattice, k) == target; };
    auto offer = [&](const QuadNumber& a) {
        IntVec row = valuation_row(a, fb);
        if (!lattice.empty() && hnf_contains(lattice, row)) return;
        if (std::all_of(row.begin(), row.end(), [](const mpz_class& v) { return v == 0; })) return;
        IntMat next = lattice;
        next.push_back(row);
        lattice = hnf(next, k);
        out.push_back({a, row});
    };
    for (long p : ps) {
        offer(QuadNumber(D, p));
        if (done()) return out;
    }
    const long s = mod(D, 2);
    const long c0 = (s * s - D) / 4;
    const QuadNumber omega0 = QuadNumber::from_coords(D, -(D - s) / 2, 1);
    for (long R = 1; R <= max_radius; ++R) {
        for (long y = 1; y <= R; ++y) {
            for (long u = -R; u <= R; ++u) {
                if (std::max(std::labs(u), y) != R) continue;
                if (std::gcd(std::labs(u), y) != 1) continue;
                mpz_class n = mpz_class(u) * u + mpz_class(s) * u * y + mpz_class(c0) * y * y;
                if (n == 0) continue;
                n = abs(n);
                for (long p : ps)
                    while (n % p == 0) n /= p;
                if (n != 1) continue;
                offer(QuadNumber(D, u) + QuadNumber(D, y) * omega0);
                if (done()) return out;
            }
        }
    }
    throw CapacityError("relation search exhausted its box");
}

std::vector<PrimeIdeal> finite_primes(const FieldPlaces& pl) {
    std::vector<PrimeIdeal> out;
    for (const auto& w : pl.places)
        if (w.kind == PlaceData::Kind::Finite) out.push_back(w.prime);
    return out;
}

long subgroup_order(const ClassGroup& cg, const std::vector<PrimeIdeal>& ps) {
    std::vector<int> gens;
    for (const auto& P : ps) gens.push_back(cg.element_of(P));
    return AbelianGroup::subgroup_order(cg.group().subgroup(gens));
}

void check_disjoint(const PlaceSets& st) {
    for (long q : st.T)
        if (std::find(st.S.begin(), st.S.end(), q) != st.S.end()) throw DatumError("S and T must be disjoint");
}

}  // namespace

QuadNumber SUnitLattice::element(int i) const {
    QuadNumber out(D, 1);
    for (size_t j = 0; j < base.size(); ++j) out = out * base[j].pow(basis[i][j].get_si());
    return out;
}

std::vector<std::vector<Ball>> regulator_map(const SUnitLattice& u, mpfr_prec_t prec) {
    std::vector<std::vector<Ball>> base_logs;
    for (size_t j = 1; j < u.base.size(); ++j) base_logs.push_back(log_vector(u.base[j], u.places, prec));
    std::vector<std::vector<Ball>> out;
    for (const auto& row : u.basis) {
        std::vector<Ball> r(u.places.size(), Ball(0L, prec));
        for (size_t j = 1; j < u.base.size(); ++j) {
            if (row[j] == 0) continue;
            const Ball e(row[j], prec);
            for (size_t w = 0; w < r.size(); ++w) r[w] += e * base_logs[j - 1][w];
        }
        out.push_back(std::move(r));
    }
    return out;
}

SUnitLattice s_unit_lattice(long D, const PlaceSets& st, mpfr_prec_t prec) {
    if (D != 1 && !is_fundamental_discriminant(D)) throw InputError("fundamental discriminant required");
    check_disjoint(st);
    SUnitLattice u;
    u.D = D;
    u.prec = prec;
    u.places = field_places(D, st.S);
    u.torsion_order = D == 1 ? 2 : roots_of_unity_count(D);
    u.base.push_back(D == 1 ? QuadNumber(1, -1) : torsion_generator(D));
    if (D > 1) u.base.push_back(fundamental_unit(D).unit);
    if (D == 1) {
        for (long q : st.S) u.base.push_back(QuadNumber(1, q));
    } else {
        const auto sp = finite_primes(u.places);
        ClassGroup cg(D);
        const auto rels = find_relations(D, sp, subgroup_order(cg, sp));
        const size_t k = sp.size(), m = rels.size();
        IntMat aug;
        for (size_t i = 0; i < m; ++i) {
            IntVec row = rels[i].valuations;
            for (size_t j = 0; j < m; ++j) row.push_back(i == j ? 1 : 0);
            aug.push_back(row);
        }
        aug = hnf(aug, k + m);
        for (size_t r = 0; r < k; ++r) {
            QuadNumber x(D, 1);
            for (size_t i = 0; i < m; ++i)
                if (aug[r][k + i] != 0) x = x * rels[i].alpha.pow(aug[r][k + i].get_si());
            u.base.push_back(x);
        }
    }
    const size_t nb = u.base.size();
    const int free_rank = static_cast<int>(nb) - 1;
    const auto res = residues_above(D, st.T);
    IntVec moduli;
    for (const auto& r : res) moduli.push_back(r.order);
    IntMat images;
    for (const auto& x : u.base) {
        IntVec row;
        for (const auto& r : res) row.push_back(r.log(x));
        images.push_back(row);
    }
    mpz_class torsion_image = 1;
    for (size_t j = 0; j < res.size(); ++j) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), moduli[j].get_mpz_t(), images[0][j].get_mpz_t());
        mpz_class ord = moduli[j] / g;
        mpz_lcm(torsion_image.get_mpz_t(), torsion_image.get_mpz_t(), ord.get_mpz_t());
    }
    if (torsion_image != u.torsion_order) throw DatumError("T does not make the unit group torsion free");
    IntMat ker = res.empty() ? identity_matrix(nb) : kernel_mod(images, moduli);
    // Free coordinates first so that the HNF isolates the torsion relation.
    IntMat shuffled;
    for (const auto& row : ker) {
        IntVec r(row.begin() + 1, row.end());
        r.push_back(row[0]);
        shuffled.push_back(r);
    }
    shuffled = hnf(shuffled, nb);
    for (int i = 0; i < free_rank; ++i) {
        if (shuffled[i][i] == 0) throw ConsistencyError("unit kernel is not of full rank");
        IntVec row{shuffled[i][nb - 1]};
        row.insert(row.end(), shuffled[i].begin(), shuffled[i].end() - 1);
        u.basis.push_back(row);
    }
    if (free_rank != static_cast<int>(u.places.size()) - 1) throw ConsistencyError("S-unit rank differs from |S_K| - 1");
    u.lattice.group = galois_group(D);
    u.lattice.rank = free_rank;
    if (D != 1) {
        const auto logs = regulator_map(u, prec);
        const size_t n = free_rank;
        std::vector<std::vector<Ball>> square(n);
        for (size_t i = 0; i < n; ++i) square[i].assign(logs[i].begin(), logs[i].begin() + n);
        IntMat action;
        for (size_t i = 0; i < n; ++i) {
            std::vector<Ball> target;
            for (size_t w = 0; w < n; ++w) target.push_back(logs[i][u.places.sigma[w]]);
            const auto c = ball_solve_left(square, target);
            IntVec row;
            for (const auto& x : c) {
                auto z = x.certify_integer();
                if (!z) throw PrecisionError("Galois action on units not certified integral");
                row.push_back(*z);
            }
            action.push_back(row);
        }
        u.lattice.action = {action};
    }
    return u;
}

}  // namespace starklab

namespace starklab {

int RayClassData::p_rank(long p) const {
    int r = 0;
    for (const auto& d : cl.invariants)
        if (d % p == 0) ++r;
    return r;
}

RayClassData ray_class(long D, const PlaceSets& st) {
    if (D != 1 && !is_fundamental_discriminant(D)) throw InputError("fundamental discriminant required");
    check_disjoint(st);
    RayClassData out;
    out.D = D;
    out.st = st;
    const FieldPlaces pl = field_places(D, st.S);
    const auto res = residues_above(D, st.T);
    std::vector<PrimeIdeal> fb;
    std::vector<Relation> rels;
    std::vector<QuadNumber> units{D == 1 ? QuadNumber(1, -1) : torsion_generator(D)};
    size_t n_s = 0;
    std::vector<int> fb_conj;
    if (D == 1) {
        n_s = st.S.size();
        for (size_t i = 0; i < n_s; ++i) {
            IntVec row(n_s, 0);
            row[i] = 1;
            rels.push_back({QuadNumber(1, st.S[i]), row});
            fb_conj.push_back(static_cast<int>(i));
        }
    } else {
        if (D > 1) units.push_back(fundamental_unit(D).unit);
        ClassGroup cg(D);
        out.class_number = cg.order();
        fb = finite_primes(pl);
        n_s = fb.size();
        for (long p = 2; subgroup_order(cg, fb) < cg.order(); ++p) {
            if (!is_prime(p)) continue;
            if (std::find(st.S.begin(), st.S.end(), p) != st.S.end()) continue;
            if (std::find(st.T.begin(), st.T.end(), p) != st.T.end()) continue;
            if (splitting_type(D, p) == Splitting::Inert) continue;
            for (const auto& P : primes_above(D, p)) fb.push_back(P);
        }
        rels = find_relations(D, fb, cg.order());
        for (size_t i = 0; i < fb.size(); ++i) {
            int c = static_cast<int>(i);
            if (fb[i].type == Splitting::Split) c = (i + 1 < fb.size() && fb[i + 1].p == fb[i].p) ? c + 1 : c - 1;
            fb_conj.push_back(c);
        }
    }
    const size_t k = fb_conj.size(), t = res.size(), cols = k + t;
    IntMat rows;
    for (const auto& r : rels) {
        IntVec row = r.valuations;
        for (const auto& q : res) row.push_back(mod(-q.log(r.alpha), q.order));
        rows.push_back(row);
    }
    IntMat unit_rows;
    for (const auto& u : units) {
        IntVec row(cols, 0);
        for (size_t j = 0; j < t; ++j) row[k + j] = res[j].log(u);
        rows.push_back(row);
        unit_rows.push_back(IntVec(row.begin() + k, row.end()));
    }
    for (size_t i = 0; i < n_s; ++i) {
        IntVec row(cols, 0);
        row[i] = 1;
        rows.push_back(row);
    }
    IntMat modulus_rows;
    for (size_t j = 0; j < t; ++j) {
        IntVec row(cols, 0);
        row[k + j] = res[j].order;
        rows.push_back(row);
        IntVec mrow(t, 0);
        mrow[j] = res[j].order;
        modulus_rows.push_back(mrow);
        out.residue_order *= res[j].order;
    }
    if (t > 0) {
        IntMat sub = unit_rows;
        sub.insert(sub.end(), modulus_rows.begin(), modulus_rows.end());
        const auto sf = smith(sub, t);
        long coker = 1;
        for (const auto& d : sf.diagonal) coker *= d.get_si();
        out.global_unit_image_order = out.residue_order / coker;
    }
    GroupPtr g = galois_group(D);
    if (cols == 0) {
        out.cl = FiniteGModule::trivial_action(g, {});
        if (D != 1) out.cl.action = {IntMat{}};
        return out;
    }
    const auto sf = smith(rows, cols);
    IntMat sigma = zero_matrix(cols, cols);
    for (size_t i = 0; i < k; ++i) sigma[i][fb_conj[i]] = 1;
    for (size_t j = 0; j < t; ++j) sigma[k + j][k + res[j].conj] = res[j].multiplier;
    std::vector<size_t> kept;
    IntVec inv;
    for (size_t i = 0; i < cols; ++i) {
        const mpz_class d = i < sf.diagonal.size() ? sf.diagonal[i] : mpz_class(0);
        if (d == 0) throw ConsistencyError("ray class group is not finite");
        if (d > 1) {
            kept.push_back(i);
            inv.push_back(d);
        }
    }
    out.cl.group = g;
    out.cl.invariants = inv;
    if (D != 1) {
        IntMat act = zero_matrix(kept.size(), kept.size());
        for (size_t a = 0; a < kept.size(); ++a) {
            const IntVec img = vec_mat_mul(vec_mat_mul(sf.col_transform_inv[kept[a]], sigma), sf.col_transform);
            for (size_t b = 0; b < kept.size(); ++b) {
                mpz_class v = img[kept[b]] % inv[b];
                if (v < 0) v += inv[b];
                act[a][b] = v;
            }
        }
        out.cl.action = {act};
    }
    if (!out.cl.is_valid()) throw ConsistencyError("ray class Galois action is inconsistent");
    return out;
}

}  // namespace starklab
