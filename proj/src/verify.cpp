#include "starklab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "starklab/sublat.hpp"

namespace starklab {

using nlohmann::json;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Undecided: return "undecided";
        case Verdict::Unsupported: return "unsupported";
        case Verdict::Error: return "error";
    }
    return "error";
}

namespace {

const std::set<std::string> kChecks = {"lemma41",          "prop42",        "congruence",
                                       "sign_criterion",   "fitting_equality", "rs_integrality",
                                       "annihilation",     "igc_membership", "acnf"};

const std::set<std::string> kDatumChecks = {"prop42", "fitting_equality", "rs_integrality", "annihilation",
                                            "igc_membership"};

std::string place_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    throw InputError("places must be \"inf\" or integers");
}

std::vector<std::string> place_list(const json& j, const char* key) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) throw InputError(std::string(key) + " must be an array");
    for (const auto& v : j.at(key)) out.push_back(place_string(v));
    return out;
}

long parse_prime(const std::string& s) {
    size_t used = 0;
    long q = 0;
    try {
        q = std::stol(s, &used);
    } catch (const std::exception&) {
        throw InputError("bad place: " + s);
    }
    if (used != s.size()) throw InputError("bad place: " + s);
    return q;
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    n = n < 0 ? -n : n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

bool has(const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::vector<long> finite_places(const std::vector<std::string>& places) {
    std::vector<long> out;
    for (const auto& s : places)
        if (s != "inf") out.push_back(parse_prime(s));
    return out;
}

Scenario parse_scenario(const json& j) {
    if (!j.is_object()) throw InputError("scenario must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        static const std::set<std::string> known = {"version", "name", "field", "S",     "V",     "T",
                                                    "checks",  "bits", "order", "params"};
        if (!known.count(key)) throw InputError("unknown scenario key: " + key);
        (void)value;
    }
    Scenario s;
    s.version = j.value("version", 0);
    if (s.version != kScenarioVersion) throw InputError("unsupported scenario version");
    s.name = j.value("name", std::string());
    if (!j.contains("field") || !j.at("field").is_object()) throw InputError("scenario needs a field object");
    const json& f = j.at("field");
    s.field.type = f.value("type", std::string("rational"));
    if (s.field.type == "quad") {
        s.field.discs = {f.at("disc").get<long>()};
    } else if (s.field.type == "multiquad") {
        s.field.discs = f.at("discs").get<std::vector<long>>();
        if (s.field.discs.empty()) throw InputError("multiquad field needs discriminants");
    } else if (s.field.type == "abelian") {
        s.field.modulus = f.at("modulus").get<long>();
        s.field.kernel_generators = f.value("kernel", std::vector<long>{});
    } else if (s.field.type != "rational") {
        throw InputError("unknown field type: " + s.field.type);
    }
    s.S = place_list(j, "S");
    s.V = place_list(j, "V");
    if (j.contains("T")) s.T = j.at("T").get<std::vector<long>>();
    if (!j.contains("checks") || !j.at("checks").is_array()) throw InputError("scenario needs a checks array");
    for (const auto& c : j.at("checks")) {
        std::string name = c.get<std::string>();
        if (!kChecks.count(name)) throw InputError("unknown check: " + name);
        s.checks.push_back(name);
    }
    s.bits = j.value("bits", 128);
    s.order = j.value("order", 2);
    if (s.bits < 32 || s.bits > 4096) throw InputError("bits out of range");
    if (s.order < 1 || s.order > kMaxJetOrder) throw InputError("order out of range");
    if (j.contains("params")) s.params = j.at("params");
    for (const auto& p : s.S)
        if (p != "inf") parse_prime(p);
    for (const auto& p : s.V)
        if (p != "inf") parse_prime(p);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("scenario is not valid JSON: ") + e.what());
    }
    try {
        return parse_scenario(j);
    } catch (const json::exception& e) {
        throw InputError(std::string("scenario schema: ") + e.what());
    }
}

json scenario_to_json(const Scenario& s) {
    json f = {{"type", s.field.type}};
    if (s.field.type == "quad") f["disc"] = s.field.discs.at(0);
    if (s.field.type == "multiquad") f["discs"] = s.field.discs;
    if (s.field.type == "abelian") {
        f["modulus"] = s.field.modulus;
        f["kernel"] = s.field.kernel_generators;
    }
    return {{"version", s.version}, {"name", s.name}, {"field", f},     {"S", s.S},
            {"V", s.V},             {"T", s.T},       {"checks", s.checks}, {"bits", s.bits},
            {"order", s.order},     {"params", s.params}};
}

AbelianRealization realization_of(const FieldSpec& f) {
    if (f.type == "rational") return AbelianRealization::rational();
    if (f.type == "quad" || f.type == "multiquad") return AbelianRealization::multiquadratic(f.discs);
    return AbelianRealization::from_kernel(f.modulus, f.kernel_generators);
}

long quadratic_disc(const FieldSpec& f) {
    if (f.type == "rational") return 1;
    if (f.type == "quad") return f.discs.at(0);
    return 0;
}

namespace {

bool totally_real(const AbelianRealization& r) { return r.modulus <= 2 || r.artin[r.modulus - 1] == 0; }

// Q(zeta_l) lies in K exactly when every a in the kernel of the Artin map is 1 mod l.
bool contains_mu(const AbelianRealization& r, long l) {
    if (l == 2) return true;
    if (r.modulus % l != 0) return false;
    for (long a = 1; a < r.modulus; ++a)
        if (r.artin[a] == 0 && a % l != 1) return false;
    return true;
}

}  // namespace

DatumReport validate_datum(const Scenario& s) {
    DatumReport d;
    const AbelianRealization r = realization_of(s.field);
    std::vector<long> S = finite_places(s.S);
    std::vector<long> V = finite_places(s.V);
    auto fail = [&](const std::string& why) {
        if (d.problem.empty()) d.problem = why;
    };
    for (long q : S)
        if (!is_prime(q)) fail("S contains a non-prime " + std::to_string(q));
    for (long q : s.T)
        if (!is_prime(q)) fail("T contains a non-prime " + std::to_string(q));
    for (long q : s.T)
        if (std::count(S.begin(), S.end(), q)) fail("S and T meet at " + std::to_string(q));
    if (std::set<std::string>(s.S.begin(), s.S.end()).size() != s.S.size()) fail("S has repeated places");

    d.places_complete = has(s.S, "inf");
    for (long q : prime_divisors(r.modulus))
        if (!std::count(S.begin(), S.end(), q)) d.places_complete = false;
    if (!d.places_complete) fail("S must contain infinity and every ramified prime");

    d.v_splits = s.V.size() < s.S.size();
    for (const auto& v : s.V) {
        if (!has(s.S, v)) d.v_splits = false;
        if (v == "inf") {
            if (!totally_real(r)) d.v_splits = false;
        } else if (!r.splits_completely(parse_prime(v))) {
            d.v_splits = false;
        }
    }
    if (!d.v_splits) fail("V must be a proper subset of S of completely split places");

    // Torsion in O_{S,T}^x is a root of unity of prime power order l^k
    // congruent to 1 modulo every prime of T, forcing T inside {l}.
    d.torsion_free = true;
    std::vector<long> ells = {2};
    for (long l : prime_divisors(r.modulus))
        if (l != 2 && contains_mu(r, l)) ells.push_back(l);
    for (long l : ells)
        if (std::all_of(s.T.begin(), s.T.end(), [&](long q) { return q == l; })) d.torsion_free = false;
    if (!d.torsion_free) fail("T does not make the S-units torsion free");

    d.rank_gap = s.S.size() > s.V.size() + 1;
    return d;
}

bool check_congruence_biquadratic(const std::array<long, 4>& a) {
    for (long x : a)
        if (x % 2 == 0) throw InputError("congruence check needs odd integers");
    GroupPtr g = make_group({2, 2});
    CycGR lambda(g, CycloNumber(2));
    for (int chi = 0; chi < 4; ++chi) {
        CycGR e = idempotent(g, chi);
        e.scale(CycloNumber(2, mpq_class(a[chi])));
        lambda += e;
    }
    bool integral = true;
    for (int x = 0; x < 4; ++x) {
        mpq_class c = lambda[x].rational();
        if (c.get_den() % 2 == 0) integral = false;
    }
    long prod = 1;
    for (long x : a) prod = (prod * (((x % 4) + 4) % 4)) % 4;
    if (integral != (prod == 1)) throw ConsistencyError("2-integrality disagrees with the product criterion");
    return integral;
}

namespace {

// Gaussian elimination with the pivot of largest midpoint.
Ball ball_det_real(std::vector<std::vector<Ball>> m) {
    const size_t n = m.size();
    mpfr_prec_t prec = n ? m[0][0].prec() : 128;
    Ball det(1L, prec);
    for (size_t c = 0; c < n; ++c) {
        size_t best = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c].mid_double()) > std::abs(m[best][c].mid_double())) best = r;
        if (m[best][c].contains_zero()) {
            double rad = 0;
            for (size_t r = c; r < n; ++r) rad = std::max(rad, m[r][c].abs_upper());
            throw UndecidedError("determinant pivot is not certified nonzero", rad);
        }
        if (best != c) {
            std::swap(m[best], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            Ball f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace

int check_sign_criterion(const std::vector<std::vector<Ball>>& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw InputError("sign criterion needs a square matrix");
    Ball det = ball_det_real(m);
    int s = det.certified_sign();
    if (s == 0) throw UndecidedError("determinant straddles zero", det.rad_double());
    return s;
}

namespace {

PlaceSets place_sets(const Scenario& s) { return {finite_places(s.S), s.T}; }

int act_on_place(const FieldPlaces& pl, int g, int w) { return g == 0 ? w : pl.sigma[w]; }

void require_quadratic(const Scenario& s) {
    if (quadratic_disc(s.field) == 0) throw UnsupportedError("unit and class group data need Q or a quadratic field");
}

}  // namespace

RubinStarkData rubin_stark_rank_one(const Scenario& s) {
    require_quadratic(s);
    if (s.V.size() != 1) throw InputError("rank-one element needs |V| = 1");
    const long D = quadratic_disc(s.field);
    const PlaceSets st = place_sets(s);
    const mpfr_prec_t prec = s.bits;
    RubinStarkData rs{realization_of(s.field), s_unit_lattice(D, st, prec + 64), {}, BallGR(make_group({}), Ball(prec)),
                      WedgeElement(make_group({}), 0, 0, prec), {}};
    validate_places(rs.realization, st);
    const GroupPtr g = rs.realization.group;
    const FieldPlaces& pl = rs.units.places;

    std::vector<long> rest;
    for (const auto& v : s.S)
        if (!has(s.V, v)) rest.push_back(v == "inf" ? 0 : parse_prime(v));
    if (rest.empty()) throw DatumError("V must be a proper subset of S");
    const int w1 = s.V[0] == "inf" ? 0 : pl.first_above(parse_prime(s.V[0]));
    const int w0 = rest[0] == 0 ? 0 : pl.first_above(rest[0]);

    rs.theta = stickelberger(rs.realization, st, 1, prec);
    const int n = static_cast<int>(pl.size());
    std::vector<Ball> target(n, Ball(0L, prec));
    for (int x = 0; x < g->order(); ++x) {
        target[act_on_place(pl, x, w1)] += rs.theta[x];
        target[act_on_place(pl, x, w0)] -= rs.theta[x];
    }
    // The rows of the regulator map sum to zero, so one column is redundant.
    auto reg = regulator_map(rs.units, prec);
    std::vector<std::vector<Ball>> square;
    std::vector<Ball> rhs;
    for (const auto& row : reg) {
        std::vector<Ball> r;
        for (int w = 0; w < n; ++w)
            if (w != w0) r.push_back(row[w]);
        square.push_back(std::move(r));
    }
    for (int w = 0; w < n; ++w)
        if (w != w0) rhs.push_back(target[w]);
    if (square.size() != rhs.size()) throw ConsistencyError("S-unit rank does not match the number of places");
    rs.coordinates = ball_solve_left(square, rhs);

    const int rank = rs.units.rank();
    rs.cover.lattice = rs.units.lattice;
    for (int k = 0; k < rank; ++k) {
        IntVec e(rank, 0);
        e[k] = 1;
        rs.cover.images.push_back(e);
    }
    rs.eps = WedgeElement(g, rank, 1, prec);
    for (int k = 0; k < rank; ++k) rs.eps.coeff(k)[0] = rs.coordinates[k];
    return rs;
}

GLattice x_lattice(const FieldPlaces& pl, const GroupPtr& g) {
    if (g->order() > 2) throw UnsupportedError("place action implemented for |G| <= 2");
    const int n = static_cast<int>(pl.size());
    GLattice l{g, n - 1, {}};
    for (int i = 0; i < g->rank(); ++i) {
        IntMat a = zero_matrix(n - 1, n - 1);
        for (int j = 0; j + 1 < n; ++j) {
            int img = pl.sigma[j];
            int last = pl.sigma[n - 1];
            if (img != n - 1) a[j][img] += 1;
            if (last != n - 1) a[j][last] -= 1;
        }
        l.action.push_back(a);
    }
    return l;
}

Presentation lattice_presentation(const GLattice& l) {
    const GroupPtr& g = l.group;
    Presentation p{g, l.rank, {}};
    for (int i = 0; i < g->rank(); ++i) {
        std::vector<int> unit(g->rank(), 0);
        unit[i] = 1;
        const int sigma = g->index(unit);
        for (int j = 0; j < l.rank; ++j) {
            std::vector<IntGR> row(l.rank, int_zero(g));
            row[j] += int_basis(g, sigma);
            for (int k = 0; k < l.rank; ++k) row[k][0] -= l.action[i][j][k];
            p.add_relation(row);
        }
    }
    return p;
}

namespace {

struct Context {
    const Scenario& s;
    DatumReport datum;
    std::optional<RubinStarkData> rs;
    std::optional<RayClassData> cl;

    RubinStarkData& rank_one() {
        if (!rs) rs = rubin_stark_rank_one(s);
        return *rs;
    }
    RayClassData& ray() {
        if (!cl) {
            require_quadratic(s);
            cl = ray_class(quadratic_disc(s.field), place_sets(s));
        }
        return *cl;
    }
};

CheckResult named(const std::string& name) {
    CheckResult r;
    r.name = name;
    return r;
}

json ball_json(const Ball& b) { return {{"mid", b.mid_string(30)}, {"rad", b.rad_string()}}; }

json ideal_json(const GIdeal& a) { return json::parse(a.to_json_string()); }

struct ImageData {
    bool integral = true;
    std::optional<GIdeal> ideal;
    double radius = 0;
    json witness = json::object();
};

// The ideal generated by the pairings of the element attached to (S, V, T).
ImageData image_of_element(Context& ctx) {
    ImageData out;
    if (ctx.s.V.empty()) {
        RatGR theta = stickelberger_exact(realization_of(ctx.s.field), place_sets(ctx.s));
        out.witness["theta"] = json::parse(to_json_string(theta));
        IntGR z = int_zero(theta.group_ptr());
        for (int x = 0; x < theta.size(); ++x) {
            if (theta[x].get_den() != 1) out.integral = false;
            z[x] = theta[x].get_num();
        }
        if (out.integral) out.ideal = GIdeal::principal(z);
    } else if (ctx.s.V.size() == 1) {
        RubinStarkData& rs = ctx.rank_one();
        out.radius = rs.eps.max_radius();
        out.witness["theta"] = json::parse(to_json_string(rs.theta));
        json coords = json::array();
        for (const auto& c : rs.coordinates) coords.push_back(ball_json(c));
        out.witness["coordinates"] = coords;
        out.witness["unit_basis"] = json::array();
        for (int i = 0; i < rs.units.rank(); ++i) out.witness["unit_basis"].push_back(rs.units.element(i).to_string());
        ImageResult im = image_lattice(rs.eps, rs.cover);
        out.integral = im.status == Integrality::Integral;
        out.ideal = im.ideal;
    } else {
        throw UnsupportedError("elements are implemented for |V| <= 1");
    }
    if (out.ideal) out.witness["image"] = ideal_json(*out.ideal);
    return out;
}

struct AnnihilationBound {
    bool applies = false;
    long p = 0;
    int m = 0;
    int s_p = 0;
    long bound = 0;
    long c_max = 0;
};

AnnihilationBound annihilation_bound(const Scenario& s, const GroupPtr& g) {
    AnnihilationBound b;
    if (g->order() == 1) return b;
    const long p = g->factors()[0];
    if (!g->is_elementary(static_cast<int>(p))) return b;
    b.applies = true;
    b.p = p;
    b.m = g->rank();
    b.s_p = ray_class(1, place_sets(s)).p_rank(p);
    const long v = static_cast<long>(s.V.size());
    const long base = v - b.s_p + (p - 1) * (b.m - 1);
    b.bound = std::max(v + 2, base + 3);
    b.c_max = static_cast<long>(s.S.size()) - (base + 2);
    return b;
}

json bound_json(const AnnihilationBound& b, const Scenario& s) {
    if (!b.applies) return {{"applies", false}};
    return {{"applies", true}, {"p", b.p}, {"m", b.m}, {"s_p", b.s_p}, {"bound", b.bound},
            {"S_size", s.S.size()}};
}

CheckResult check_lemma41(const Scenario& s) {
    CheckResult r = named("lemma41");
    const int p = s.params.value("p", 2);
    const int m = s.params.value("m", 2);
    if (!is_prime(p) || m < 1 || int_pow(p, m) > kMaxGroupOrder) throw InputError("lemma41 needs prime p and small p^m");
    IntGR x = lemma41_element(p, m);
    HyperplaneSet hs = enumerate_omega_star(p, m);
    const long expected = (int_pow(p, m) - 1) / (p - 1);
    r.witness = {{"p", p}, {"m", m}, {"constant", x[0].get_str()}, {"proper_subgroups", hs.proper_count()}};
    if (static_cast<long>(hs.proper_count()) != expected) {
        r.verdict = Verdict::Fail;
        r.note = "hyperplane count differs from (p^m-1)/(p-1)";
    }
    return r;
}

CheckResult check_congruence(const Scenario& s) {
    CheckResult r = named("congruence");
    std::vector<std::array<long, 4>> cases;
    if (s.params.contains("a")) {
        auto v = s.params.at("a").get<std::vector<long>>();
        if (v.size() != 4) throw InputError("congruence needs four integers");
        cases.push_back({v[0], v[1], v[2], v[3]});
    } else {
        const long mod = s.params.value("modulus", 8L);
        std::vector<long> reps;
        for (long a = 1; a < mod; a += 2) reps.push_back(a);
        for (long a : reps)
            for (long b : reps)
                for (long c : reps)
                    for (long d : reps) cases.push_back({a, b, c, d});
    }
    long integral = 0;
    for (const auto& a : cases)
        if (check_congruence_biquadratic(a)) ++integral;
    r.witness = {{"cases", cases.size()}, {"integral", integral}};
    return r;
}

CheckResult check_sign(const Scenario& s) {
    CheckResult r = named("sign_criterion");
    if (s.field.type != "multiquad") throw InputError("sign criterion needs a multiquadratic field");
    MultiquadUnits mu = multiquad_units(s.field.discs, s.bits);
    const int n = static_cast<int>(mu.units.size());
    std::vector<int> places;
    if (s.params.contains("places")) {
        places = s.params.at("places").get<std::vector<int>>();
    } else {
        for (int w = 1; w <= n; ++w) places.push_back(w);
    }
    if (static_cast<int>(places.size()) != n) throw InputError("sign criterion needs one place per unit");
    std::vector<std::vector<Ball>> m(n);
    for (int u = 0; u < n; ++u)
        for (int w : places) m[u].push_back(mu.logs.at(u).at(w));
    const int sign = check_sign_criterion(m);
    r.radius = ball_det_real(m).rad_double();

    bool invariant = true;
    if (n >= 2) {
        auto swapped = m;
        std::swap(swapped[0], swapped[1]);
        invariant = invariant && check_sign_criterion(swapped) == -sign;
        auto inverted = m;
        for (auto& x : inverted[0]) x = -x;
        invariant = invariant && check_sign_criterion(inverted) == -sign;
    }
    if (n >= 3) {
        auto cycled = m;
        std::rotate(cycled.begin(), cycled.begin() + 1, cycled.begin() + 3);
        invariant = invariant && check_sign_criterion(cycled) == sign;
    }
    json units = json::array();
    for (const auto& u : mu.units) units.push_back(u.to_string());
    r.witness = {{"sign", sign},       {"determinant", ball_json(ball_det_real(m))},
                 {"units", units},     {"places", places},
                 {"permutation_behaviour", invariant}};
    r.inside_hypotheses = false;
    r.note = "constructed instance from subfield units";
    if (!invariant) {
        r.verdict = Verdict::Fail;
        r.note = "sign does not transform as an alternating form";
    }
    return r;
}

CheckResult check_acnf(const Scenario& s) {
    CheckResult r = named("acnf");
    std::vector<long> discs;
    if (s.params.contains("min") || s.params.contains("max")) {
        const long lo = s.params.value("min", -500L);
        const long hi = s.params.value("max", 500L);
        for (long D = lo; D <= hi; ++D)
            if (D != 1 && is_fundamental_discriminant(D)) discs.push_back(D);
    } else {
        const long D = quadratic_disc(s.field);
        if (D == 0 || D == 1) throw InputError("acnf needs a quadratic field or a discriminant range");
        discs.push_back(D);
    }
    const double tol = s.params.value("tolerance", 1e-25);
    const mpfr_prec_t prec = s.bits;
    json failures = json::array();
    long undecided = 0;
    for (long D : discs) {
        AbelianRealization real = AbelianRealization::multiquadratic({D});
        PlaceSets st{prime_divisors(D), {}};
        if (D > 0) {
            CBall lc = leading_coefficient(l_jet(real, 1, st, s.order, prec));
            Ball diff = lc.re - acnf_real_prediction(D, prec);
            r.radius = std::max(r.radius, diff.rad_double());
            if (diff.abs_upper() < tol && lc.im.abs_upper() < tol) continue;
            if (diff.excludes_zero() || lc.im.excludes_zero())
                failures.push_back({{"disc", D}, {"difference", ball_json(diff)}});
            else
                ++undecided;
        } else {
            CycloNumber v = bernoulli_value(real, 1, st);
            mpq_class want = acnf_imaginary_prediction(D);
            if (!v.is_rational() || v.rational() != want)
                failures.push_back({{"disc", D}, {"expected", want.get_str()}});
        }
    }
    r.witness = {{"discriminants", discs.size()}, {"failures", failures}, {"undecided", undecided},
                 {"tolerance", tol}};
    if (!failures.empty())
        r.verdict = Verdict::Fail;
    else if (undecided)
        r.verdict = Verdict::Undecided;
    return r;
}

CheckResult check_rs_integrality(Context& ctx) {
    CheckResult r = named("rs_integrality");
    ImageData im = image_of_element(ctx);
    r.radius = im.radius;
    r.witness = im.witness;
    r.witness["saturation_index"] = 1;
    if (!im.integral) {
        r.verdict = Verdict::Fail;
        r.note = "a pairing certifiably misses Z[G]";
    }
    return r;
}

CheckResult check_fitting_equality(Context& ctx) {
    CheckResult r = named("fitting_equality");
    const Scenario& s = ctx.s;
    r.inside_hypotheses = ctx.datum.rank_gap;
    if (!r.inside_hypotheses) r.note = "|S| <= |V| + 1";
    require_quadratic(s);
    const long D = quadratic_disc(s.field);
    const GroupPtr g = galois_group(D);
    RayClassData& rc = ctx.ray();
    GLattice x = x_lattice(field_places(D, finite_places(s.S)), g);
    Presentation sel = lattice_presentation(x);
    if (rc.order() != 1) {
        if (g->order() != 1) throw UnsupportedError("Selmer presentation with nontrivial class group and G");
        sel = sel.direct_sum(rc.cl.presentation());
    }
    GIdeal fitt = fitting_ideal(sel, static_cast<int>(s.V.size())).sharp();
    ImageData im = image_of_element(ctx);
    r.radius = im.radius;
    r.witness = im.witness;
    r.witness["fitting_sharp"] = ideal_json(fitt);
    r.witness["class_group_order"] = rc.order();
    r.witness["saturation_index"] = 1;
    if (!im.integral || !im.ideal) {
        r.verdict = Verdict::Fail;
        r.note = "element is not integral";
        return r;
    }
    const bool forward = im.ideal->contains(fitt);
    const bool backward = fitt.contains(*im.ideal);
    r.witness["image_contains_fitting"] = forward;
    r.witness["fitting_contains_image"] = backward;
    if (!(forward && backward)) r.verdict = Verdict::Fail;
    return r;
}

bool kills(const IntGR& x, const FiniteGModule& m) {
    const size_t d = m.dim();
    IntMat acc = zero_matrix(d, d);
    for (int g = 0; g < x.size(); ++g) {
        if (x[g] == 0) continue;
        IntMat e = m.element_matrix(g);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) acc[i][j] += x[g] * e[i][j];
    }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            if (acc[i][j] % m.invariants[j] != 0) return false;
    return true;
}

CheckResult check_annihilation(Context& ctx) {
    CheckResult r = named("annihilation");
    const Scenario& s = ctx.s;
    const GroupPtr g = galois_group(quadratic_disc(s.field));
    AnnihilationBound b = annihilation_bound(s, g);
    r.inside_hypotheses = !b.applies || static_cast<long>(s.S.size()) >= b.bound;
    if (!r.inside_hypotheses) r.note = "|S| below the annihilation bound";
    ImageData im = image_of_element(ctx);
    RayClassData& rc = ctx.ray();
    r.radius = im.radius;
    r.witness = im.witness;
    r.witness["bound"] = bound_json(b, s);
    r.witness["class_group"] = {{"invariants", json::array()}, {"order", rc.order()}};
    for (const auto& d : rc.cl.invariants) r.witness["class_group"]["invariants"].push_back(d.get_str());
    if (!im.integral || !im.ideal) {
        r.verdict = Verdict::Fail;
        r.note = "blocked: element is not integral";
        return r;
    }
    for (const auto& x : im.ideal->basis_elements())
        if (!kills(x, rc.cl)) {
            r.verdict = Verdict::Fail;
            r.witness["survivor"] = json::parse(to_json_string(x));
            break;
        }
    return r;
}

CheckResult check_igc(Context& ctx) {
    CheckResult r = named("igc_membership");
    const Scenario& s = ctx.s;
    const GroupPtr g = galois_group(quadratic_disc(s.field));
    AnnihilationBound b = annihilation_bound(s, g);
    long c = 0;
    if (s.params.contains("c")) {
        c = s.params.at("c").get<long>();
        r.inside_hypotheses = b.applies && c <= b.c_max;
    } else {
        c = std::max(0L, b.c_max);
    }
    if (c < 0 || c > 16) throw InputError("augmentation power out of range");
    ImageData im = image_of_element(ctx);
    r.radius = im.radius;
    r.witness = im.witness;
    r.witness["c"] = c;
    r.witness["bound"] = bound_json(b, s);
    if (!im.integral || !im.ideal) {
        r.verdict = Verdict::Fail;
        r.note = "blocked: element is not integral";
        return r;
    }
    GIdeal aug = aug_ideal_power(g, static_cast<int>(c));
    if (!aug.contains(*im.ideal)) r.verdict = Verdict::Fail;
    return r;
}

// Each element enters through its regulator image theta^{(1)} (w_1 - w_0),
// i.e. as a degree-one wedge over a rank-one cover.
CheckResult check_prop42(const Scenario& s) {
    CheckResult r = named("prop42");
    if (s.field.type != "multiquad") throw InputError("prop42 needs a multiquadratic field");
    if (s.V.size() != 1) throw UnsupportedError("prop42 is implemented for |V| = 1");
    const int m = static_cast<int>(s.field.discs.size());
    const PlaceSets st = place_sets(s);
    const mpfr_prec_t prec = s.bits;
    const double tol = s.params.value("tolerance", 1e-20);

    auto element = [&](const AbelianRealization& real) {
        WedgeElement e(real.group, 1, 1, prec);
        e.coeff(0) = stickelberger(real, st, 1, prec);
        return e;
    };
    const AbelianRealization top = realization_of(s.field);
    WedgeElement eps_field = element(top);
    HyperplaneSet hs = enumerate_omega_star(2, m);
    std::vector<WedgeElement> subs;
    json fields = json::array();
    for (size_t i = 0; i < hs.proper_count(); ++i) {
        long prod = 1;
        for (int k = 0; k < m; ++k)
            if (hs.normals[i][k]) prod *= s.field.discs[k];
        const long d = fundamental_part(prod);
        fields.push_back(d);
        subs.push_back(element(AbelianRealization::multiquadratic({d})));
    }
    fields.push_back(1);
    subs.push_back(element(AbelianRealization::rational()));
    ResidualCheck rc = prop42_check(eps_field, subs, 2, m, tol);
    r.radius = rc.residual;
    r.witness = {{"subfields", fields}, {"residual_bound", rc.residual}, {"tolerance", tol},
                 {"theta", json::parse(to_json_string(eps_field.coeff(0)))}};
    r.note = "compared in regulator coordinates";
    if (!rc.holds) r.verdict = Verdict::Fail;
    return r;
}

CheckResult run_check(const std::string& name, Context& ctx) {
    const Scenario& s = ctx.s;
    if (name == "lemma41") return check_lemma41(s);
    if (name == "congruence") return check_congruence(s);
    if (name == "sign_criterion") return check_sign(s);
    if (name == "acnf") return check_acnf(s);
    if (name == "prop42") return check_prop42(s);
    if (name == "rs_integrality") return check_rs_integrality(ctx);
    if (name == "fitting_equality") return check_fitting_equality(ctx);
    if (name == "annihilation") return check_annihilation(ctx);
    if (name == "igc_membership") return check_igc(ctx);
    throw InputError("unknown check: " + name);
}

CheckResult error_result(const std::string& name, Verdict v, int code, const std::string& why) {
    CheckResult r = named(name);
    r.verdict = v;
    r.error_code = code;
    r.note = why;
    return r;
}

}  // namespace

Certificate run(const Scenario& s) {
    Certificate cert;
    cert.scenario = scenario_to_json(s);
    Context ctx{s, {}, std::nullopt, std::nullopt};
    const bool needs_datum =
        std::any_of(s.checks.begin(), s.checks.end(), [](const std::string& c) { return kDatumChecks.count(c) > 0; });
    if (needs_datum) {
        try {
            ctx.datum = validate_datum(s);
        } catch (const InputError& e) {
            ctx.datum.problem = e.what();
        } catch (const CapacityError& e) {
            ctx.datum.problem = e.what();
        }
    }
    cert.datum = ctx.datum;
    for (const auto& name : s.checks) {
        if (needs_datum && kDatumChecks.count(name) && !ctx.datum.problem.empty()) {
            cert.checks.push_back(error_result(name, Verdict::Error, kExitDatum, ctx.datum.problem));
            continue;
        }
        try {
            cert.checks.push_back(run_check(name, ctx));
        } catch (const UndecidedError& e) {
            CheckResult r = error_result(name, Verdict::Undecided, 0, e.what());
            r.radius = e.radius();
            cert.checks.push_back(r);
        } catch (const PrecisionError& e) {
            CheckResult r = error_result(name, Verdict::Undecided, 0, e.what());
            r.radius = std::ldexp(1.0, -s.bits / 2);
            cert.checks.push_back(r);
        } catch (const UnresolvedOrderError& e) {
            cert.checks.push_back(error_result(name, Verdict::Undecided, 0, e.what()));
        } catch (const DatumError& e) {
            cert.checks.push_back(error_result(name, Verdict::Error, kExitDatum, e.what()));
        } catch (const UnsupportedError& e) {
            cert.checks.push_back(error_result(name, Verdict::Unsupported, kExitCapacity, e.what()));
        } catch (const CapacityError& e) {
            cert.checks.push_back(error_result(name, Verdict::Error, kExitCapacity, e.what()));
        } catch (const InputError& e) {
            cert.checks.push_back(error_result(name, Verdict::Error, kExitInput, e.what()));
        } catch (const ConsistencyError& e) {
            CheckResult r = error_result(name, Verdict::Fail, 0, e.what());
            cert.checks.push_back(r);
        } catch (const WrongOrderError& e) {
            cert.checks.push_back(error_result(name, Verdict::Error, kExitDatum, e.what()));
        }
    }
    return cert;
}

int Certificate::exit_code() const {
    bool input = false, datum = false, fail = false, capacity = false, undecided = false;
    for (const auto& c : checks) {
        if (c.verdict == Verdict::Fail) fail = true;
        if (c.verdict == Verdict::Undecided) undecided = true;
        if (c.verdict == Verdict::Error || c.verdict == Verdict::Unsupported) {
            input = input || c.error_code == kExitInput;
            datum = datum || c.error_code == kExitDatum;
            capacity = capacity || c.error_code == kExitCapacity;
        }
    }
    if (input) return kExitInput;
    if (datum) return kExitDatum;
    if (fail) return kExitFail;
    if (capacity) return kExitCapacity;
    if (undecided) return kExitUndecided;
    return kExitOk;
}

json Certificate::to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks) {
        json entry = {{"name", c.name},     {"verdict", to_string(c.verdict)}, {"radius", c.radius},
                      {"inside_hypotheses", c.inside_hypotheses}, {"note", c.note}, {"witness", c.witness}};
        checks_json.push_back(entry);
    }
    json d = {{"places_complete", datum.places_complete}, {"v_splits", datum.v_splits}, {"torsion_free", datum.torsion_free}, {"rank_gap", datum.rank_gap},
              {"problem", datum.problem}};
    return {{"certificate_version", kScenarioVersion}, {"scenario", scenario},      {"datum", d},
            {"checks", checks_json},                   {"exit_code", exit_code()}};
}

std::string Certificate::summary() const {
    std::ostringstream out;
    out << scenario.value("name", std::string("scenario")) << "\n";
    if (!datum.problem.empty()) out << "  datum: " << datum.problem << "\n";
    for (const auto& c : checks) {
        out << "  " << c.name << ": " << to_string(c.verdict);
        if (c.radius > 0) out << " (radius " << c.radius << ")";
        if (!c.inside_hypotheses) out << " [exploratory]";
        if (!c.note.empty()) out << " - " << c.note;
        out << "\n";
    }
    out << "  exit " << exit_code() << "\n";
    return out.str();
}

}  // namespace starklab
