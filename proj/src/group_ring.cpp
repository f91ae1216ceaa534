#include "starklab/group_ring.hpp"

#include <json.hpp>

namespace starklab {

using nlohmann::json;

IntGR int_zero(GroupPtr g) { return IntGR(std::move(g), mpz_class(0)); }
IntGR int_basis(GroupPtr g, int sigma) { return IntGR::basis(std::move(g), sigma, mpz_class(0)); }

RatGR to_rat(const IntGR& x) {
    RatGR r(x.group_ptr(), mpq_class(0));
    for (int i = 0; i < x.size(); ++i) r[i] = x[i];
    return r;
}

CycGR to_cyc(const RatGR& x, int e) {
    CycGR r(x.group_ptr(), CycloNumber(e));
    for (int i = 0; i < x.size(); ++i) r[i] = CycloNumber(e, x[i]);
    return r;
}

CycGR to_cyc(const IntGR& x, int e) { return to_cyc(to_rat(x), e); }

BallGR to_ball(const RatGR& x, mpfr_prec_t prec) {
    BallGR r(x.group_ptr(), Ball(prec));
    for (int i = 0; i < x.size(); ++i) r[i] = Ball(x[i], prec);
    return r;
}

BallGR to_ball(const IntGR& x, mpfr_prec_t prec) { return to_ball(to_rat(x), prec); }

CBallGR to_cball(const CycGR& x, mpfr_prec_t prec) {
    CBallGR r(x.group_ptr(), CBall(prec));
    for (int i = 0; i < x.size(); ++i) r[i] = x[i].to_cball(prec);
    return r;
}

CBallGR to_cball(const BallGR& x) {
    const mpfr_prec_t prec = x.zero().prec();
    CBallGR r(x.group_ptr(), CBall(prec));
    for (int i = 0; i < x.size(); ++i) r[i] = CBall(x[i]);
    return r;
}

BallGR real_part(const CBallGR& x) {
    const mpfr_prec_t prec = x.zero().prec();
    BallGR r(x.group_ptr(), Ball(prec));
    for (int i = 0; i < x.size(); ++i) {
        if (!x[i].im.contains_zero())
            throw UndecidedError("group ring coefficient has nonzero imaginary part", x[i].im.rad_double());
        r[i] = x[i].re;
        r[i].add_error(x[i].im.abs_upper());
    }
    return r;
}

IntGR norm_element_of(GroupPtr g, const std::vector<bool>& bits) {
    IntGR r = int_zero(g);
    for (int i = 0; i < g->order(); ++i)
        if (bits[i]) r[i] = 1;
    return r;
}

IntGR norm_element(GroupPtr g, const std::vector<int>& gens) {
    auto bits = g->subgroup(gens);
    return norm_element_of(std::move(g), bits);
}

CycGR idempotent(GroupPtr g, int chi) {
    const int e = g->exponent();
    const mpq_class inv_order(1, g->order());
    CycGR r(g, CycloNumber(e));
    for (int s = 0; s < g->order(); ++s)
        r[s] = CycloNumber::root_of_unity(e, -g->char_exponent(chi, s)) * inv_order;
    return r;
}

CycloNumber character_value(const CycGR& x, int chi) {
    const auto& g = x.group();
    const int e = g.exponent();
    CycloNumber acc(e);
    for (int s = 0; s < g.order(); ++s) {
        if (x[s].is_zero()) continue;
        acc += x[s] * CycloNumber::root_of_unity(e, g.char_exponent(chi, s));
    }
    return acc;
}

CycloNumber character_value(const IntGR& x, int chi) {
    return character_value(to_cyc(x, x.group().exponent()), chi);
}

CBall character_value(const CBallGR& x, int chi) {
    const auto& g = x.group();
    const mpfr_prec_t prec = x.zero().prec();
    CBall acc(prec);
    for (int s = 0; s < g.order(); ++s)
        acc += x[s] * CBall::root_of_unity(g.char_exponent(chi, s), g.exponent(), prec);
    return acc;
}

CBall character_value(const BallGR& x, int chi) { return character_value(to_cball(x), chi); }

CBallGR from_components(GroupPtr g, const std::vector<CBall>& comps) {
    if (static_cast<int>(comps.size()) != g->order()) throw InputError("one component per character required");
    const mpfr_prec_t prec = comps.empty() ? 128 : comps[0].prec();
    CBallGR r(g, CBall(prec));
    const Ball inv_order(mpq_class(1, g->order()), prec);
    for (int s = 0; s < g->order(); ++s) {
        CBall acc(prec);
        for (int chi = 0; chi < g->order(); ++chi)
            acc += comps[chi] * CBall::root_of_unity(-g->char_exponent(chi, s), g->exponent(), prec);
        r[s] = acc * inv_order;
    }
    return r;
}

CBallGR rho_aff(int q, const std::vector<CBall>& psi_values) {
    if (q < 2) throw InputError("q must be a prime power >= 2");
    int p = 2;
    while (q % p != 0) ++p;
    int k = 0;
    for (int t = q; t > 1; t /= p) {
        if (t % p != 0) throw InputError("q must be a prime power");
        ++k;
    }
    if (static_cast<int>(psi_values.size()) != q) throw InputError("expected q-1 linear values plus the degree q-1 value");
    auto g = make_group(std::vector<int>(k, p));
    const CBall& trivial = psi_values.front();
    const CBall& nonlinear = psi_values.back();
    std::vector<CBall> comps;
    for (int chi = 0; chi < g->order(); ++chi) comps.push_back(chi == 0 ? trivial : nonlinear);
    return from_components(g, comps);
}

namespace {

std::string rat_str(const mpq_class& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

mpq_class parse_rat(const json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return q;
}

json header(const AbelianGroup& g, const std::string& ring) {
    return json{{"group", g.factors()}, {"ring", ring}};
}

}  // namespace

std::string to_json_string(const IntGR& x) {
    json j = header(x.group(), "int");
    for (const auto& c : x.coeffs()) j["coeffs"].push_back(c.get_str());
    return j.dump();
}

std::string to_json_string(const RatGR& x) {
    json j = header(x.group(), "rat");
    for (const auto& c : x.coeffs()) j["coeffs"].push_back(rat_str(c));
    return j.dump();
}

std::string to_json_string(const CycGR& x) {
    json j = header(x.group(), "cyc:" + std::to_string(x.zero().order()));
    for (const auto& c : x.coeffs()) {
        json poly = json::array();
        for (const auto& a : c.coeffs()) poly.push_back(rat_str(a));
        j["coeffs"].push_back(poly);
    }
    return j.dump();
}

std::string to_json_string(const BallGR& x) {
    json j = header(x.group(), "ball:" + std::to_string(x.zero().prec()));
    for (const auto& c : x.coeffs()) j["coeffs"].push_back({{"mid", c.mid_string()}, {"rad", c.rad_string()}});
    return j.dump();
}

namespace {

json parse_checked(const std::string& s, const std::string& ring_prefix) {
    json j = json::parse(s);
    if (!j.contains("group") || !j.contains("ring") || !j.contains("coeffs"))
        throw InputError("group ring JSON needs group, ring and coeffs");
    if (j["ring"].get<std::string>().rfind(ring_prefix, 0) != 0) throw InputError("unexpected coefficient ring tag");
    return j;
}

}  // namespace

IntGR int_from_json_string(const std::string& s) {
    json j = parse_checked(s, "int");
    auto g = make_group(j["group"].get<std::vector<int>>());
    if (static_cast<int>(j["coeffs"].size()) != g->order()) throw InputError("coefficient count must equal |G|");
    IntGR x = int_zero(g);
    for (int i = 0; i < g->order(); ++i) {
        const auto& c = j["coeffs"][i];
        x[i] = c.is_string() ? mpz_class(c.get<std::string>()) : mpz_class(c.get<long>());
    }
    return x;
}

RatGR rat_from_json_string(const std::string& s) {
    json j = parse_checked(s, "rat");
    auto g = make_group(j["group"].get<std::vector<int>>());
    if (static_cast<int>(j["coeffs"].size()) != g->order()) throw InputError("coefficient count must equal |G|");
    RatGR x(g, mpq_class(0));
    for (int i = 0; i < g->order(); ++i) x[i] = parse_rat(j["coeffs"][i]);
    return x;
}

BallGR ball_from_json_string(const std::string& s) {
    json j = parse_checked(s, "ball:");
    auto g = make_group(j["group"].get<std::vector<int>>());
    if (static_cast<int>(j["coeffs"].size()) != g->order()) throw InputError("coefficient count must equal |G|");
    const mpfr_prec_t prec = std::stol(j["ring"].get<std::string>().substr(5));
    BallGR x(g, Ball(prec));
    for (int i = 0; i < g->order(); ++i)
        x[i] = Ball::from_decimal(j["coeffs"][i]["mid"].get<std::string>(), j["coeffs"][i]["rad"].get<std::string>(), prec);
    return x;
}

}  // namespace starklab
