#include <gtest/gtest.h>

#include "starklab/verify.hpp"

using namespace starklab;
using nlohmann::json;

namespace {

Scenario scenario(const std::string& text) { return parse_scenario(json::parse(text)); }

const CheckResult& only(const Certificate& c) {
    EXPECT_EQ(c.checks.size(), 1u);
    return c.checks.at(0);
}

}  // namespace

TEST(Scenario, RoundTripsThroughJson) {
    Scenario s = scenario(R"({"version":1,"name":"x","field":{"type":"quad","disc":-23},
        "S":["inf",23],"T":[3],"checks":["annihilation"],"bits":160})");
    Scenario t = parse_scenario(scenario_to_json(s));
    EXPECT_EQ(scenario_to_json(t), scenario_to_json(s));
    EXPECT_EQ(t.bits, 160);
    EXPECT_EQ(finite_places(t.S), (std::vector<long>{23}));
}

TEST(Scenario, SchemaViolationsAreInputErrors) {
    EXPECT_THROW(scenario(R"({"version":2,"field":{"type":"rational"},"checks":[]})"), InputError);
    EXPECT_THROW(scenario(R"({"version":1,"field":{"type":"rational"},"checks":["nope"]})"), InputError);
    EXPECT_THROW(scenario(R"({"version":1,"field":{"type":"rational"},"checks":[],"extra":1})"), InputError);
    EXPECT_THROW(scenario(R"({"version":1,"field":{"type":"cubic"},"checks":[]})"), InputError);
    EXPECT_THROW(scenario(R"({"version":1,"field":{"type":"rational"},"S":["inf","x"],"checks":[]})"), InputError);
}

TEST(Datum, Conditions) {
    auto d = [](const std::string& text) { return validate_datum(scenario(text)); };
    DatumReport ok = d(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5,2],"V":["inf"],"T":[3],"checks":[]})");
    EXPECT_TRUE(ok.places_complete && ok.v_splits && ok.torsion_free && ok.rank_gap);
    EXPECT_TRUE(ok.problem.empty());

    EXPECT_FALSE(d(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf"],"T":[3],"checks":[]})").places_complete);
    // 2 is inert in Q(sqrt 5); infinity does not split in Q(sqrt -7).
    EXPECT_FALSE(d(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5,2],"V":[2],"T":[3],"checks":[]})").v_splits);
    EXPECT_FALSE(d(R"({"version":1,"field":{"type":"quad","disc":-7},"S":["inf",7],"V":["inf"],"T":[3],"checks":[]})").v_splits);
    EXPECT_FALSE(d(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5],"V":["inf","5"],"T":[3],"checks":[]})").v_splits);

    EXPECT_FALSE(d(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5],"T":[2],"checks":[]})").torsion_free);
    EXPECT_FALSE(d(R"({"version":1,"field":{"type":"quad","disc":-3},"S":["inf",3],"T":[],"checks":[]})").torsion_free);
    EXPECT_TRUE(d(R"({"version":1,"field":{"type":"quad","disc":-3},"S":["inf",3],"T":[7],"checks":[]})").torsion_free);
    EXPECT_TRUE(d(R"({"version":1,"field":{"type":"quad","disc":-3},"S":["inf",3],"T":[2,7],"checks":[]})").torsion_free);
    // (Z/7)^x / <2> realizes Q(sqrt -7); T = {2} leaves -1 in the units.
    EXPECT_FALSE(d(R"({"version":1,"field":{"type":"abelian","modulus":7,"kernel":[2]},"S":["inf",7],"T":[2],"checks":[]})").torsion_free);

    DatumReport meet = d(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5],"T":[5],"checks":[]})");
    EXPECT_FALSE(meet.problem.empty());
}

TEST(Congruence, Examples) {
    EXPECT_TRUE(check_congruence_biquadratic({1, 1, 1, 1}));
    EXPECT_FALSE(check_congruence_biquadratic({1, 1, 1, -1}));
    EXPECT_THROW(check_congruence_biquadratic({1, 2, 1, 1}), InputError);
}

TEST(Congruence, MatchesDirectCharacterSums) {
    // Characters of (Z/2)^2 as sign tables, indexed like elements.
    const int chi[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    for (long a0 : {1, 3, 5, 7})
        for (long a1 : {-1, 1, 3, -3})
            for (long a2 : {1, -5, 7, 3})
                for (long a3 : {-7, 1, 5, -1}) {
                    std::array<long, 4> a = {a0, a1, a2, a3};
                    bool direct = true;
                    for (int x = 0; x < 4; ++x) {
                        long sum = 0;
                        for (int c = 0; c < 4; ++c) sum += a[c] * chi[c][x];
                        if (sum % 4 != 0) direct = false;
                    }
                    EXPECT_EQ(check_congruence_biquadratic(a), direct);
                }
}

TEST(Sign, AlternatingBehaviour) {
    const mpfr_prec_t prec = 128;
    std::vector<std::vector<Ball>> m(3, std::vector<Ball>(3, Ball(0L, prec)));
    for (int i = 0; i < 3; ++i) m[i][i] = Ball(long(i + 1), prec);
    EXPECT_EQ(check_sign_criterion(m), 1);
    std::swap(m[0], m[2]);
    EXPECT_EQ(check_sign_criterion(m), -1);
    std::vector<std::vector<Ball>> z = {{Ball::from_decimal("0", "1e-10", prec)}};
    EXPECT_THROW(check_sign_criterion(z), UndecidedError);
    EXPECT_THROW(check_sign_criterion({{Ball(1L, prec), Ball(1L, prec)}}), InputError);
}

TEST(RubinStark, RationalFieldMatchesExplicitUnit) {
    // L_{S,T}'(0) = (1-5)(-1/2) log 2 = 2 log 2, and O_{S,T}^x = <-4>, whose
    // regulator row is (-log 4, log 4); the element is therefore (-4)^{-1}.
    Scenario s = scenario(R"({"version":1,"field":{"type":"rational"},"S":["inf",2],"V":["inf"],"T":[5],"checks":[]})");
    RubinStarkData rs = rubin_stark_rank_one(s);
    ASSERT_EQ(rs.units.rank(), 1);
    auto c = rs.coordinates.at(0).certify_integer();
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(*c, -1);
    Ball two_log2 = Ball(2L, 128) * Ball::log_of(2, 128);
    EXPECT_LT((rs.theta[0] - two_log2).abs_upper(), 1e-30);
    EXPECT_TRUE(bidual_member(rs.eps, rs.cover));
}

TEST(RubinStark, RealQuadraticCoordinatesAreIntegers) {
    for (const char* text : {
             R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5],"V":["inf"],"T":[3],"checks":[]})",
             R"({"version":1,"field":{"type":"quad","disc":13},"S":["inf",13],"V":["inf"],"T":[3],"checks":[]})",
             R"({"version":1,"field":{"type":"quad","disc":12},"S":["inf",2,3],"V":["inf"],"T":[5],"checks":[]})"}) {
        RubinStarkData rs = rubin_stark_rank_one(scenario(text));
        for (const auto& c : rs.coordinates) EXPECT_TRUE(c.certify_integer().has_value()) << text;
    }
}

TEST(RubinStark, FailingTorsionConditionIsDatumError) {
    Scenario s = scenario(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5],"V":["inf"],"T":[2],
        "checks":["rs_integrality"]})");
    EXPECT_THROW(rubin_stark_rank_one(s), DatumError);
    Certificate c = run(s);
    EXPECT_EQ(c.exit_code(), kExitDatum);
}

TEST(Lattices, PlaceLatticeAndPresentation) {
    FieldPlaces pl = field_places(5, {5, 2});
    GroupPtr g = galois_group(5);
    GLattice x = x_lattice(pl, g);
    EXPECT_EQ(x.rank, 3);
    EXPECT_TRUE(x.is_valid());
    Presentation p = lattice_presentation(x);
    EXPECT_EQ(p.n_generators, 3);
    // Fitt^0 of a lattice of positive rank is zero; Fitt^3 is the unit ideal.
    EXPECT_TRUE(fitting_ideal(p, 0).is_zero());
    EXPECT_EQ(fitting_ideal(p, 3), GIdeal::unit(g));
    // X for Q with one finite place is Z with trivial action.
    GLattice xq = x_lattice(field_places(1, {2}), galois_group(1));
    EXPECT_EQ(xq.rank, 1);
    EXPECT_EQ(fitting_ideal(lattice_presentation(xq), 1), GIdeal::unit(galois_group(1)));
}

TEST(Run, ImaginaryQuadraticStickelberger) {
    Certificate c = run(scenario(R"({"version":1,"name":"m23","field":{"type":"quad","disc":-23},
        "S":["inf",23],"T":[3],"checks":["annihilation"]})"));
    const CheckResult& r = only(c);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.witness["theta"]["coeffs"], json::parse(R"(["-3","3"])"));
    EXPECT_EQ(c.exit_code(), kExitOk);
}

TEST(Run, CheapChecks) {
    Certificate c = run(scenario(R"({"version":1,"field":{"type":"rational"},
        "checks":["lemma41","congruence"],"params":{"p":2,"m":3,"modulus":4}})"));
    ASSERT_EQ(c.checks.size(), 2u);
    EXPECT_EQ(c.checks[0].verdict, Verdict::Pass);
    EXPECT_EQ(c.checks[1].verdict, Verdict::Pass);
    EXPECT_EQ(c.checks[1].witness["cases"], 16);
    EXPECT_EQ(c.checks[1].witness["integral"], 8);
}

TEST(Run, RankGapGatingIsRecorded) {
    Certificate c = run(scenario(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5],"V":["inf"],"T":[3],
        "checks":["fitting_equality"]})"));
    EXPECT_FALSE(only(c).inside_hypotheses);
    Certificate d = run(scenario(R"({"version":1,"field":{"type":"quad","disc":5},"S":["inf",5,2],"V":["inf"],"T":[3],
        "checks":["fitting_equality"]})"));
    EXPECT_TRUE(only(d).inside_hypotheses);
    EXPECT_EQ(only(d).verdict, Verdict::Pass);
}

TEST(Run, UnsupportedShapeIsReported) {
    Certificate c = run(scenario(R"({"version":1,"field":{"type":"quad","disc":-23},"S":["inf",23],"T":[3],
        "checks":["fitting_equality"]})"));
    EXPECT_EQ(only(c).verdict, Verdict::Unsupported);
    EXPECT_EQ(c.exit_code(), kExitCapacity);
}

TEST(Run, BiquadraticSubfieldDecomposition) {
    Certificate c = run(scenario(R"({"version":1,"field":{"type":"multiquad","discs":[8,12]},"S":["inf",2,3],
        "V":["inf"],"T":[5],"checks":["prop42"]})"));
    EXPECT_EQ(only(c).verdict, Verdict::Pass);
    EXPECT_LT(only(c).radius, 1e-20);
}

TEST(Certificate, ExitCodePriorities) {
    Certificate c;
    EXPECT_EQ(c.exit_code(), kExitOk);
    CheckResult u;
    u.verdict = Verdict::Undecided;
    c.checks.push_back(u);
    EXPECT_EQ(c.exit_code(), kExitUndecided);
    CheckResult f;
    f.verdict = Verdict::Fail;
    c.checks.push_back(f);
    EXPECT_EQ(c.exit_code(), kExitFail);
    CheckResult e;
    e.verdict = Verdict::Error;
    e.error_code = kExitDatum;
    c.checks.push_back(e);
    EXPECT_EQ(c.exit_code(), kExitDatum);
    json j = c.to_json();
    EXPECT_EQ(j["exit_code"], kExitDatum);
    EXPECT_EQ(j["checks"][1]["verdict"], "fail");
}
