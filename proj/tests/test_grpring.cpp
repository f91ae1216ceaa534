#include <gtest/gtest.h>

#include <random>

#include "starklab/group_ring.hpp"
#include "starklab/zideal.hpp"

using namespace starklab;

namespace {

IntGR random_int(GroupPtr g, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-5, 5);
    IntGR x = int_zero(g);
    for (int i = 0; i < g->order(); ++i) x[i] = d(rng);
    return x;
}

RatGR random_rat(GroupPtr g, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-7, 7);
    std::uniform_int_distribution<int> den(1, 5);
    RatGR x(g, mpq_class(0));
    for (int i = 0; i < g->order(); ++i) {
        x[i] = mpq_class(d(rng), den(rng));
        x[i].canonicalize();
    }
    return x;
}

CycGR random_cyc(GroupPtr g, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-4, 4);
    const int e = g->exponent();
    CycGR x(g, CycloNumber(e));
    for (int i = 0; i < g->order(); ++i)
        for (int t = 0; t < 3; ++t) x[i] += CycloNumber::root_of_unity(e, d(rng)) * mpq_class(d(rng));
    return x;
}

// Independent convolution: adds tuples componentwise instead of using the table.
IntGR naive_product(const IntGR& a, const IntGR& b) {
    const auto& g = a.group();
    IntGR out = int_zero(a.group_ptr());
    for (int i = 0; i < g.order(); ++i)
        for (int j = 0; j < g.order(); ++j) {
            auto ti = g.element(i);
            auto tj = g.element(j);
            for (int k = 0; k < g.rank(); ++k) ti[k] = (ti[k] + tj[k]) % g.factors()[k];
            out[g.index(ti)] += a[i] * b[j];
        }
    return out;
}

CycloNumber zeta3(long t) { return CycloNumber::root_of_unity(3, t); }

}  // namespace

TEST(NormElement, FullKleinGroup) {
    auto g = make_group({2, 2});
    IntGR n = norm_element(g, {1, 2});
    for (int i = 0; i < 4; ++i) EXPECT_EQ(n[i], 1);
}

TEST(NormElement, TrivialSubgroupIsOne) {
    auto g = make_group({2, 2});
    EXPECT_EQ(norm_element(g, {0}), IntGR::one(g, 0));
}

TEST(NormElement, CyclicOfOrderThree) {
    auto g = make_group({3});
    IntGR n = norm_element(g, {1});
    EXPECT_EQ(n.augmentation(), 3);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(n[i], 1);
}

TEST(NormElement, GeneratorOutOfRange) {
    auto g = make_group({2, 2});
    EXPECT_THROW(g->checked_index({0, 2}), InputError);
    EXPECT_THROW(norm_element(g, {7}), InputError);
}

TEST(Idempotent, TrivialCharacterIsQuarterNorm) {
    auto g = make_group({2, 2});
    CycGR e1 = idempotent(g, 0);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(e1[i] == CycloNumber(g->exponent(), mpq_class(1, 4)));
}

TEST(Idempotent, CyclicTwoNontrivial) {
    auto g = make_group({2});
    CycGR e = idempotent(g, 1);
    EXPECT_EQ(e[0].rational(), mpq_class(1, 2));
    EXPECT_EQ(e[1].rational(), mpq_class(-1, 2));
}

TEST(Idempotent, CyclicThreeOrderThreeCharacter) {
    auto g = make_group({3});
    CycGR e = idempotent(g, 1);
    EXPECT_TRUE(e[0] == zeta3(0) * mpq_class(1, 3));
    EXPECT_TRUE(e[1] == zeta3(2) * mpq_class(1, 3));
    EXPECT_TRUE(e[2] == zeta3(1) * mpq_class(1, 3));
    EXPECT_EQ(e * e, e);
}

TEST(Idempotent, OrthogonalAndComplete) {
    for (auto factors : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {6}, {2, 4}, {3, 3}, {2, 2, 2}, {3, 3, 3}}) {
        auto g = make_group(factors);
        std::vector<CycGR> es;
        for (int chi = 0; chi < g->order(); ++chi) es.push_back(idempotent(g, chi));
        CycGR sum(g, CycloNumber(g->exponent()));
        for (int a = 0; a < g->order(); ++a) {
            sum += es[a];
            for (int b = 0; b < g->order(); ++b) {
                CycGR prod = es[a] * es[b];
                if (a == b) EXPECT_EQ(prod, es[a]);
                else EXPECT_EQ(prod, CycGR(g, CycloNumber(g->exponent())));
            }
        }
        EXPECT_EQ(sum, to_cyc(IntGR::one(g, 0), g->exponent()));
    }
}

TEST(Involution, OrderTwoFixed) {
    auto g = make_group({2});
    IntGR x = int_zero(g);
    x[0] = 2;
    x[1] = 3;
    EXPECT_EQ(x.sharp(), x);
}

TEST(Involution, InvertsOnCyclicThree) {
    auto g = make_group({3});
    EXPECT_EQ(int_basis(g, 1).sharp(), int_basis(g, 2));
}

TEST(Involution, AugmentationOfNormSquare) {
    std::mt19937 rng(7);
    auto g = make_group({3, 3});
    for (int k = 0; k < 20; ++k) {
        IntGR x = random_int(g, rng);
        EXPECT_EQ((x * x.sharp()).augmentation(), x.augmentation() * x.augmentation());
        EXPECT_EQ(x.sharp().sharp(), x);
        IntGR y = random_int(g, rng);
        EXPECT_EQ((x * y).sharp(), x.sharp() * y.sharp());
    }
}

TEST(AugIdealPower, ZeroIsWholeRing) {
    auto g = make_group({2, 2});
    EXPECT_EQ(aug_ideal_power(g, 0), GIdeal::unit(g));
}

TEST(AugIdealPower, SquareForCyclicTwo) {
    auto g = make_group({2});
    IntGR two_aug = int_zero(g);
    two_aug[0] = 2;
    two_aug[1] = -2;
    EXPECT_EQ(aug_ideal_power(g, 2), GIdeal::from_generators(g, {two_aug}));
}

TEST(AugIdealPower, PthPowerInsidePTimesAug) {
    for (int p : {2, 3, 5}) {
        auto g = make_group({p});
        GIdeal pi = GIdeal::unit(g).scaled(p) * aug_ideal_power(g, 1);
        EXPECT_TRUE(pi.contains(aug_ideal_power(g, p))) << p;
        for (int c = 0; c < p; ++c) EXPECT_TRUE(aug_ideal_power(g, c).contains(aug_ideal_power(g, c + 1)));
    }
}

TEST(RhoAff, AllOnesIsIdentity) {
    for (int q : {2, 3, 4, 5}) {
        std::vector<CBall> vals(q, CBall(Ball(1L, 128), Ball(0L, 128)));
        CBallGR r = rho_aff(q, vals);
        for (int i = 0; i < r.size(); ++i) {
            EXPECT_TRUE(r[i].re.contains(i == 0 ? 1 : 0));
            EXPECT_TRUE(r[i].im.contains(0));
        }
    }
}

TEST(RhoAff, ShapeTrivialPlusComplement) {
    const int q = 5;
    std::vector<CBall> vals;
    vals.emplace_back(Ball(3L, 128), Ball(0L, 128));  // a
    for (int i = 1; i < q - 1; ++i) vals.emplace_back(Ball(100L + i, 128), Ball(0L, 128));
    vals.emplace_back(Ball(7L, 128), Ball(0L, 128));  // b
    CBallGR r = rho_aff(q, vals);
    // a e_1 + b (1 - e_1) = b + (a - b)/q N_G
    for (int i = 0; i < q; ++i) {
        mpq_class expect = mpq_class(3 - 7, q) + (i == 0 ? 7 : 0);
        EXPECT_TRUE(r[i].re.contains(expect)) << i;
    }
}

TEST(RhoAff, QEqualsTwoIsCharacterwise) {
    std::vector<CBall> vals{CBall(Ball(3L, 128), Ball(0L, 128)), CBall(Ball(5L, 128), Ball(0L, 128))};
    CBallGR r = rho_aff(2, vals);
    // 3 e_1 + 5 e_chi = 4 - sigma
    EXPECT_TRUE(r[0].re.contains(4));
    EXPECT_TRUE(r[1].re.contains(-1));
    EXPECT_THROW(rho_aff(3, vals), InputError);
}

TEST(Character, Multiplicative) {
    for (auto factors : std::vector<std::vector<int>>{{2, 2, 2}, {4, 4}, {2, 6}, {8, 8}}) {
        auto g = make_group(factors);
        const int e = g->exponent();
        int count = 0;
        for (int chi = 0; chi < g->order(); ++chi, ++count)
            for (int a = 0; a < g->order(); ++a)
                for (int b = 0; b < g->order(); ++b)
                    ASSERT_EQ(g->char_exponent(chi, g->add(a, b)),
                              (g->char_exponent(chi, a) + g->char_exponent(chi, b)) % e);
        EXPECT_EQ(count, g->order());
        for (int chi = 0; chi < g->order(); ++chi)
            for (int a = 0; a < g->order(); ++a)
                EXPECT_EQ((g->char_exponent(chi, a) + g->char_exponent(g->char_inv(chi), a)) % e, 0);
    }
}

TEST(RingAxioms, IntAgainstNaiveConvolution) {
    std::mt19937 rng(1);
    for (auto factors : std::vector<std::vector<int>>{{2}, {4}, {2, 2}, {3, 3}, {2, 8}, {4, 4}}) {
        auto g = make_group(factors);
        for (int k = 0; k < 10; ++k) {
            IntGR a = random_int(g, rng), b = random_int(g, rng), c = random_int(g, rng);
            EXPECT_EQ(a * b, naive_product(a, b));
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ((a * b).augmentation(), a.augmentation() * b.augmentation());
        }
    }
}

TEST(RingAxioms, RationalAndCyclotomic) {
    std::mt19937 rng(2);
    for (auto factors : std::vector<std::vector<int>>{{3}, {4}, {2, 6}, {12}}) {
        auto g = make_group(factors);
        for (int k = 0; k < 5; ++k) {
            RatGR a = random_rat(g, rng), b = random_rat(g, rng), c = random_rat(g, rng);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            CycGR x = random_cyc(g, rng), y = random_cyc(g, rng), z = random_cyc(g, rng);
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x * y, y * x);
            EXPECT_EQ(x * (y + z), x * y + x * z);
        }
    }
}

TEST(RingAxioms, BallsEncloseExactResults) {
    std::mt19937 rng(3);
    for (auto factors : std::vector<std::vector<int>>{{2, 2}, {5}, {3, 3}}) {
        auto g = make_group(factors);
        for (int k = 0; k < 5; ++k) {
            RatGR a = random_rat(g, rng), b = random_rat(g, rng), c = random_rat(g, rng);
            RatGR exact = (a * b + c) * a - b;
            for (mpfr_prec_t prec : {24, 53, 128}) {
                BallGR ba = to_ball(a, prec), bb = to_ball(b, prec), bc = to_ball(c, prec);
                BallGR approx = (ba * bb + bc) * ba - bb;
                for (int i = 0; i < g->order(); ++i) EXPECT_TRUE(approx[i].contains(exact[i]));
            }
        }
    }
}

TEST(NormElement, AbsorbsSubgroupElements) {
    for (auto factors : std::vector<std::vector<int>>{{2, 2}, {3, 3}, {3, 9}, {2, 2, 2}, {27}}) {
        auto g = make_group(factors);
        for (int h = 0; h < g->order(); ++h) {
            auto bits = g->subgroup({h});
            IntGR n = norm_element_of(g, bits);
            for (int s = 0; s < g->order(); ++s)
                if (bits[s]) EXPECT_EQ(n.shifted(s), n);
        }
    }
}

TEST(Serialization, RoundTrip) {
    std::mt19937 rng(4);
    auto g = make_group({2, 3});
    IntGR x = random_int(g, rng);
    EXPECT_EQ(int_from_json_string(to_json_string(x)), x);
    RatGR q = random_rat(g, rng);
    EXPECT_EQ(rat_from_json_string(to_json_string(q)), q);
    BallGR b = to_ball(q, 128);
    BallGR back = ball_from_json_string(to_json_string(b));
    for (int i = 0; i < g->order(); ++i) EXPECT_TRUE(back[i].contains(q[i]));
    EXPECT_THROW(int_from_json_string(R"({"group":[2],"ring":"int","coeffs":["1"]})"), InputError);
}
