#include <gtest/gtest.h>

#include <random>

#include "starklab/zideal.hpp"

using namespace starklab;

namespace {

IntGR elt(GroupPtr g, std::vector<long> c) {
    IntGR x = int_zero(g);
    for (size_t i = 0; i < c.size(); ++i) x[i] = c[i];
    return x;
}

IntGR sigma_minus_one(GroupPtr g, int s = 1) { return int_basis(g, s) - IntGR::one(g, 0); }

FiniteGModule random_module(GroupPtr g, std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 2), dd(2, 9), coin(0, 1);
    IntVec inv;
    int t = nd(rng);
    for (int j = 0; j < t; ++j) inv.push_back(dd(rng));
    FiniteGModule m = FiniteGModule::trivial_action(g, inv);
    for (auto& a : m.action) {
        if (g->exponent() == 2) {
            if (t == 2 && inv[0] == inv[1] && coin(rng)) {
                a = IntMat{{0, 1}, {1, 0}};
                continue;
            }
            for (int j = 0; j < t; ++j)
                if (coin(rng)) a[j][j] = -1;
        } else if (g->exponent() == 3) {
            // Units of order 3: 2 mod 7, 4 mod 9.
            for (int j = 0; j < t; ++j) {
                if (inv[j] == 7) a[j][j] = 2;
                if (inv[j] == 9) a[j][j] = 4;
            }
        }
    }
    return m;
}

// Same module, presented with an extra redundant generator f = e_0 + e_last
// and relations expressing it, and the generator order reversed.
Presentation alternate_presentation(const FiniteGModule& m) {
    Presentation base = m.presentation();
    const int t = base.n_generators;
    Presentation p{m.group, t + 1, {}};
    for (const auto& r : base.relations) {
        std::vector<IntGR> row;
        for (int j = t - 1; j >= 0; --j) row.push_back(r[j]);
        row.push_back(int_zero(m.group));
        p.relations.push_back(row);
    }
    std::vector<IntGR> link(t + 1, int_zero(m.group));
    link[t - 1][0] = 1;   // e_0 in reversed order
    link[0][0] += 1;      // e_last
    link[t][0] = -1;      // -f
    p.relations.push_back(link);
    return p;
}

}  // namespace

TEST(IdealFromGenerators, Examples) {
    auto g = make_group({2});
    EXPECT_EQ(GIdeal::from_generators(g, {IntGR::one(g, 0)}), GIdeal::unit(g));
    GIdeal aug = GIdeal::from_generators(g, {sigma_minus_one(g)});
    EXPECT_EQ(aug.rank(), 1);
    EXPECT_TRUE(aug.contains(elt(g, {-1, 1})));
    GIdeal i2 = GIdeal::from_generators(g, {elt(g, {2, 0}), sigma_minus_one(g)});
    EXPECT_EQ(i2.index(), 2);
    IntMat rows{{2, 0}, {0, 2}, {-1, 1}, {1, -1}};
    EXPECT_EQ(i2.basis(), hnf(rows, 2));
}

TEST(IdealCalculus, ProductSharpUnit) {
    auto g = make_group({2});
    GIdeal a = GIdeal::from_generators(g, {elt(g, {2, 0}), sigma_minus_one(g)});
    GIdeal expect = GIdeal::from_generators(g, {elt(g, {4, 0}), elt(g, {-2, 2})});
    EXPECT_EQ(a * a, expect);
    EXPECT_EQ(aug_ideal_power(g, 1).sharp(), aug_ideal_power(g, 1));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (auto factors : std::vector<std::vector<int>>{{2, 2}, {3}, {4}}) {
        auto h = make_group(factors);
        for (int k = 0; k < 5; ++k) {
            IntGR x = int_zero(h), y = int_zero(h);
            for (int i = 0; i < h->order(); ++i) {
                x[i] = d(rng);
                y[i] = d(rng);
            }
            GIdeal A = GIdeal::from_generators(h, {x, y});
            EXPECT_EQ(A * GIdeal::unit(h), A);
            EXPECT_TRUE(A.is_g_stable());
            EXPECT_TRUE(A.sharp().is_g_stable());
            EXPECT_EQ(A.sharp().sharp(), A);
        }
        EXPECT_EQ(aug_ideal_power(h, 1).sharp(), aug_ideal_power(h, 1));
    }
}

TEST(Fitting, CyclicTrivialGroup) {
    auto g = make_group({});
    Presentation p{g, 1, {}};
    p.add_relation({elt(g, {6})});
    GIdeal f = fitting_ideal(p, 0);
    EXPECT_EQ(f, GIdeal::from_generators(g, {elt(g, {6})}));
}

TEST(Fitting, TrivialActionIntegers) {
    for (int prime : {2, 3, 5}) {
        auto g = make_group({prime});
        Presentation p{g, 1, {}};
        p.add_relation({sigma_minus_one(g)});
        EXPECT_EQ(fitting_ideal(p, 0), aug_ideal_power(g, 1));
    }
}

TEST(Fitting, ElementaryModuleBound) {
    auto g = make_group({3});
    FiniteGModule m = FiniteGModule::trivial_action(g, {3, 3});
    GIdeal f = fitting_ideal(m.presentation(), 0);
    GIdeal factor = GIdeal::unit(g).scaled(3) + aug_ideal_power(g, 1);
    EXPECT_TRUE((factor * factor).contains(f));
}

TEST(Fitting, DegenerateIndices) {
    auto g = make_group({2});
    Presentation p{g, 2, {}};
    p.add_relation({elt(g, {2, 0}), int_zero(g)});
    EXPECT_EQ(fitting_ideal(p, 2), GIdeal::unit(g));
    EXPECT_EQ(fitting_ideal(p, 5), GIdeal::unit(g));
    EXPECT_TRUE(fitting_ideal(p, 0).is_zero());
    EXPECT_EQ(fitting_ideal(p, 1), GIdeal::from_generators(g, {elt(g, {2, 0})}));
}

TEST(Fitting, SmithOracleTrivialAction) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-6, 6);
    auto triv = make_group({});
    for (int k = 0; k < 20; ++k) {
        IntMat rel = zero_matrix(3, 2);
        for (auto& row : rel)
            for (auto& x : row) x = d(rng);
        SmithForm s = smith(rel, 2);
        Presentation p{triv, 2, {}};
        for (auto& row : rel) p.add_relation({elt(triv, {row[0].get_si()}), elt(triv, {row[1].get_si()})});
        mpz_class d0 = s.diagonal[0] * s.diagonal[1];
        mpz_class d1 = s.diagonal[0];
        EXPECT_EQ(fitting_ideal(p, 0), d0 == 0 ? GIdeal::zero(triv) : GIdeal::from_generators(triv, {elt(triv, {d0.get_si()})}));
        EXPECT_EQ(fitting_ideal(p, 1), d1 == 0 ? GIdeal::zero(triv) : GIdeal::from_generators(triv, {elt(triv, {d1.get_si()})}));
    }
}

TEST(Fitting, PresentationIndependenceAndAnnihilation) {
    std::mt19937 rng(12);
    int checked = 0;
    for (auto factors : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
        auto g = make_group(factors);
        for (int k = 0; k < 8; ++k) {
            FiniteGModule m = random_module(g, rng);
            ASSERT_TRUE(m.is_valid());
            GIdeal f0 = fitting_ideal(m.presentation(), 0);
            EXPECT_EQ(f0, fitting_ideal(alternate_presentation(m), 0));
            EXPECT_EQ(fitting_ideal(m.presentation(), 1), fitting_ideal(alternate_presentation(m), 1));
            EXPECT_TRUE(annihilator(m).contains(f0));
            ++checked;
        }
    }
    EXPECT_GE(checked, 20);
}

TEST(Fitting, DirectSumMultiplies) {
    std::mt19937 rng(13);
    for (auto factors : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
        auto g = make_group(factors);
        for (int k = 0; k < 4; ++k) {
            FiniteGModule a = random_module(g, rng), b = random_module(g, rng);
            GIdeal lhs = fitting_ideal(a.direct_sum(b).presentation(), 0);
            GIdeal rhs = fitting_ideal(a.presentation(), 0) * fitting_ideal(b.presentation(), 0);
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Annihilator, Examples) {
    auto g = make_group({2});
    FiniteGModule z2 = FiniteGModule::trivial_action(g, {2});
    EXPECT_EQ(annihilator(z2), GIdeal::from_generators(g, {elt(g, {2, 0}), sigma_minus_one(g)}));
    FiniteGModule zero = FiniteGModule::trivial_action(g, {});
    EXPECT_EQ(annihilator(zero), GIdeal::unit(g));
    FiniteGModule z3 = FiniteGModule::trivial_action(g, {3});
    z3.action[0][0][0] = -1;
    EXPECT_EQ(annihilator(z3), GIdeal::from_generators(g, {elt(g, {3, 0}), elt(g, {1, 1})}));
}

TEST(FittingFromExtension, Examples) {
    auto g = make_group({2});
    FiniteGModule zero = FiniteGModule::trivial_action(g, {});
    EXPECT_EQ(fitting_from_extension(zero, 2), aug_ideal_power(g, 1));
    EXPECT_EQ(fitting_from_extension(zero, 1), GIdeal::unit(g));
    FiniteGModule z2 = FiniteGModule::trivial_action(g, {2});
    EXPECT_EQ(fitting_from_extension(z2, 2), GIdeal::from_generators(g, {elt(g, {-2, 2})}));
    auto klein = make_group({2, 2});
    EXPECT_THROW(fitting_from_extension(FiniteGModule::trivial_action(klein, {}), 2), UnsupportedError);
}

TEST(Membership, Examples) {
    auto g = make_group({2});
    GIdeal a = GIdeal::from_generators(g, {elt(g, {2, 0}), sigma_minus_one(g)});
    EXPECT_TRUE(membership(elt(g, {2, 0}), a));
    EXPECT_FALSE(membership(IntGR::one(g, 0), aug_ideal_power(g, 1)));
    EXPECT_TRUE(membership(elt(g, {-2, 2}), aug_ideal_power(g, 2)));
}

TEST(Membership, Balls) {
    auto g = make_group({2});
    BallGR x(g, Ball(128));
    x[0] = Ball(mpq_class(-2), 128) + Ball::from_decimal("0", "1e-30", 128);
    x[1] = Ball(mpq_class(2), 128);
    EXPECT_TRUE(membership(x, aug_ideal_power(g, 2)));
    x[1] = Ball(mpq_class(1, 2), 128);
    EXPECT_FALSE(membership(x, GIdeal::unit(g)));
    x[1] = Ball::from_decimal("0.5", "0.6", 128);
    EXPECT_THROW(membership(x, GIdeal::unit(g)), UndecidedError);
}

TEST(Containment, DivisibilityChain) {
    for (int p : {2, 3}) {
        auto g = make_group({p});
        for (int s = 0; s <= 4; ++s)
            for (int d = 2; d <= 4; ++d) {
                GIdeal sum = GIdeal::zero(g);
                mpz_class pi = 1;
                for (int i = 0; i <= s; ++i) {
                    sum = sum + aug_ideal_power(g, s - i + d - 1).scaled(pi);
                    pi *= p;
                }
                int e = (s + d - 2) / (p - 1);
                mpz_class pe = 1;
                for (int i = 0; i < e; ++i) pe *= p;
                GIdeal bound = aug_ideal_power(g, 1).scaled(pe);
                EXPECT_TRUE(bound.contains(sum)) << p << " " << s << " " << d;
            }
    }
}

TEST(Serialization, IdealRoundTrip) {
    auto g = make_group({2, 2});
    GIdeal a = aug_ideal_power(g, 2);
    EXPECT_EQ(GIdeal::from_json_string(a.to_json_string()), a);
}
