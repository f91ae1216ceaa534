#include <gtest/gtest.h>

#include <set>

#include "starklab/sublat.hpp"

using namespace starklab;

namespace {

// Brute force: every subgroup generated by at most two elements, kept when of
// index 1 or p. For p^m <= 27 this reaches every index-p subgroup when m <= 3
// because such subgroups have rank m-1 <= 2.
std::set<std::vector<bool>> brute_index_p(int p, int m) {
    auto g = make_group(std::vector<int>(m, p));
    std::set<std::vector<bool>> out;
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b) {
            auto bits = g->subgroup({a, b});
            int ord = AbelianGroup::subgroup_order(bits);
            if (ord * p == g->order() || ord == g->order()) out.insert(bits);
        }
    if (m == 3) {
        // Rank-3 G itself is not reachable from two generators.
        out.insert(std::vector<bool>(g->order(), true));
    }
    return out;
}

}  // namespace

TEST(OmegaStar, Counts) {
    EXPECT_EQ(enumerate_omega_star(2, 2).total_count(), 4u);
    EXPECT_EQ(enumerate_omega_star(3, 2).proper_count(), 4u);
    EXPECT_EQ(enumerate_omega_star(3, 2).total_count(), 5u);
    EXPECT_EQ(enumerate_omega_star(2, 1).total_count(), 2u);
}

TEST(OmegaStar, TrivialSubgroupForRankOne) {
    auto hs = enumerate_omega_star(2, 1);
    auto members = hs.members();
    EXPECT_EQ(members[0], (std::vector<bool>{true, false}));
    EXPECT_EQ(members[1], (std::vector<bool>{true, true}));
}

TEST(OmegaStar, Errors) {
    EXPECT_THROW(enumerate_omega_star(4, 2), InputError);
    EXPECT_THROW(enumerate_omega_star(3, 7), CapacityError);
    EXPECT_THROW(enumerate_omega_star(2, 10), CapacityError);
    EXPECT_NO_THROW(enumerate_omega_star(3, 6));
}

TEST(OmegaStar, AgreesWithBruteForce) {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {5, 2}}) {
        auto hs = enumerate_omega_star(p, m);
        auto members = hs.members();
        std::set<std::vector<bool>> got(members.begin(), members.end());
        EXPECT_EQ(got.size(), members.size()) << "duplicate subgroup";
        EXPECT_EQ(got, brute_index_p(p, m)) << p << "^" << m;
        long expect_proper = (int_pow(p, m) - 1) / (p - 1);
        EXPECT_EQ(static_cast<long>(hs.proper_count()), expect_proper);
    }
}

TEST(CountAvoiding, Examples) {
    EXPECT_EQ(count_avoiding(2, 2, {1, 0}), 2);
    EXPECT_EQ(count_containing(2, 2, {1, 1}), 1);
    EXPECT_EQ(count_avoiding(3, 2, {1, 2}), 3);
    EXPECT_EQ(count_containing(3, 2, {0, 1}), 1);
    EXPECT_EQ(count_avoiding(2, 3, {1, 0, 1}), 4);
    EXPECT_EQ(count_containing(2, 3, {1, 1, 1}), 3);
    EXPECT_THROW(count_avoiding(2, 2, {0, 0}), InputError);
}

TEST(CountAvoiding, EveryNonzeroElement) {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {5, 3}}) {
        auto g = make_group(std::vector<int>(m, p));
        const long containing = (int_pow(p, m - 1) - 1) / (p - 1);
        for (int a = 1; a < g->order(); ++a) {
            EXPECT_EQ(count_avoiding(p, m, g->element(a)), int_pow(p, m - 1));
            EXPECT_EQ(count_containing(p, m, g->element(a)), containing);
        }
    }
}

TEST(WeightedNormIdentity, SmallCases) {
    auto g22 = make_group({2, 2});
    IntGR two = int_zero(g22);
    two[0] = 2;
    EXPECT_EQ(lemma41_element(2, 2), two);
    auto g2 = make_group({2});
    EXPECT_EQ(lemma41_element(2, 1), IntGR::one(g2, 0));
    IntGR r = lemma41_element(3, 2);
    EXPECT_EQ(r[0], 3);
    for (int i = 1; i < 9; ++i) EXPECT_EQ(r[i], 0);
}

TEST(WeightedNormIdentity, AllDeskSizes) {
    for (int p : {2, 3, 5})
        for (int m = 1; int_pow(p, m) <= 243; ++m) {
            IntGR r = lemma41_element(p, m);
            EXPECT_EQ(r[0], int_pow(p, m - 1)) << p << "^" << m;
        }
}
