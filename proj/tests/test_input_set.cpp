#include <gtest/gtest.h>

#include <random>
#include <set>
#include <unordered_set>

#include "kchange/input_set.hpp"

using kchange::InputSet;

TEST(InputSetTest, BasicMembership)
{
        auto s = InputSet::of(10, {1, 4, 9});
        EXPECT_EQ(s.size(), 3);
        EXPECT_TRUE(s.contains(4));
        EXPECT_FALSE(s.contains(5));
        EXPECT_EQ(s.first(), 1);
        EXPECT_EQ(s.next(1), 4);
        EXPECT_EQ(s.next(9), -1);
        s.erase(4);
        EXPECT_EQ(s.members(), (std::vector<int>{1, 9}));
        EXPECT_FALSE(s.empty());
        EXPECT_TRUE(InputSet(10).empty());
        EXPECT_EQ(InputSet(10).first(), -1);
}

TEST(InputSetTest, FullTrimsPastUniverse)
{
        for (int u : {1, 63, 64, 65, 127, 720, 1024}) {
                const auto s = InputSet::full(u);
                EXPECT_EQ(s.size(), u);
                EXPECT_EQ(s.members().back(), u - 1);
        }
}

TEST(InputSetTest, RankCountsMembersBelow)
{
        const auto s = InputSet::of(200, {0, 3, 64, 130, 199});
        EXPECT_EQ(s.rank(0), 0);
        EXPECT_EQ(s.rank(3), 1);
        EXPECT_EQ(s.rank(64), 2);
        EXPECT_EQ(s.rank(100), 3);
        EXPECT_EQ(s.rank(199), 4);
}

TEST(InputSetTest, EqualityNeedsSameUniverse)
{
        EXPECT_NE(InputSet::of(5, {1}), InputSet::of(6, {1}));
        EXPECT_EQ(InputSet::of(5, {1, 2}), InputSet::of(5, {2, 1}));
}

TEST(InputSetTest, HexIsStable)
{
        EXPECT_EQ(InputSet::of(8, {0, 3}).to_hex(), "0000000000000009");
        EXPECT_EQ(InputSet::of(70, {64}).to_hex().substr(0, 16), "0000000000000001");
}

// Randomized comparison with std::set, fixed seed.
TEST(InputSetTest, AgreesWithStdSet)
{
        std::mt19937 rng(12345);
        for (int round = 0; round < 200; ++round) {
                const int u = 1 + static_cast<int>(rng() % 300);
                InputSet a(u), b(u);
                std::set<int> sa, sb;
                for (int i = 0; i < u / 2; ++i) {
                        const int x = static_cast<int>(rng() % u), y = static_cast<int>(rng() % u);
                        a.insert(x);
                        sa.insert(x);
                        b.insert(y);
                        sb.insert(y);
                }
                auto as_set = [](const InputSet &s) {
                        auto m = s.members();
                        return std::set<int>(m.begin(), m.end());
                };
                std::set<int> inter, uni, diff;
                std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.end()));
                std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(uni, uni.end()));
                std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(diff, diff.end()));
                ASSERT_EQ(as_set(a), sa);
                EXPECT_EQ(as_set(a & b), inter);
                EXPECT_EQ(as_set(a | b), uni);
                EXPECT_EQ(as_set(a - b), diff);
                EXPECT_EQ((a & b).is_subset_of(a), true);
                EXPECT_EQ(a.is_subset_of(a & b), sa == inter);
                std::vector<int> seen;
                a.for_each([&](int x) { seen.push_back(x); });
                EXPECT_EQ(seen, a.members());
                EXPECT_EQ(a.size(), static_cast<int>(sa.size()));
        }
}

TEST(InputSetTest, HashUsableInUnorderedSet)
{
        std::unordered_set<InputSet, kchange::InputSetHash> seen;
        for (int x = 0; x < 100; ++x)
                seen.insert(InputSet::of(100, {x}));
        seen.insert(InputSet::of(100, {7}));
        EXPECT_EQ(seen.size(), 100u);
}
