#include "memdp/env_set.hpp"
#include "memdp/error.hpp"

#include <gtest/gtest.h>

#include <unordered_set>

using namespace memdp;

TEST(EnvSet, BasicMembership) {
    EnvSet s = EnvSet::of(5, {0, 3});
    EXPECT_EQ(s.size(), 2u);
    EXPECT_TRUE(s.contains(0));
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(1));
    EXPECT_FALSE(s.contains(99));
    s.erase(0);
    EXPECT_EQ(s.members(), std::vector<EnvId>{3});
    EXPECT_EQ(s.front(), 3u);
}

TEST(EnvSet, InsertOutOfRangeThrows) {
    EnvSet s(3);
    EXPECT_THROW(s.insert(3), Error);
    EXPECT_THROW(EnvSet(2).front(), Error);
}

TEST(EnvSet, SubsetRelations) {
    const EnvSet a = EnvSet::of(4, {1});
    const EnvSet b = EnvSet::of(4, {1, 2});
    EXPECT_TRUE(a.is_subset_of(b));
    EXPECT_TRUE(a.is_proper_subset_of(b));
    EXPECT_FALSE(b.is_subset_of(a));
    EXPECT_FALSE(b.is_proper_subset_of(b));
    EXPECT_EQ((a | b), b);
    EXPECT_EQ((a & b), a);
    EXPECT_TRUE(EnvSet(4).empty());
    EXPECT_EQ(EnvSet::full(4).size(), 4u);
}

TEST(EnvSet, OrderFollowsBitmask) {
    // {0} = 1, {1} = 2, {0,1} = 3
    const EnvSet s0 = EnvSet::of(2, {0}), s1 = EnvSet::of(2, {1}), s01 = EnvSet::full(2);
    EXPECT_LT(s0, s1);
    EXPECT_LT(s1, s01);
    EXPECT_LT(EnvSet(2), s0);
}

TEST(EnvSet, WideUniverseSpills) {
    EnvSet s(130);
    s.insert(0);
    s.insert(64);
    s.insert(129);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.members(), (std::vector<EnvId>{0, 64, 129}));
    EnvSet t = EnvSet::of(130, {64});
    EXPECT_TRUE(t.is_proper_subset_of(s));
    EXPECT_LT(t, s);
    EXPECT_EQ(EnvSet::full(130).size(), 130u);
}

TEST(EnvSet, HashAgreesWithEquality) {
    std::unordered_set<EnvSet, EnvSetHash> seen;
    seen.insert(EnvSet::of(3, {0, 2}));
    seen.insert(EnvSet::of(3, {2, 0}));
    seen.insert(EnvSet::of(3, {1}));
    EXPECT_EQ(seen.size(), 2u);
}
