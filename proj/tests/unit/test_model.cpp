#include "memdp/model.hpp"
#include "memdp/text_format.hpp"
#include "oracle/oracles.hpp"

#include <gtest/gtest.h>

using namespace memdp;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::BadFormat;
}

}  // namespace

TEST(SparseDist, SortsAndChecksSum) {
    const SparseDist d({Entry{2, Rational(1, 3)}, Entry{0, Rational(2, 3)}});
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.entries()[0].target, 0u);
    EXPECT_EQ(d.prob(2), Rational(1, 3));
    EXPECT_EQ(d.prob(1), 0);
    EXPECT_TRUE(d.supports(0));
    EXPECT_FALSE(d.supports(1));
    EXPECT_EQ(d.support(), (std::vector<StateId>{0, 2}));
}

TEST(SparseDist, RejectsBadDistributions) {
    EXPECT_EQ(code_of([] { SparseDist({Entry{0, Rational(2, 3)}, Entry{1, Rational(2, 3)}}); }), Errc::DistributionSum);
    EXPECT_EQ(code_of([] { SparseDist({Entry{0, Rational(1)}, Entry{1, Rational(0)}}); }), Errc::DistributionSum);
    EXPECT_EQ(code_of([] { SparseDist({Entry{0, Rational(1, 2)}, Entry{0, Rational(1, 2)}}); }), Errc::DuplicateName);
}

TEST(Memdp, FixtureLoads) {
    const Memdp m = parse_model(oracle::kObservation);
    EXPECT_EQ(m.num_states(), 5u);
    EXPECT_EQ(m.num_actions(), 2u);
    EXPECT_EQ(m.num_envs(), 3u);
    EXPECT_EQ(m.state_name(m.initial()), "s0");
    EXPECT_EQ(m.enabled(0), (std::vector<ActionId>{0, 1}));
    EXPECT_EQ(m.enabled(1), (std::vector<ActionId>{0}));
    EXPECT_EQ(m.domain(3), m.all_envs());
    EXPECT_EQ(m.transition(1, 0, 1)->support(), std::vector<StateId>{2});
    EXPECT_EQ(m.transition(0, 1, 1), nullptr);
}

TEST(Memdp, ConstructorValidates) {
    NameTables names{"m", {"s"}, {"a", "b"}, {"1", "2"}};
    const Choice loop_a{0, SparseDist::dirac(0)};
    const Choice loop_b{1, SparseDist::dirac(0)};
    EXPECT_EQ(code_of([&] { Memdp(names, 0, Memdp::Rows{{{loop_a}}, {{loop_b}}}); }), Errc::ActionMismatch);
    EXPECT_EQ(code_of([&] { Memdp(names, 0, Memdp::Rows{{{}}, {{}}}); }), Errc::Deadlock);
    EXPECT_EQ(code_of([&] { Memdp(names, 1, Memdp::Rows{{{loop_a}}, {{loop_a}}}); }), Errc::UnknownState);
    EXPECT_EQ(code_of([&] { Memdp(names, 0, Memdp::Rows{{{Choice{0, SparseDist::dirac(4)}}}, {{loop_a}}}); }),
              Errc::DanglingState);
    NameTables dup{"m", {"s", "s"}, {"a"}, {"1"}};
    EXPECT_EQ(code_of([&] { Memdp(dup, 0, Memdp::Rows{{{loop_a}, {loop_a}}}); }), Errc::DuplicateName);
}

TEST(Memdp, PartialDomainsMustBeClosed) {
    // State 1 only lives in env 2, but env 1 moves there.
    NameTables names{"m", {"x", "y"}, {"a"}, {"1", "2"}};
    Memdp::Rows rows{{{Choice{0, SparseDist::dirac(1)}}, {}},
                     {{Choice{0, SparseDist::dirac(1)}}, {Choice{0, SparseDist::dirac(1)}}}};
    EXPECT_EQ(code_of([&] { Memdp(names, 0, rows); }), Errc::DanglingState);
    rows[0][0] = {Choice{0, SparseDist::dirac(0)}};
    const Memdp ok(names, 0, rows);
    EXPECT_EQ(ok.domain(1), EnvSet::of(2, {1}));
}

TEST(Memdp, RestrictAndReinit) {
    const Memdp m = parse_model(oracle::kObservation);
    const Memdp r = restrict_envs(m, EnvSet::of(3, {1, 2}));
    EXPECT_EQ(r.num_envs(), 2u);
    EXPECT_EQ(r.env_name(0), "2");
    EXPECT_EQ(r.transition(1, 0, 1)->support(), std::vector<StateId>{3});
    EXPECT_EQ(code_of([&] { restrict_envs(m, EnvSet(3)); }), Errc::EmptyEnvSet);
    const Memdp q = reinit(m, 3);
    EXPECT_EQ(q.initial(), 3u);
    EXPECT_EQ(q.rows(), m.rows());
    EXPECT_EQ(code_of([&] { reinit(m, 9); }), Errc::UnknownState);
}

TEST(Memdp, Helpers) {
    EXPECT_EQ(fresh_name({"x", "__bot"}, "__bot"), "__bot1");
    EXPECT_EQ(fresh_name({"x"}, "__bot"), "__bot");
    NameTables t{"m", {}, {"a"}, {}};
    EXPECT_EQ(ensure_loop_action(t), 1u);
    EXPECT_EQ(ensure_loop_action(t), 1u);
    const Memdp m = parse_model(oracle::kObservation);
    EXPECT_EQ(env_set_label(m, EnvSet::of(3, {0, 2})), "{1,3}");
    EXPECT_EQ(members(make_state_set(4, {3, 1})), (std::vector<StateId>{1, 3}));
}
