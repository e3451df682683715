#include "memdp/random_model.hpp"
#include "memdp/text_format.hpp"
#include "oracle/oracles.hpp"

#include <gtest/gtest.h>

using namespace memdp;

namespace {

struct Failure {
    Errc code;
    std::size_t line = 0;
    std::size_t column = 0;
};

Failure model_failure(const std::string& src) {
    try {
        parse_model(src);
    } catch (const Error& e) {
        return {e.code(), e.where() ? e.where()->line : 0, e.where() ? e.where()->column : 0};
    }
    ADD_FAILURE() << "parsed:\n" << src;
    return {Errc::SyntaxError};
}

Failure objective_failure(const std::string& src, const Memdp& m) {
    try {
        parse_objective(src, m);
    } catch (const Error& e) {
        return {e.code(), e.where() ? e.where()->line : 0, e.where() ? e.where()->column : 0};
    }
    ADD_FAILURE() << "parsed: " << src;
    return {Errc::SyntaxError};
}

const std::string kHeader = "memdp t\nenvironments 1\nstates s t\nactions a\ninitial s\n";

}  // namespace

TEST(ModelText, ParsesTheRevealingLoop) {
    const Memdp m = parse_model(oracle::kRevealingLoop);
    EXPECT_EQ(m.names().model, "revealing_loop");
    EXPECT_EQ(m.num_states(), 2u);
    EXPECT_EQ(m.num_envs(), 2u);
    EXPECT_EQ(m.env_name(1), "2");
    EXPECT_EQ(m.transition(1, 0, 0)->prob(1), Rational(1, 2));
}

TEST(ModelText, CommentsAndDecimalNamesAndCrLf) {
    const Memdp m = parse_model("# leading\r\nmemdp x # trailing\r\nenvironments 1\r\nstates s.0 s'1\r\n"
                                "actions go-on\r\ninitial s.0\r\nenv only\r\ns.0 go-on -> s'1 1\r\ns'1 go-on -> s'1 1\r\n");
    EXPECT_EQ(m.state_name(1), "s'1");
    EXPECT_EQ(m.action_name(0), "go-on");
    EXPECT_EQ(m.env_name(0), "only");
}

TEST(ModelText, DistributionSumCarriesRowLine) {
    const Failure f = model_failure(kHeader + "env 1\ns a -> t 1/2\nt a -> t 1\n");
    EXPECT_EQ(f.code, Errc::DistributionSum);
    EXPECT_EQ(f.line, 7u);
    EXPECT_EQ(f.column, 1u);
}

TEST(ModelText, SyntaxErrorsCarryLocations) {
    Failure f = model_failure(kHeader + "env 1\ns a -> t 1/0\n");
    EXPECT_EQ(f.code, Errc::SyntaxError);
    EXPECT_EQ(f.line, 7u);
    EXPECT_EQ(f.column, 10u);

    f = model_failure(kHeader + "env 1\ns a t 1\n");
    EXPECT_EQ(f.code, Errc::SyntaxError);
    EXPECT_EQ(f.line, 7u);
    EXPECT_EQ(f.column, 5u);

    f = model_failure(kHeader + "env 1\ns a -> t 1 ; \n");
    EXPECT_EQ(f.code, Errc::SyntaxError);
    EXPECT_EQ(f.column, 12u);

    f = model_failure("memdp t\nenvironments 1\nstates s\nactions a\n");
    EXPECT_EQ(f.code, Errc::SyntaxError);
    EXPECT_EQ(f.line, 5u);

    f = model_failure(kHeader + "env 1\ns a -> s 1\nt a -> t 1\nstates u\n");
    EXPECT_EQ(f.code, Errc::SyntaxError);
    EXPECT_EQ(f.line, 9u);

    f = model_failure("memdp t\nmemdp u\n");
    EXPECT_EQ(f.code, Errc::SyntaxError);
    EXPECT_EQ(f.line, 2u);
}

TEST(ModelText, SemanticErrors) {
    EXPECT_EQ(model_failure(kHeader + "env 1\ns a -> u 1\nt a -> t 1\n").code, Errc::DanglingState);
    EXPECT_EQ(model_failure(kHeader + "env 1\ns a -> t 1\n").code, Errc::Deadlock);
    EXPECT_EQ(model_failure(kHeader + "env 1\ns a -> t 1\ns a -> s 1\nt a -> t 1\n").code, Errc::DuplicateName);
    EXPECT_EQ(model_failure("memdp t\nenvironments 1\nstates s __x\nactions a\ninitial s\nenv 1\ns a -> s 1\n").code,
              Errc::ReservedName);
    EXPECT_EQ(model_failure("memdp t\nenvironments 2\nstates s t\nactions a\ninitial s\nenv 1\ns a -> t 1\nt a -> t 1\n")
                  .code,
              Errc::SyntaxError);
}

TEST(ModelText, EmptyEnvironmentBlockIsAnActionMismatch) {
    const Failure f = model_failure("memdp t\nenvironments 2\nstates s\nactions a\ninitial s\nenv 1\ns a -> s 1\nenv 2\n");
    EXPECT_EQ(f.code, Errc::ActionMismatch);
    EXPECT_EQ(f.line, 8u);
}

TEST(ModelText, ActionMismatchPointsAtTheRow) {
    const Failure f = model_failure("memdp t\nenvironments 2\nstates s\nactions a b\ninitial s\nenv 1\ns a -> s 1\n"
                                    "env 2\ns a -> s 1\ns b -> s 1\n");
    EXPECT_EQ(f.code, Errc::ActionMismatch);
    EXPECT_EQ(f.line, 9u);
}

TEST(ModelText, PrintParseRoundTrip) {
    for (const char* src : {oracle::kRevealingLoop, oracle::kObservation, oracle::kCommitted}) {
        const Memdp m = parse_model(src);
        EXPECT_EQ(parse_model(print_model(m)), m);
        EXPECT_EQ(print_model(parse_model(print_model(m))), print_model(m));
    }
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Memdp m = gen_random(1 + seed % 6, 1 + seed % 3, 1 + seed % 4, 3, seed);
        EXPECT_EQ(parse_model(print_model(m)), m) << seed;
    }
}

TEST(ObjectiveText, AllKinds) {
    const Memdp m = parse_model(oracle::kObservation);
    const auto reach = std::get<Reach>(parse_objective("reach {s4}", m));
    EXPECT_EQ(reach.target, make_state_set(5, {4}));
    EXPECT_EQ(std::get<Safety>(parse_objective("safety {s0, s1 s2}", m)).safe, make_state_set(5, {0, 1, 2}));
    EXPECT_EQ(std::get<Buchi>(parse_objective("buchi {}", m)).target, StateSet(5));
    EXPECT_EQ(std::get<CoBuchi>(parse_objective("cobuchi\n{s3}", m)).target, make_state_set(5, {3}));
    EXPECT_EQ(std::get<Parity>(parse_objective("parity s1:3, s4:2", m)).priority,
              (std::vector<unsigned>{0, 3, 0, 0, 2}));
    const auto rabin = std::get<Rabin>(parse_objective("rabin (B={s0 s1} C={s1}) (B={s4} C={})", m)).objective;
    ASSERT_EQ(rabin.pairs.size(), 2u);
    EXPECT_EQ(rabin.pairs[0].b, make_state_set(5, {0, 1}));
    EXPECT_EQ(rabin.pairs[0].c, make_state_set(5, {1}));
    EXPECT_EQ(rabin.pairs[1].c, StateSet(5));
}

TEST(ObjectiveText, Errors) {
    const Memdp m = parse_model(oracle::kObservation);
    Failure f = objective_failure("reach {s9}", m);
    EXPECT_EQ(f.code, Errc::UnknownState);
    EXPECT_EQ(f.column, 8u);
    f = objective_failure("rabin (B={s0}) ", m);
    EXPECT_EQ(f.code, Errc::SyntaxError);
    f = objective_failure("rabin (B={s0} C={s0}) (B={s1} C={s2})", m);
    EXPECT_EQ(f.code, Errc::BadRabinPair);
    EXPECT_EQ(f.column, 23u);
    EXPECT_EQ(objective_failure("eventually {s0}", m).code, Errc::SyntaxError);
    EXPECT_EQ(objective_failure("reach {s0} extra", m).code, Errc::SyntaxError);
    EXPECT_EQ(objective_failure("parity s0:x", m).code, Errc::SyntaxError);
    EXPECT_EQ(objective_failure("", m).code, Errc::SyntaxError);
}

TEST(ObjectiveText, PrintRabinRoundTrip) {
    const Memdp m = parse_model(oracle::kObservation);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const RabinObjective phi = random_rabin(5, 1 + i % 3, rng);
        EXPECT_EQ(std::get<Rabin>(parse_objective(print_rabin(phi, m), m)).objective, phi);
    }
}
