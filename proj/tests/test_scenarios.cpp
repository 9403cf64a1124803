#include "support.hpp"

#include <skewfield/scenarios.hpp>

#include <gtest/gtest.h>

using namespace skewfield;
using namespace testsupport;

namespace {

const FieldPtr Q = FieldSpec::rationals();

void expect_pass(const ScenarioReport& rep) {
    for (const auto& c : rep.checks) {
        EXPECT_TRUE(c.pass) << rep.name << ": " << c.description << " expected " << c.expected << ", got " << c.verdict;
    }
    EXPECT_TRUE(rep.passed());
}

} // namespace

TEST(ParseCubic, Coefficients) {
    auto c = parse_cubic("x^3-x", Q);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c[0], Scalar(Q, 0));
    EXPECT_EQ(c[1], Scalar(Q, -1));
    EXPECT_EQ(c[2], Scalar(Q, 0));
    EXPECT_EQ(c[3], Scalar(Q, 1));
    auto d = parse_cubic("x^3+2*x^2-5", Q);
    EXPECT_EQ(d[0], Scalar(Q, -5));
    EXPECT_EQ(d[2], Scalar(Q, 2));
}

TEST(ParseCubic, Rejections) {
    EXPECT_THROW(parse_cubic("x^2-1", Q), ParamError);
    EXPECT_THROW(parse_cubic("2*x^3-x", Q), ParamError);
    // x^3 - 3x + 2 = (x-1)^2 (x+2).
    EXPECT_THROW(parse_cubic("x^3-3*x+2", Q), ParamError);
    EXPECT_THROW(parse_cubic("x^3+x+1", FieldSpec::finite(2)), ParamError);
}

TEST(Scenarios, Names) {
    EXPECT_EQ(scenario_names().size(), 5u);
    EXPECT_THROW(run_scenario("nope"), ParamError);
}

TEST(Scenarios, FieldRestrictions) {
    ScenarioConfig cfg;
    cfg.field = Q;
    EXPECT_THROW(run_scenario("z3_scaling_f7", cfg), ParamError);
    EXPECT_THROW(run_scenario("z2_char2_swap", cfg), ParamError);
    cfg.field = FieldSpec::finite(2);
    EXPECT_THROW(run_scenario("z2_sign", cfg), ParamError);
}

TEST(Scenarios, SignOverF5) {
    ScenarioConfig cfg;
    cfg.field = FieldSpec::finite(5);
    ScenarioReport rep = run_scenario("z2_sign", cfg);
    expect_pass(rep);
    ASSERT_TRUE(rep.freeness.has_value());
    EXPECT_TRUE(rep.freeness->all_vanish);
}

TEST(Scenarios, DoubleSign) { expect_pass(run_scenario("z2_double_sign")); }

TEST(Scenarios, Char2SwapOverExtension) {
    ScenarioConfig cfg;
    cfg.field = FieldSpec::finite(2, 3);
    expect_pass(run_scenario("z2_char2_swap", cfg));
}

TEST(Scenarios, JonquieresOtherCubic) {
    // y^2 = x^3 - 2x + 1 has simple roots 1 and (-1 +- sqrt 5)/2.
    ScenarioConfig cfg;
    cfg.f = "x^3-2*x+1";
    ScenarioReport rep = run_scenario("jonquieres", cfg);
    expect_pass(rep);
    ASSERT_TRUE(rep.freeness.has_value());
    EXPECT_FALSE(rep.freeness->all_vanish);
}
