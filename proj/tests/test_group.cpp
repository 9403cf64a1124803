#include "support.hpp"

#include <skewfield/group.hpp>

#include <gtest/gtest.h>

using namespace skewfield;
using namespace testsupport;

namespace {

const FieldPtr Q = FieldSpec::rationals();

Expr X(std::size_t i) { return Expr::var(static_cast<std::uint32_t>(i)); }

ActionSpec sign_action() {
    return make_action(FiniteGroup::cyclic(2), 2, Q, {{}, {-X(0), X(1)}});
}

ActionSpec double_sign() {
    return make_action(FiniteGroup::cyclic(2), 2, Q, {{}, {-X(0), -X(1)}});
}

ActionSpec jonquieres() {
    Expr x = X(0);
    Expr y = X(1);
    Expr f = x * x * x - x;
    return make_action(FiniteGroup::cyclic(2), 2, Q, {{}, {Expr::inv(y) * x * y, Expr::inv(y) * f}});
}

bool rit_equal(Expr a, Expr b, std::size_t m = 2) { return eq_m(a, b, Q, {}, m).probably_zero(); }

} // namespace

TEST(Group, CyclicTable) {
    FiniteGroup G = FiniteGroup::cyclic(5);
    EXPECT_EQ(G.order(), 5u);
    EXPECT_EQ(G.mul(3, 4), 2u);
    EXPECT_EQ(G.inverse(2), 3u);
    EXPECT_EQ(G.element_order(1), 5u);
    EXPECT_EQ(G.element_order(0), 1u);
}

TEST(Group, SymmetricGroup) {
    FiniteGroup S = FiniteGroup::symmetric3();
    std::vector<std::size_t> orders;
    for (std::size_t g = 0; g < 6; ++g) {
        orders.push_back(S.element_order(g));
    }
    EXPECT_EQ(orders, (std::vector<std::size_t>{1, 3, 3, 2, 2, 2}));
    EXPECT_NE(S.mul(1, 3), S.mul(3, 1));
}

TEST(Group, KleinFourAsProduct) {
    FiniteGroup V = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    for (std::size_t g = 0; g < 4; ++g) {
        EXPECT_EQ(V.mul(g, g), 0u);
    }
}

TEST(Group, InvalidTables) {
    EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), GroupInvalid);
    EXPECT_THROW(FiniteGroup::from_table({{1, 0}, {0, 1}}), GroupInvalid);
    EXPECT_THROW(FiniteGroup::from_table({{0, 1, 2}, {1, 2}, {2, 0, 1}}), GroupInvalid);
    // A Latin square with identity 0 that is not associative.
    EXPECT_THROW(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                          {1, 0, 3, 4, 2},
                                          {2, 4, 0, 1, 3},
                                          {3, 2, 4, 0, 1},
                                          {4, 3, 1, 2, 0}}),
                 GroupInvalid);
}

TEST(Action, SignInvolutionIsValid) {
    ActionSpec a = sign_action();
    ActionReport rep = verify_action(a);
    EXPECT_TRUE(rep.faithful);
    EXPECT_EQ(rep.effective_order, 2u);
    ASSERT_TRUE(a.linear_part);
    const auto& M = (*a.linear_part)[1];
    EXPECT_EQ(M(0, 0), Scalar(Q, -1));
    EXPECT_EQ(M(1, 1), Scalar(Q, 1));
    EXPECT_EQ(M(0, 1), Scalar(Q, 0));
}

TEST(Action, JonquieresIsInvolution) {
    ActionSpec a = jonquieres();
    EXPECT_FALSE(a.linear_part);
    ActionReport rep = verify_action(a);
    EXPECT_TRUE(rep.faithful);
    EXPECT_EQ(rep.pairs_checked, 4u);
}

TEST(Action, TrivialElementIsFlagged) {
    ActionSpec a = make_action(FiniteGroup::cyclic(2), 2, Q, {{}, {X(0), X(1)}});
    ActionReport rep = verify_action(a);
    EXPECT_FALSE(rep.faithful);
    EXPECT_EQ(rep.effective_order, 1u);
    EXPECT_EQ(rep.kernel, (std::vector<std::size_t>{0, 1}));
}

TEST(Action, WrongOrderIsRejected) {
    ActionSpec a = make_action(FiniteGroup::cyclic(3), 1, Q, {{}, {-X(0)}, {-X(0)}});
    EXPECT_THROW(verify_action(a), ActionInvalid);
    ActionSpec b = make_action(FiniteGroup::cyclic(2), 1, Q, {{-X(0)}, {X(0)}});
    EXPECT_THROW(verify_action(b), ActionInvalid);
    EXPECT_THROW(make_action(FiniteGroup::cyclic(2), 1, Q, {{}}), ActionInvalid);
    EXPECT_THROW(make_action(FiniteGroup::cyclic(2), 1, Q, {{}, {X(1)}}), ActionInvalid);
}

TEST(Action, PermutationActionOfS3) {
    // gh applies g first, so x_i^g = x_{g(i)} composes correctly as a right action.
    FiniteGroup S = FiniteGroup::symmetric3();
    const std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
    std::vector<std::vector<Expr>> images;
    for (const auto& p : perms) {
        images.push_back({X(p[0]), X(p[1]), X(p[2])});
    }
    ActionSpec a = make_action(S, 3, Q, images);
    ActionReport rep = verify_action(a);
    EXPECT_TRUE(rep.faithful);
    EXPECT_EQ(rep.pairs_checked, 36u);
}

TEST(GMatrix, SignInvolution) {
    ActionSpec a = sign_action();
    MatM W = g_matrix(a, {Expr::one(Q), X(0)});
    EXPECT_EQ(W(0, 0), Expr::one(Q));
    EXPECT_EQ(W(1, 0), Expr::one(Q));
    EXPECT_EQ(W(0, 1), X(0));
    EXPECT_EQ(W(1, 1), -X(0));
    EXPECT_TRUE(full_rank_over_M(W, Q).full);
    MatM W3 = g_matrix(a, {Expr::one(Q), X(0), X(0) * X(0)});
    EXPECT_EQ(W3.rows(), 2u);
    EXPECT_FALSE(full_rank_over_M(W3, Q).full);
    MatM ones = g_matrix(jonquieres(), {Expr::one(Q)});
    EXPECT_EQ(ones(1, 0), Expr::one(Q));
}

TEST(Reynolds, Examples) {
    ActionSpec a = sign_action();
    EXPECT_TRUE(rit_equal(reynolds(a, X(0)), Expr::zero(Q)));
    EXPECT_TRUE(rit_equal(reynolds(a, X(0) * X(0)), X(0) * X(0)));
    EXPECT_TRUE(rit_equal(reynolds(double_sign(), X(0) * X(1)), X(0) * X(1)));
    EXPECT_TRUE(rit_equal(reynolds(a, X(0) * X(1)), Expr::zero(Q)));
}

TEST(Reynolds, IdempotentAndInvariant) {
    Rng rng(31);
    std::vector<ActionSpec> actions = {sign_action(), jonquieres()};
    for (int t = 0; t < 12; ++t) {
        const ActionSpec& a = actions[t % 2];
        Expr r = random_expr(Q, 2, 1 + uniform_below(rng, 5), rng);
        Expr R = reynolds(a, r);
        EXPECT_TRUE(rit_equal(reynolds(a, R), R)) << to_string(r);
        for (std::size_t g = 0; g < a.group.order(); ++g) {
            EXPECT_TRUE(rit_equal(a.apply(g, R), R)) << to_string(r);
        }
    }
}

TEST(Reynolds, CharacteristicDividesOrder) {
    const FieldPtr F2 = FieldSpec::finite(2);
    ActionSpec a = make_action(FiniteGroup::cyclic(2), 2, F2, {{}, {X(1), X(0)}});
    EXPECT_THROW(reynolds(a, X(0)), CharDivides);
    const FieldPtr F7 = FieldSpec::finite(7);
    ActionSpec b = make_action(FiniteGroup::cyclic(3), 1, F7,
                               {{}, {Expr::integer(F7, 2) * X(0)}, {Expr::integer(F7, 4) * X(0)}});
    EXPECT_NO_THROW(verify_action(b));
    EXPECT_TRUE(eq_m(reynolds(b, X(0) * X(0) * X(0)), X(0) * X(0) * X(0), b.field, {}, 1).probably_zero());
}
