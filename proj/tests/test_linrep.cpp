#include "support.hpp"

#include <skewfield/linrep.hpp>

#include <gtest/gtest.h>

using namespace skewfield;
using namespace testsupport;

namespace {

const FieldPtr Q = FieldSpec::rationals();

Mat<Scalar> pencil_value(const LinRep& L, const MatrixTuple& X) {
    ExactField f(Q);
    auto v = evaluate_linrep(f, L, X.mats, X.n);
    if (!v) {
        throw DomainError("pencil", X.n);
    }
    return *v;
}

} // namespace

TEST(LinRep, ConstantPencil) {
    LinRep L = to_linrep(Expr::integer(Q, 5), Q);
    ASSERT_EQ(L.dim, 1u);
    EXPECT_EQ(L.u[0], Scalar(Q, 1));
    EXPECT_EQ(L.v[0], Scalar(Q, 5));
    EXPECT_EQ(L.coefficient(-1)(0, 0), Scalar(Q, 1));
}

TEST(LinRep, VariablePencilRealizesX) {
    LinRep L = to_linrep(Expr::var(0), Q);
    ASSERT_EQ(L.dim, 2u);
    // A = [[1, -x], [0, 1]] has inverse [[1, x], [0, 1]]; u A^-1 v picks the corner.
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        MatrixTuple X = random_tuple(Q, 1, 3, rng);
        EXPECT_EQ(pencil_value(L, X), X.mats[0]);
    }
}

TEST(LinRep, SumOfTwoVariables) {
    Expr r = Expr::var(0) + Expr::var(1);
    LinRep L = to_linrep(r, Q);
    EXPECT_EQ(L.dim, 4u);
    EXPECT_EQ(r.dimension(), 4u);
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        MatrixTuple X = random_tuple(Q, 2, 1 + t % 4, rng);
        EXPECT_EQ(pencil_value(L, X), evaluate(r, X));
    }
}

TEST(LinRep, DimensionRule) {
    Expr a = parse_expr("x1*x2 + inv(x3 - 2)", 3, Q);
    EXPECT_EQ(to_linrep(a, Q).dim, a.dimension());
    EXPECT_EQ(a.dimension(), 2u + 2u + (2u + 1u + 1u));
}

TEST(LinRep, RealizationMatchesEvaluation) {
    Rng rng(2024);
    int compared = 0;
    for (int c = 0; c < 300; ++c) {
        Expr r = random_expr(Q, 3, 1 + uniform_below(rng, 30), rng);
        LinRep L = to_linrep(r, Q);
        ASSERT_EQ(L.dim, r.dimension());
        MatrixTuple X = random_tuple(Q, 3, 1 + uniform_below(rng, 2), rng);
        std::optional<Mat<Scalar>> direct;
        try {
            direct = evaluate(r, X);
        } catch (const DomainError&) {
        }
        auto viaPencil = evaluate_linrep(ExactField(Q), L, X.mats, X.n);
        if (direct && viaPencil) {
            EXPECT_EQ(*direct, *viaPencil) << to_string(r);
            ++compared;
        }
    }
    EXPECT_GT(compared, 150);
}

TEST(Rit, IdentityExampleIsZero) {
    Expr lhs = parse_expr("inv(x1 - x2*inv(x4)*x3)", 4, Q);
    Expr rhs = parse_expr(
        "inv(x1) + inv(x1)*x2*inv(x4 - x3*inv(x1)*x2)*x3*inv(x1)", 4, Q);
    ZeroVerdict v = eq_m(lhs, rhs, Q);
    EXPECT_TRUE(v.probably_zero());
    EXPECT_EQ(v.trials, 8u);
    EXPECT_GE(v.size, 2u);
}

TEST(Rit, Constants) {
    EXPECT_TRUE(is_zero(Expr::zero(Q), Q).probably_zero());
    ZeroVerdict one = is_zero(Expr::one(Q), Q);
    ASSERT_TRUE(one.nonzero());
    EXPECT_TRUE(one.witness.has_value());
}

TEST(Rit, CommutatorHasWitness) {
    Expr r = parse_expr("x1*x2 - x2*x1", 2, Q);
    ZeroVerdict v = is_zero(r, Q);
    ASSERT_TRUE(v.nonzero());
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(v.route, "expression");
    EXPECT_GE(v.witness->n, 2u);
    // The witness really is one: exact evaluation over Q.
    EXPECT_FALSE(dense::is_zero(ExactField(Q), evaluate(r, *v.witness)));
    EXPECT_TRUE(verify_witness(r, Q, v));
}

TEST(Rit, DistinctVariables) {
    ZeroVerdict v = eq_m(Expr::var(0), Expr::var(1), Q);
    ASSERT_TRUE(v.nonzero());
    EXPECT_TRUE(verify_witness(Expr::var(0) - Expr::var(1), Q, v));
    EXPECT_TRUE(eq_m(Expr::var(0), Expr::var(0), Q).probably_zero());
}

TEST(Rit, CommutingVariablesOverSmallField) {
    const FieldPtr F2 = FieldSpec::finite(2);
    Expr r = parse_expr("x1*x2 + x2*x1", 2, F2);
    ZeroVerdict v = is_zero(r, F2);
    ASSERT_TRUE(v.nonzero());
    EXPECT_EQ(v.witness->field->order().value(), 1ULL << 16);
    EXPECT_TRUE(verify_witness(r, F2, v));
    // x^2 + x vanishes on F2 itself but not in the skew field.
    EXPECT_TRUE(is_zero(parse_expr("x1*x1 + x1", 1, F2), F2).nonzero());
    EXPECT_TRUE(is_zero(parse_expr("x1 + x1", 1, F2), F2).probably_zero());
}

TEST(Rit, DomainlessExpressionIsZero) {
    // x1 * inv(x1) - 1 is zero, so its inverse is defined nowhere.
    Expr r = Expr::inv(Expr::var(0) * Expr::inv(Expr::var(0)) - Expr::one(Q));
    ZeroVerdict v = is_zero(r, Q);
    EXPECT_TRUE(v.probably_zero());
    EXPECT_GT(v.skipped, 0u);
}

TEST(Rit, DeterministicAcrossThreads) {
    Expr r = parse_expr("x1*x2*x3 - x3*x2*x1", 3, Q);
    RitConfig one;
    one.seed = 17;
    RitConfig many = one;
    many.threads = 4;
    many.trials = 9; // different cache key
    one.trials = 9;
    ZeroVerdict a = is_zero(r, Q, one);
    ZeroVerdict b = detail::is_zero_in(std::get<PrimeField>(make_sampling_field(Q, mix_seed(17, r.hash()))), r, 3, many,
                                       mix_seed(17, r.hash()));
    ASSERT_TRUE(a.nonzero() && b.nonzero());
    EXPECT_EQ(a.witness->mats, b.witness->mats);
}

TEST(Rit, Hua) {
    Expr x = Expr::var(0);
    Expr y = Expr::var(1);
    // x - (x^-1 + (y^-1 - x)^-1)^-1 = x y x
    Expr lhs = x - Expr::inv(Expr::inv(x) + Expr::inv(Expr::inv(y) - x));
    EXPECT_TRUE(eq_m(lhs, x * y * x, Q).probably_zero());
    EXPECT_TRUE(eq_m(lhs, y * x * x, Q).nonzero());
}

TEST(FullRank, SignInvolutionMatrix) {
    Mat<Expr> W(2, 2, Expr::one(Q));
    W(0, 1) = Expr::var(0);
    W(1, 1) = -Expr::var(0);
    RankVerdict v = full_rank_over_M(W, Q);
    EXPECT_TRUE(v.full);
    ASSERT_TRUE(v.witness);
}

TEST(FullRank, DeficientShapes) {
    Mat<Expr> A(2, 3, Expr::one(Q));
    A(0, 1) = Expr::var(0);
    A(1, 1) = -Expr::var(0);
    A(0, 2) = Expr::var(0) * Expr::var(0);
    A(1, 2) = Expr::var(0) * Expr::var(0);
    EXPECT_FALSE(full_rank_over_M(A, Q).full);
    Mat<Expr> Z(1, 1, Expr::zero(Q));
    EXPECT_FALSE(full_rank_over_M(Z, Q).full);
}

TEST(FullRank, CommutatorColumnsAreDependentOnlyCommutatively) {
    // [[x, xy], [1, y]] has second column = first column times y; swapping xy for yx
    // leaves a matrix that only looks deficient at 1x1 samples.
    Expr x = Expr::var(0);
    Expr y = Expr::var(1);
    Mat<Expr> A(2, 2, x);
    A(0, 1) = x * y;
    A(1, 0) = Expr::one(Q);
    A(1, 1) = y;
    EXPECT_FALSE(full_rank_over_M(A, Q).full);
    A(0, 1) = y * x;
    RankVerdict v = full_rank_over_M(A, Q);
    EXPECT_TRUE(v.full);
    EXPECT_GE(v.max_size, 2u);
}

TEST(FullRank, AllSamplesSkippedIsInconclusive) {
    Mat<Expr> A(1, 1, Expr::inv(Expr::zero(Q) * Expr::var(0)));
    EXPECT_THROW(full_rank_over_M(A, Q), Inconclusive);
}
