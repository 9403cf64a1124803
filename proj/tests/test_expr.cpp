#include "support.hpp"

#include <gtest/gtest.h>

using namespace skewfield;
using namespace testsupport;

namespace {

const FieldPtr Q = FieldSpec::rationals();

Mat<Scalar> E(std::size_t i, std::size_t j) {
    Mat<Scalar> m(2, 2, Scalar::zero(Q));
    m(i, j) = Scalar::one(Q);
    return m;
}

// Plain 2x2 product used as an oracle.
Mat<Scalar> mul2(const Mat<Scalar>& a, const Mat<Scalar>& b) {
    Mat<Scalar> r(2, 2, Scalar::zero(Q));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
        }
    }
    return r;
}

} // namespace

TEST(Expr, ParseCommutator) {
    Expr e = parse_expr("x1*x2 - x2*x1", 2, Q);
    EXPECT_GE(e.size(), 4u);
    EXPECT_EQ(e.op(), Op::sum);
    EXPECT_EQ(to_string(e), "x1*x2 - x2*x1");
}

TEST(Expr, ParseInverseExample) {
    Expr e = parse_expr("inv(x1 - x2*inv(x4)*x3)", 4, Q);
    EXPECT_EQ(e.op(), Op::inverse);
    EXPECT_EQ(to_string(e), "inv(x1 - x2*x4^-1*x3)");
    EXPECT_EQ(e.arity(), 4u);
}

TEST(Expr, SyntaxErrorColumn) {
    try {
        parse_expr("x1^-1 +", 1, Q);
        FAIL() << "expected a syntax error";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.column(), 7u);
    }
    EXPECT_THROW(parse_expr("x1 ** x2", 2, Q), SyntaxError);
    EXPECT_THROW(parse_expr("x0", 2, Q), SyntaxError);
    EXPECT_THROW(parse_expr("(x1", 2, Q), SyntaxError);
    EXPECT_THROW(parse_expr("x1^2", 2, Q), SyntaxError);
    EXPECT_THROW(parse_expr("1/0", 2, Q), SyntaxError);
    EXPECT_THROW(parse_expr("x3", 2, Q), UnknownVariable);
}

TEST(Expr, HashConsingSharesStructure) {
    Expr a = parse_expr("x1*x2 + inv(x1)", 2, Q);
    Expr b = parse_expr("x1*x2+inv(x1)", 2, Q);
    EXPECT_EQ(a, b);
    EXPECT_EQ(parse_expr("--x1", 1, Q), Expr::var(0));
    EXPECT_EQ(parse_expr("inv(inv(x1))", 1, Q), Expr::var(0));
    EXPECT_EQ(parse_expr("x1^-1^-1", 1, Q), Expr::var(0));
    EXPECT_TRUE(parse_expr("2*x1 - 2*x1 + 0*x2", 2, Q).op() == Op::sum);
    EXPECT_TRUE(parse_expr("0*x2", 2, Q).is_zero_const());
    EXPECT_EQ(parse_expr("1/2 + 1/2", 0, Q), Expr::one(Q));
}

TEST(Expr, CommutatorAtMatrixUnits) {
    Expr e = parse_expr("x1*x2 - x2*x1", 2, Q);
    MatrixTuple X{Q, 2, {E(0, 1), E(1, 0)}, {}};
    auto v = evaluate(e, X);
    auto oracle = mul2(E(0, 1), E(1, 0));
    auto other = mul2(E(1, 0), E(0, 1));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            oracle(i, j) = oracle(i, j) - other(i, j);
        }
    }
    EXPECT_EQ(v, oracle);
    EXPECT_EQ(v, int_matrix(Q, {{1, 0}, {0, -1}}));
}

TEST(Expr, ConstantIsScalarMatrix) {
    MatrixTuple X{Q, 3, {int_matrix(Q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})}, {}};
    auto v = evaluate(parse_expr("5/3", 1, Q), X);
    EXPECT_EQ(v, dense::scalar_matrix(ExactField(Q), 3, Scalar::parse(Q, "5/3")));
}

TEST(Expr, SingularInverseIsDomainError) {
    MatrixTuple X{Q, 2, {int_matrix(Q, {{0, 0}, {0, 0}})}, {}};
    EXPECT_THROW(evaluate(parse_expr("inv(x1)", 1, Q), X), DomainError);
}

TEST(Expr, SubstituteSwap) {
    Expr r = parse_expr("x1*x2", 2, Q);
    EXPECT_EQ(substitute(r, {Expr::var(1), Expr::var(0)}), parse_expr("x2*x1", 2, Q));
    EXPECT_EQ(substitute(r, identity_images(2)), r);
    EXPECT_THROW(substitute(r, {Expr::var(0)}), ArityMismatch);
}

TEST(Expr, SubstituteInvolutionImage) {
    Expr x = Expr::var(0);
    Expr y = Expr::var(1);
    Expr img = substitute(x, {inv(y) * x * y, y});
    ASSERT_EQ(img.op(), Op::product);
    ASSERT_EQ(img.num_kids(), 3u);
    EXPECT_EQ(img.kid(0), inv(y));
    EXPECT_EQ(img.kid(1), x);
    EXPECT_EQ(img.kid(2), y);
}

TEST(Expr, ExampleIdentityAgreesOnRandomTuples) {
    Expr lhs = parse_expr("inv(x1 - x2*inv(x4)*x3)", 4, Q);
    Expr rhs = parse_expr("inv(x1) + inv(x1)*x2*inv(x4 - x3*inv(x1)*x2)*x3*inv(x1)", 4, Q);
    Rng rng(2024);
    int compared = 0;
    for (int t = 0; t < 500; ++t) {
        auto X = random_tuple(Q, 4, 2 + t % 3, rng);
        try {
            auto a = evaluate(lhs, X);
            auto b = evaluate(rhs, X);
            EXPECT_EQ(a, b);
            ++compared;
        } catch (const DomainError&) {
        }
    }
    EXPECT_GT(compared, 400);
}

TEST(Expr, PrintParseRoundTrip) {
    Rng rng(99);
    const FieldPtr F = FieldSpec::parse("F(1000003)");
    int compared = 0;
    for (int t = 0; t < 300; ++t) {
        Expr e = random_expr(Q, 3, 1 + t % 15, rng);
        Expr back = parse_expr(to_string(e), 3, Q);
        EXPECT_EQ(to_string(back), to_string(e));
        auto X = random_tuple(Q, 3, 3, rng, 1000);
        try {
            EXPECT_EQ(evaluate(e, X), evaluate(back, X));
            ++compared;
        } catch (const DomainError&) {
        }
    }
    EXPECT_GT(compared, 200);
    (void)F;
}

TEST(Expr, SubstitutionIsFunctorial) {
    Rng rng(5);
    int compared = 0;
    for (int t = 0; t < 60; ++t) {
        Expr r = random_expr(Q, 2, 6, rng);
        std::vector<Expr> f{random_expr(Q, 2, 3, rng), random_expr(Q, 2, 3, rng)};
        std::vector<Expr> g{random_expr(Q, 2, 3, rng), random_expr(Q, 2, 3, rng)};
        Expr lhs = substitute(substitute(r, f), g);
        std::vector<Expr> gf{substitute(f[0], g), substitute(f[1], g)};
        Expr rhs = substitute(r, gf);
        auto X = random_tuple(Q, 2, 2, rng, 100);
        try {
            auto a = evaluate(lhs, X);
            auto b = evaluate(rhs, X);
            EXPECT_EQ(a, b);
            // evaluate(substitute(r, im), X) = evaluate(r, im(X))
            MatrixTuple Y{Q, 2, {evaluate(f[0], X), evaluate(f[1], X)}, {}};
            EXPECT_EQ(evaluate(substitute(r, f), X), evaluate(r, Y));
            ++compared;
        } catch (const DomainError&) {
        }
    }
    EXPECT_GT(compared, 20);
}

TEST(Expr, ExtensionConstants) {
    auto f4 = FieldSpec::parse("F(2,2)");
    Expr c = parse_expr("(0,1)*x1 + 1", 1, f4);
    EXPECT_EQ(to_string(c), "(0,1)*x1 + 1");
    EXPECT_EQ(parse_expr(to_string(c), 1, f4), c);
}

TEST(Simplify, LocalRewrites) {
    Expr x = Expr::var(0);
    Expr y = Expr::var(1);
    EXPECT_EQ(simplify(x - x, Q), Expr::zero(Q));
    EXPECT_EQ(simplify((-x) * (-x), Q), x * x);
    EXPECT_EQ(simplify(x * Expr::inv(x) * y, Q), y);
    EXPECT_EQ(simplify(y * x - x * Expr::inv(x) * y * x, Q), Expr::zero(Q));
    EXPECT_EQ(to_string(simplify(Expr::inv(Expr::integer(Q, -2) * x), Q)), "-1/2*x1^-1");
    EXPECT_EQ(to_string(simplify(-x - x + y, Q)), "-2*x1 + x2");
}

TEST(Simplify, PreservesValues) {
    Rng rng(404);
    int compared = 0;
    for (int c = 0; c < 300; ++c) {
        Expr r = random_expr(Q, 3, 1 + uniform_below(rng, 20), rng);
        Expr s = simplify(r, Q);
        MatrixTuple X = random_tuple(Q, 3, 2, rng);
        try {
            Mat<Scalar> a = evaluate(r, X, Q);
            EXPECT_EQ(a, evaluate(s, X, Q)) << to_string(r) << " vs " << to_string(s);
            ++compared;
        } catch (const DomainError&) {
        }
    }
    EXPECT_GT(compared, 200);
}
