#include <skewfield/dense.hpp>
#include <skewfield/eval_field.hpp>

#include <gtest/gtest.h>

using namespace skewfield;

TEST(EvalField, MontgomeryAgreesWithPlainModular) {
    const std::uint64_t p = detail::random_prime(3);
    PrimeField f(FieldSpec::rationals(), p);
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t a = uniform_below(rng, p);
        const std::uint64_t b = uniform_below(rng, p);
        const auto ma = f.from_u64(a);
        const auto mb = f.from_u64(b);
        EXPECT_EQ(f.to_string(f.mul(ma, mb)), f.to_string(f.from_u64(detail::mulmod(a, b, p))));
        if (b != 0) {
            EXPECT_EQ(f.mul(mb, f.inv(mb)), f.one());
        }
    }
}

TEST(EvalField, RationalReconstruction) {
    auto q = FieldSpec::rationals();
    PrimeField f(q, detail::random_prime(9));
    for (auto text : {"1/2", "-3/7", "12345/678", "0", "-1"}) {
        auto s = Scalar::parse(q, text);
        auto back = f.to_base(f.from_base(s));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, s);
    }
}

TEST(EvalField, ZechTableFieldMatchesExactExtension) {
    auto f2 = FieldSpec::parse("F(2)");
    auto sf = make_sampling_field(f2, 0);
    ASSERT_TRUE(std::holds_alternative<TableField>(sf));
    const auto& t = std::get<TableField>(sf);
    auto ext = t.witness_field();
    EXPECT_EQ(ext->k(), 16u);
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        auto a = t.sample(rng);
        auto b = t.sample(rng);
        auto ea = Scalar::parse(ext, t.to_string(a));
        auto eb = Scalar::parse(ext, t.to_string(b));
        EXPECT_EQ(Scalar::parse(ext, t.to_string(t.add(a, b))), ea + eb);
        EXPECT_EQ(Scalar::parse(ext, t.to_string(t.mul(a, b))), ea * eb);
        if (!t.is_zero(b)) {
            EXPECT_EQ(Scalar::parse(ext, t.to_string(t.inv(b))), eb.inv());
        }
    }
}

TEST(EvalField, EmbeddingOfExtensionBase) {
    auto f8 = FieldSpec::parse("F(2,3)");
    auto sf = make_sampling_field(f8, 0);
    ASSERT_TRUE(std::holds_alternative<TableField>(sf));
    const auto& t = std::get<TableField>(sf);
    EXPECT_EQ(t.witness_field()->k(), 18u);
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        auto a = sample_scalar(f8, rng);
        auto b = sample_scalar(f8, rng);
        EXPECT_EQ(t.mul(t.from_base(a), t.from_base(b)), t.from_base(a * b));
        EXPECT_EQ(t.add(t.from_base(a), t.from_base(b)), t.from_base(a + b));
        EXPECT_EQ(*t.to_base(t.from_base(a)), a);
    }
}

TEST(EvalField, F7UsesSeventhPowerExtension) {
    auto sf = make_sampling_field(FieldSpec::parse("F(7)"), 0);
    ASSERT_TRUE(std::holds_alternative<TableField>(sf));
    EXPECT_EQ(witness_field(sf)->order().value(), 117649u);
    const auto& t = std::get<TableField>(sf);
    EXPECT_EQ(t.to_string(t.add(t.from_int(3), t.from_int(5))), "1");
    EXPECT_EQ(t.to_string(t.neg(t.from_int(2))), "5");
}

TEST(Dense, InverseRankNullspace) {
    auto q = FieldSpec::rationals();
    ExactField f(q);
    Mat<Scalar> a(3, 3, f.zero());
    const int vals[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            a(i, j) = Scalar(q, vals[i][j]);
        }
    }
    auto inv = dense::inverse(f, a);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(dense::mul(f, a, *inv), dense::identity(f, 3));
    EXPECT_EQ(dense::rank(f, a), 3u);

    Mat<Scalar> s(2, 3, f.zero());
    s(0, 0) = Scalar(q, 1);
    s(0, 1) = Scalar(q, 2);
    s(0, 2) = Scalar(q, 3);
    s(1, 0) = Scalar(q, 2);
    s(1, 1) = Scalar(q, 4);
    s(1, 2) = Scalar(q, 6);
    EXPECT_EQ(dense::rank(f, s), 1u);
    auto ns = dense::nullspace(f, s);
    EXPECT_EQ(ns.cols(), 2u);
    EXPECT_TRUE(dense::is_zero(f, dense::mul(f, s, ns)));
    EXPECT_FALSE(dense::inverse(f, dense::mul(f, s.transpose(), s)).has_value());
}
