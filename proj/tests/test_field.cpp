#include <skewfield/field.hpp>

#include <gtest/gtest.h>

using namespace skewfield;

TEST(Field, RationalInverse) {
    auto q = FieldSpec::rationals();
    auto a = Scalar::parse(q, "2/3");
    EXPECT_EQ(a.inv(), Scalar::parse(q, "3/2"));
    EXPECT_EQ(a.inv().to_string(), "3/2");
}

TEST(Field, PrimeAddition) {
    auto f7 = FieldSpec::parse("F(7)");
    EXPECT_EQ(Scalar(f7, 3) + Scalar(f7, 5), Scalar(f7, 1));
    EXPECT_EQ((Scalar(f7, 3) - Scalar(f7, 5)).to_string(), "5");
}

TEST(Field, F4InverseByExhaustion) {
    auto f4 = FieldSpec::parse("F(2,2;m=x^2+x+1)");
    auto abar = Scalar::from_coeffs(f4, {0, 1});
    auto a1 = abar + Scalar::one(f4);
    // Search the four elements for the inverse of abar + 1.
    std::vector<Scalar> found;
    for (std::uint64_t c0 = 0; c0 < 2; ++c0) {
        for (std::uint64_t c1 = 0; c1 < 2; ++c1) {
            auto e = Scalar::from_coeffs(f4, {c0, c1});
            if ((a1 * e).is_one()) {
                found.push_back(e);
            }
        }
    }
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0], abar);
    EXPECT_EQ(a1.inv(), abar);
}

TEST(Field, DivisionByZero) {
    EXPECT_THROW(Scalar::zero(FieldSpec::rationals()).inv(), DivisionByZero);
    EXPECT_THROW(Scalar::zero(FieldSpec::parse("F(5)")).inv(), DivisionByZero);
}

TEST(Field, Mismatch) {
    EXPECT_THROW(Scalar(FieldSpec::parse("F(5)"), 1) + Scalar(FieldSpec::parse("F(7)"), 1), FieldMismatch);
    EXPECT_THROW(Scalar(FieldSpec::rationals(), 1) * Scalar(FieldSpec::parse("F(7)"), 1), FieldMismatch);
}

TEST(Field, SpecParsing) {
    EXPECT_TRUE(FieldSpec::parse("Q")->is_rational());
    auto f = FieldSpec::parse("F(2,3;m=x^3+x+1)");
    EXPECT_EQ(f->p(), 2u);
    EXPECT_EQ(f->k(), 3u);
    EXPECT_EQ(f->modulus(), (std::vector<std::uint64_t>{1, 1, 0, 1}));
    EXPECT_EQ(*FieldSpec::parse("F(2,3;m=1,1,0,1)"), *f);
    EXPECT_EQ(*FieldSpec::parse(f->to_string()), *f);
    EXPECT_THROW(FieldSpec::parse("F(6)"), FieldSpecError);
    EXPECT_THROW(FieldSpec::parse("F(2,2;m=x^2+1)"), FieldSpecError);
    EXPECT_THROW(FieldSpec::parse("R"), FieldSpecError);
}

TEST(Field, DefaultModuliAreIrreducible) {
    for (unsigned k = 1; k <= 8; ++k) {
        auto f = FieldSpec::finite(2, k);
        EXPECT_EQ(f->k(), k);
    }
    EXPECT_EQ(FieldSpec::finite(7, 6)->order().value(), 117649u);
}

TEST(Field, SamplingContracts) {
    auto q = FieldSpec::rationals();
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 200; ++i) {
        auto s = sample_scalar(q, a);
        EXPECT_GE(s.rational(), 0);
        EXPECT_LT(s.rational(), 65536);
        EXPECT_EQ(s.rational().get_den(), 1);
        EXPECT_EQ(s, sample_scalar(q, b));
    }
    auto f7 = FieldSpec::parse("F(7)");
    for (int i = 0; i < 200; ++i) {
        auto s = sample_scalar(f7, a);
        EXPECT_LT(s.coeffs()[0], 7u);
    }
}

namespace {

void check_axioms(const FieldPtr& f) {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        auto a = sample_scalar(f, rng, 1000) - sample_scalar(f, rng, 1000);
        auto b = sample_scalar(f, rng, 1000);
        auto c = sample_scalar(f, rng, 1000);
        if (f->is_rational()) {
            b = b / (c + Scalar(f, 1));
        }
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + (-a), Scalar::zero(f));
        if (!a.is_zero()) {
            EXPECT_TRUE((a * a.inv()).is_one());
        }
    }
}

} // namespace

TEST(Field, AxiomsRationals) { check_axioms(FieldSpec::rationals()); }
TEST(Field, AxiomsF7) { check_axioms(FieldSpec::parse("F(7)")); }
TEST(Field, AxiomsF8) { check_axioms(FieldSpec::parse("F(2,3)")); }
TEST(Field, AxiomsF81) { check_axioms(FieldSpec::parse("F(3,4)")); }

TEST(Field, CanonicalForms) {
    auto q = FieldSpec::rationals();
    EXPECT_EQ(Scalar::parse(q, "4/6").to_string(), "2/3");
    EXPECT_EQ(Scalar::parse(q, "-4/6").to_string(), "-2/3");
    auto f = FieldSpec::parse("F(5)");
    EXPECT_EQ(Scalar::parse(f, "-1").to_string(), "4");
    EXPECT_EQ(Scalar::parse(f, "1/2").to_string(), "3");
    auto f9 = FieldSpec::parse("F(3,2)");
    EXPECT_EQ(Scalar::parse(f9, "(1,2)").to_string(), "(1,2)");
    EXPECT_EQ(Scalar::parse(f9, "(4,0)").to_string(), "1");
}
