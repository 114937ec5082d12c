#include <gtest/gtest.h>

#include "lgf/field.hpp"

using namespace lgf;

namespace {
const FieldConfig F2{5, 2, 5};
const FieldConfig F4{5, 4, 5};
}  // namespace

TEST(Field, PiSquaredIsP) {
    Scalar pi = Scalar::pi(F2);
    EXPECT_EQ(pi * pi, Scalar(5));
}

TEST(Field, ConjugateProduct) {
    Scalar pi = Scalar::pi(F2);
    EXPECT_EQ((Scalar(1) + pi) * (Scalar(1) - pi), Scalar(-4));
}

TEST(Field, PiCubed) {
    Scalar pi = Scalar::pi(F2);
    EXPECT_EQ(pi.pow(3), pi * Scalar(5));
    EXPECT_EQ(pi.pow(3).str(), "(5) pi");
}

TEST(Field, Valuations) {
    Scalar x = Scalar::pi_power(2, F2, Rational(1, 14400));  // pi^2 / (5!)^2
    EXPECT_EQ(*x.valuation(), Rational(-1));
    EXPECT_EQ(*Scalar::pi(F4).valuation(), Rational(1, 4));
    EXPECT_EQ(*Scalar::pi_power(-3, F4).valuation(), Rational(-3, 4));
    EXPECT_FALSE(Scalar(0).bind(F2).valuation().has_value());
}

TEST(Field, LegendreFormula) {
    EXPECT_EQ(factorial_valuation(25, 5), 6);
    EXPECT_EQ(factorial_valuation(4, 5), 0);
    EXPECT_EQ(factorial_valuation(125, 5), 31);
}

TEST(Field, InverseRoundTrip) {
    Scalar a = Scalar(3).bind(F4) + Scalar::pi(F4) * Scalar(Rational(2, 7)) + Scalar::pi_power(3, F4);
    Scalar b = a.inverse();
    EXPECT_EQ(a * b, Scalar(1));
    EXPECT_EQ(*a.valuation() + *b.valuation(), Rational(0));
}

TEST(Field, MismatchedFields) {
    EXPECT_THROW(Scalar::pi(F2) + Scalar::pi(F4), Error);
    EXPECT_THROW(Scalar(0).bind(F2).inverse(), Error);
}

TEST(Field, ValuationIsMultiplicative) {
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            Scalar a = Scalar::pi_power(i, F4, Rational(2 * i + 7, 3)) + Scalar(1).bind(F4);
            Scalar b = Scalar::pi_power(j, F4, Rational(10, 3 + j * j));
            if (a.is_zero()) continue;
            EXPECT_EQ(*(a * b).valuation(), *a.valuation() + *b.valuation());
        }
}
