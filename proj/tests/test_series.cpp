#include <gtest/gtest.h>

#include "lgf/series.hpp"

using namespace lgf;

namespace {
const FieldConfig F1{5, 1, 5};
const FieldConfig F2{5, 2, 5};

Series t_pow(long e, long trunc = kExact) { return Series::monomial(Scalar(1).bind(F1), e, trunc); }
}  // namespace

TEST(Series, TruncationOfProducts) {
    Series a = Series(1) + t_pow(1) + Series::unknown(5);
    Series b = t_pow(2) + Series::unknown(7);
    Series c = a * b;
    EXPECT_EQ(c.trunc(), 7);  // min(5 + 2, 7 + 0)
    EXPECT_EQ(c.coeff(3), Scalar(1));
}

TEST(Series, IntegrateValuation) {
    Series f = Series::monomial(Scalar(1).bind(F1), 4);
    Series g = integrate(f);
    EXPECT_EQ(*g.coeff(5).valuation(), Rational(-1));
}

TEST(Series, ResidueObstruction) {
    EXPECT_THROW(integrate(t_pow(-1)), Error);
}

TEST(Series, DerivativeFloor) {
    EXPECT_THROW(derivative(t_pow(-1), DerivMode::d_dt, -1), Error);
    EXPECT_NO_THROW(derivative(t_pow(-1), DerivMode::t_d_dt, -1));
}

TEST(Series, InverseIsInverse) {
    Series f = Series(1) + t_pow(1) * Scalar(3) + t_pow(4) * Scalar(Rational(1, 5));
    Series g = inverse(f, 30);
    Series one = (f * g).truncated(30);
    EXPECT_TRUE(one.agrees_through(Series(1), 30));
}

TEST(Series, FrobeniusPowerPath) {
    Series x = xmu(Rational(1, 2), F2, 200);
    Series phi = t_pow(5);
    Series y = frobenius_substitute(x, phi, 5, 200);
    // phi(x_mu) = q^mu x_mu - q^mu t
    Scalar qmu = q_power(Rational(1, 2), F2);
    Series expect = (x - Series::monomial(Scalar(1).bind(F2), 1)) * qmu;
    EXPECT_TRUE(y.agrees_through(expect.truncated(200), 200));
}

TEST(Series, FrobeniusGeneralMatchesPowerPath) {
    Series f = Series(1) + t_pow(1) * Scalar(2) + t_pow(3);
    Series phi = t_pow(5) + t_pow(6) * Scalar(5);
    Series r = frobenius_substitute(f, phi, 5, 40);
    Series expect = Series(1) + phi * Scalar(2) + phi * phi * phi;
    EXPECT_TRUE(r.agrees_through(expect, 40));
}

TEST(Series, NotALift) {
    Series phi = t_pow(5) + t_pow(2);
    EXPECT_THROW(check_frobenius_lift(phi, 5), Error);
}

TEST(Series, LogDerivative) {
    // t d/dt (t L) = t L + t
    LogSeries f;
    f.set_part(1, t_pow(1));
    LogSeries d = derivative(f, DerivMode::t_d_dt);
    EXPECT_EQ(d.part(1), t_pow(1));
    EXPECT_EQ(d.part(0), t_pow(1));
}

TEST(Growth, XmuSnaps) {
    for (Rational mu : {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
        FieldConfig f{5, 4, 5};
        GrowthEstimate g = measure_log_growth(xmu(mu, f, 5 * 5 * 5 * 5 * 5 * 5), 5, GrowthOptions{});
        EXPECT_TRUE(g.snapped) << mu.get_str();
        EXPECT_EQ(g.upper, mu) << g.str();
    }
}

TEST(Growth, BoundedSeriesIsZero) {
    Series b = bessel_b(F2, 300);
    GrowthEstimate g = measure_log_growth(b, 5, GrowthOptions{});
    EXPECT_TRUE(g.exact);
    EXPECT_EQ(g.upper, 0);
}

TEST(Growth, EigenRelation) {
    FieldConfig f{5, 4, 5};
    Series x = xmu(Rational(3, 4), f, 3125);
    GrowthEstimate g = exact_growth_via_eigenrelation(LogSeries(x), q_power(Rational(3, 4), f), 1,
                                                      Series::monomial(Scalar(1).bind(f), 5), f, GrowthOptions{});
    EXPECT_EQ(g.upper, Rational(3, 4));
    EXPECT_TRUE(g.exact);
}

TEST(Growth, ZeroIsMinusInfinity) {
    EXPECT_TRUE(measure_log_growth(Series(), 5, GrowthOptions{}).minus_infinity);
}

TEST(Growth, EmptyWindow) {
    EXPECT_THROW(measure_log_growth(xmu(Rational(1, 2), F2, 8), 5, GrowthOptions{}), Error);
}
