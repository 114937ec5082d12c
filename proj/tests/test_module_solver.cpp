#include <gtest/gtest.h>

#include "lgf/examples.hpp"
#include "lgf/solver.hpp"

using namespace lgf;

namespace {
const FieldConfig F4{5, 4, 5};
const Rational half(1, 2);

Series t_pow(long e) { return Series::monomial(Scalar(1).bind(F4), e); }
}  // namespace

TEST(Module, MmuValidates) {
    ModulePresentation M = m_mu(half, F4, 625);
    ValidationReport r = validate(M);
    EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures[0]);
}

TEST(Module, SignFlipFailsAtFirstExponent) {
    ModulePresentation M = m_mu(half, F4, 625);
    M.G(0, 1) = -M.G(0, 1);
    M.generic_G.reset();
    ValidationReport r = validate(M);
    ASSERT_FALSE(r.pass);
    bool found = false;
    for (const auto& f : r.failures) found |= f.find("t^0") != std::string::npos;
    EXPECT_TRUE(found) << r.failures[0];
}

TEST(Module, DualMatrices) {
    ModulePresentation M = m_mu(half, F4, 625);
    ModulePresentation D = dual(M);
    const Scalar qi = q_power(-half, F4);
    EXPECT_EQ(D.A(0, 0), Series(Scalar(1).bind(F4)));
    EXPECT_TRUE(D.A(0, 1).is_zero());
    EXPECT_EQ(D.A(1, 0), t_pow(1));
    EXPECT_EQ(D.A(1, 1), Series(qi));
    EXPECT_EQ(D.G(1, 0), -M.G(0, 1));
    EXPECT_TRUE(validate(D).pass);
}

TEST(Module, DoubleDualIsIdentity) {
    ModulePresentation M = m_mu(half, F4, 625);
    ModulePresentation DD = dual(dual(M));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            EXPECT_EQ(DD.A(i, j), M.A(i, j));
            EXPECT_EQ(DD.G(i, j), M.G(i, j));
        }
}

TEST(Module, FunctorsValidate) {
    ModulePresentation M = m_mu(half, F4, 625);
    EXPECT_TRUE(validate(tensor(M, dual(M))).pass);
    EXPECT_TRUE(validate(direct_sum(M, trivial_module(1, F4))).pass);
    EXPECT_TRUE(validate(twist(M, q_power(1, F4))).pass);
    EXPECT_TRUE(validate(pushforward(M, 2)).pass);
    EXPECT_TRUE(validate(trivial_plus_twist(F4)).pass);
    EXPECT_THROW(twist(M, Scalar(0)), Error);
}

TEST(Module, FormMismatch) {
    ModulePresentation B = bessel0(F4, 20);
    EXPECT_THROW(tensor(B, m_mu(half, F4, 625)), Error);
}

TEST(Solver, MmuRows) {
    ModulePresentation M = m_mu(half, F4, 625);
    SolutionPackage S = solve_special(M, 625);
    EXPECT_EQ(S.Y(0, 0).part(0), Series(Scalar(1).bind(F4)).truncated(S.depth));
    EXPECT_TRUE(S.Y(0, 1).part(0).agrees_through(xmu(half, F4, 625), S.depth));
    EXPECT_TRUE(S.Y(1, 0).is_zero());
    EXPECT_EQ(S.C(0, 0), Scalar(1));
    EXPECT_TRUE(S.C(0, 1).is_zero());
    EXPECT_EQ(S.C(1, 1), q_power(-half, F4));
    EXPECT_TRUE(verify_package(M, S).pass);
}

TEST(Solver, TrivialPlusTwist) {
    SolutionPackage S = solve_special(trivial_plus_twist(F4), 32);
    EXPECT_EQ(S.C(0, 0), Scalar(1));
    EXPECT_EQ(S.C(1, 1), q_power(-1, F4));
}

TEST(Solver, BesselRows) {
    const long n = 40;
    ModulePresentation M = bessel0(F4, n);
    ValidationReport r = validate(M);
    EXPECT_TRUE(r.pass) << (r.failures.empty() ? "" : r.failures[0]);
    SolutionPackage S = solve_special(M, n);
    const Series b = bessel_b(F4, n), c = bessel_c(F4, n);
    const Series tb = derivative(b, DerivMode::t_d_dt), tc = derivative(c, DerivMode::t_d_dt);
    // row 2 is f1 = (-t b', b); row 1 is -f2
    EXPECT_TRUE(S.Y(1, 0).part(0).agrees_through(-tb, n));
    EXPECT_TRUE(S.Y(1, 1).part(0).agrees_through(b, n));
    EXPECT_TRUE(S.Y(0, 0).part(0).agrees_through(tc + b, n));
    EXPECT_TRUE(S.Y(0, 1).part(0).agrees_through(-c, n));
    EXPECT_TRUE(S.Y(0, 0).part(1).agrees_through(tb, n));
    EXPECT_TRUE(S.Y(0, 1).part(1).agrees_through(-b, n));
    EXPECT_EQ(S.C(0, 0), Scalar(1));
    EXPECT_EQ(S.C(1, 1), Scalar(Rational(1, 5)));
    EXPECT_TRUE(verify_package(M, S).pass);
}

TEST(Solver, NonNilpotentResidue) {
    ModulePresentation M = trivial_module(1, F4);
    M.omega = Omega::dt_over_t;
    M.G(0, 0) = Series(Scalar(1).bind(F4));
    EXPECT_THROW(solve_special(M, 8), Error);
}

TEST(Solver, GenericFirstStepIsG) {
    GenericPresentation E = to_generic(m_mu(half, F4, 625));
    GenericExpansion X = solve_generic(E, 4);
    EXPECT_EQ(X.U[1](0, 1), E.G(0, 1));
    EXPECT_TRUE(X.U[1](1, 0).is_zero());
}

TEST(Solver, CsvHeaderAndIndices) {
    SolutionPackage S = solve_special(m_mu(half, F4, 625), 30);
    std::string csv = solution_csv(S);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "solution_index,basis_index,t_exponent,log_degree,valuation_numerator,valuation_denominator");
    EXPECT_NE(csv.find("\n1,2,25,0,-1,1\n"), std::string::npos);  // q^{-mu} coefficient on t^25 at i = 2
}
