#include <gtest/gtest.h>

#include "support/testkit.hpp"

using namespace lgf;
using namespace lgf::testkit;

namespace {
void expect(const Outcome& o) { EXPECT_TRUE(o.pass) << o.detail << " (" << o.cases << " cases)"; }
}  // namespace

TEST(SeriesProperty, ProductRule) { expect(product_rule(101, 1000)); }
TEST(SeriesProperty, FrobeniusStability) { expect(frobenius_stability(102, 1000)); }
TEST(SeriesProperty, AntiderivativeRule) { expect(antiderivative_rule(103, 1000)); }
TEST(SeriesProperty, GaussMultiplicativity) { expect(gauss_multiplicativity(104, 1000)); }

TEST(SlopeOracle, TriangularGeneric) { expect(triangular_generic_oracle(201, 30)); }
TEST(SlopeOracle, SpecialTwoByTwo) { expect(special_eigen_oracle(202, 100, 2)); }
TEST(SlopeOracle, SpecialThreeByThree) { expect(special_eigen_oracle(203, 100, 3)); }

TEST(Composites, ValidateAndSatisfyTheorems) {
    for (const Composite& c : random_composites(301, 6)) {
        ASSERT_TRUE(validate(c.module).pass) << c.recipe;
        const AnalysisOptions opt;
        const ModuleAnalysis a = analyze(c.module, opt);
        const CheckReport r = verify_theorems(c.module, a, opt, TheoremOptions{});
        for (const auto& ch : r.checks) EXPECT_TRUE(ch.pass) << c.recipe << ": " << ch.name << " " << ch.witnesses.dump();
    }
}
