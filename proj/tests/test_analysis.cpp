#include <gtest/gtest.h>

#include "lgf/checks.hpp"
#include "lgf/examples.hpp"

using namespace lgf;

namespace {
const FieldConfig F4{5, 4, 5};
const Rational half(1, 2), quarter(1, 4), three_q(3, 4);

Multiset ms(std::initializer_list<Rational> l) { return Multiset(l); }

Mat<Scalar> diag(std::initializer_list<Scalar> d) {
    Mat<Scalar> m = zeros<Scalar>(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (const auto& x : d) {
        m(i, i) = x.bind(F4);
        ++i;
    }
    return m;
}

const ModuleAnalysis& mmu() {
    static const ModuleAnalysis a = analyze(m_mu(half, F4, 1250), AnalysisOptions{});
    return a;
}
const ModuleAnalysis& mmu_delta() {
    static const ModuleAnalysis a = analyze(m_mu_delta(quarter, three_q, F4, 1250), AnalysisOptions{});
    return a;
}
}  // namespace

TEST(Polygon, VerticesOfZeroOne) {
    NewtonPolygon np = newton_polygon(ms({1, 0}));
    ASSERT_EQ(np.vertices.size(), 3u);
    EXPECT_EQ(np.vertices[1], std::make_pair(Rational(1), Rational(0)));
    EXPECT_EQ(np.vertices[2], std::make_pair(Rational(2), Rational(1)));
    EXPECT_EQ(np.height(2), 1);
}

TEST(Polygon, CompareAndGap) {
    EXPECT_EQ(np_compare(newton_polygon(ms({0, 0, three_q})), newton_polygon(ms({0, 0, three_q}))), NpRelation::equal);
    EXPECT_EQ(np_compare(newton_polygon(ms({quarter, quarter})), newton_polygon(ms({0, half}))),
              NpRelation::above_same_endpoints);
    EXPECT_NE(np_compare(newton_polygon(ms({0, half})), newton_polygon(ms({quarter, quarter}))),
              NpRelation::above_same_endpoints);
    EXPECT_EQ(np_compare(newton_polygon(ms({0, 1})), newton_polygon(ms({0, half}))), NpRelation::endpoint_mismatch);
    EXPECT_FALSE(gap_check(newton_polygon(ms({0, Rational(3, 2), 2}))));
    EXPECT_TRUE(gap_check(newton_polygon(ms({0, 1, 2}))));
    EXPECT_THROW(np_compare(newton_polygon(ms({0})), newton_polygon(ms({0, 0}))), Error);
}

TEST(FrobeniusSpecial, DiagonalExamples) {
    EXPECT_EQ(frobenius_slopes_special(diag({q_power(-half, F4), 1}), F4), ms({-half, 0}));
    EXPECT_EQ(frobenius_slopes_special(diag({1, 1, 1}), F4), ms({0, 0, 0}));
    EXPECT_EQ(frobenius_slopes_special(diag({q_power(-three_q, F4), q_power(-quarter, F4), 1}), F4),
              ms({-three_q, -quarter, 0}));
    EXPECT_THROW(frobenius_slopes_special(diag({0, 1}), F4), Error);
}

TEST(FrobeniusGeneric, DiagonalAndTriangular) {
    Mat<RatFunc> A = zeros<RatFunc>(2, 2);
    A(0, 0) = RatFunc(Scalar(1).bind(F4));
    A(1, 1) = RatFunc(Scalar(5).bind(F4));
    EXPECT_EQ(frobenius_slopes_generic(A, F4).slopes, ms({0, 1}));
    EXPECT_EQ(frobenius_slopes_generic(to_generic(m_mu(half, F4, 64))).slopes, ms({0, half}));
}

TEST(FrobeniusGeneric, BesselViaInvariants) {
    GenericSlopeResult r = frobenius_slopes_generic(to_generic(bessel0(F4, 40)));
    EXPECT_TRUE(r.via_invariants);
    EXPECT_EQ(r.slopes, ms({0, 1}));
}

TEST(Growth, MmuSpecialTable) {
    const FiltrationReport& f = mmu().growth_special;
    EXPECT_EQ(f.dim_at(-1), 0);
    EXPECT_EQ(f.dim_at(0), 1);
    EXPECT_EQ(f.dim_at(quarter), 1);
    EXPECT_EQ(f.dim_at(half), 2);
    EXPECT_EQ(mmu().frobenius_special.slopes, ms({-half, 0}));
}

TEST(Growth, MmuDeltaSpecialTable) {
    const FiltrationReport& f = mmu_delta().growth_special;
    EXPECT_EQ(f.slopes, ms({0, 0, three_q}));
    EXPECT_EQ(f.dim_at(-1), 0);
    EXPECT_EQ(f.dim_at(half), 2);
    EXPECT_EQ(f.dim_at(three_q), 3);
}

TEST(Growth, DualOfMmuDelta) {
    // a spurious cancellation once reported {0, 1/4, 1/4}
    AnalysisOptions o;
    o.generic = false;
    ModuleAnalysis a = analyze(dual(m_mu_delta(quarter, three_q, F4, 1250)), o);
    EXPECT_EQ(a.growth_special.slopes, ms({0, quarter, three_q}));
}

TEST(Growth, TensorWithDual) {
    ModulePresentation M = m_mu(half, F4, 1250);
    ModuleAnalysis a = analyze(tensor(M, dual(M)), AnalysisOptions{});
    EXPECT_EQ(a.growth_special.slopes, ms({0, 0, half, 1}));
    EXPECT_EQ(a.growth_generic.slopes, ms({0, 0, half, 1}));
    EXPECT_FALSE(a.pbq.is_pbq);
}

TEST(Growth, SlopeOneGeneric) {
    // the generic window ends next to a plateau at 2 * 125
    ModuleAnalysis a = analyze(m_mu(Rational(1), F4, 1250), AnalysisOptions{});
    EXPECT_EQ(a.growth_generic.slopes, ms({0, 1}));
    EXPECT_TRUE(a.pbq.is_pbq);
}

TEST(ModuleFiltration, Examples) {
    const ModuleFiltration& m = mmu().module_filtration;
    ASSERT_EQ(m.breakpoints, ms({0, half}));
    EXPECT_EQ(m.dims, (std::vector<int>{1, 0}));
    ModuleAnalysis t = analyze(trivial_module(2, F4), AnalysisOptions{});
    EXPECT_EQ(t.module_filtration.dims, (std::vector<int>{0}));
    EXPECT_EQ(mmu_delta().module_filtration.dims.front(), 1);
    EXPECT_EQ(mmu_delta().growth_generic.slopes, ms({0, 0, three_q}));
}

TEST(Pbq, Verdicts) {
    EXPECT_TRUE(mmu().pbq.is_pbq);
    EXPECT_FALSE(mmu_delta().pbq.is_pbq);
    ModuleAnalysis d = analyze(dual(m_mu(half, F4, 1250)), AnalysisOptions{});
    EXPECT_TRUE(d.pbq.is_pbq);
    ModuleAnalysis s = analyze(trivial_plus_twist(F4), AnalysisOptions{});
    EXPECT_FALSE(s.pbq.is_pbq);
    EXPECT_EQ(s.pbq.bounded_solution_dim, 2);
    EXPECT_EQ(s.pbq.bounded_slope_multiset, ms({0, 1}));
}

TEST(Ct, Examples) {
    EXPECT_TRUE(mmu().ct.equality);
    const CtResult& c = mmu_delta().ct;
    EXPECT_TRUE(c.containment);
    EXPECT_FALSE(c.equality);
    ASSERT_EQ(c.strict_locus.size(), 1u);
    EXPECT_EQ(*c.strict_locus[0].lo, 0);
    EXPECT_EQ(*c.strict_locus[0].hi, half);
    ModuleAnalysis t = analyze(trivial_module(1, F4), AnalysisOptions{});
    EXPECT_TRUE(t.ct.equality);
    EXPECT_EQ(t.ct.lambda_max, 0);
}

TEST(Theorems, MmuWithTensorChecks) {
    TheoremOptions th;
    th.tensor_dual = true;
    CheckReport r = verify_theorems(m_mu(half, F4, 1250), mmu(), AnalysisOptions{}, th);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.find("semicontinuity")->witnesses["relation"], "equal");
    EXPECT_EQ(r.find("tensor_additivity")->witnesses["b_nabla_tensor"], "1");
    ASSERT_NE(r.find("extension_bound"), nullptr);
}

TEST(Theorems, GapBoundOnMmuDelta) {
    CheckReport r = verify_theorems(m_mu_delta(quarter, three_q, F4, 1250), mmu_delta(), AnalysisOptions{}, {});
    EXPECT_TRUE(r.find("gap_bound")->pass);
    EXPECT_TRUE(r.pass());
}

TEST(Report, JsonRoundTripAndStrictness) {
    CheckReport r = verify_ct(mmu());
    Json j = to_json(r);
    EXPECT_EQ(j["schema"], 1);
    CheckReport back = check_report_from_json(j);
    EXPECT_EQ(to_json(back), j);
    Json extra = j;
    extra["comment"] = "x";
    EXPECT_THROW(check_report_from_json(extra), Error);
    Json old = j;
    old["schema"] = 2;
    EXPECT_THROW(check_report_from_json(old), Error);
    Json inner = j;
    inner["checks"][0]["note"] = 1;
    EXPECT_THROW(check_report_from_json(inner), Error);
}

TEST(Report, Svg) {
    std::string s = polygons_svg({{"special", newton_polygon(ms({0, half}))}});
    EXPECT_NE(s.find("<path id=\"special\""), std::string::npos);
    EXPECT_EQ(s, polygons_svg({{"special", newton_polygon(ms({0, half}))}}));
}
