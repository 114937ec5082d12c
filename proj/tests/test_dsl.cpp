#include <gtest/gtest.h>

#include <random>

#include "lgf/document.hpp"
#include "lgf/examples.hpp"
#include "lgf/solver.hpp"

using namespace lgf;

namespace {
const FieldConfig F2{5, 2, 5};
const FieldConfig F4{5, 4, 5};

DslContext ctx(const FieldConfig& f, long depth = 8) {
    DslContext c;
    c.cfg = f;
    c.depth = depth;
    return c;
}

std::string corpus(const std::string& name) { return std::string(LGF_CORPUS_DIR) + "/modules/" + name; }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::ValidationFailed;
}

// Random expression over the scalar and series vocabulary.
std::string random_expr(std::mt19937& rng, int depth, bool series) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 3);
    std::uniform_int_distribution<int> small(1, 9);
    switch (pick(rng)) {
        case 0: return std::to_string(small(rng));
        case 1: return std::to_string(small(rng)) + "/" + std::to_string(small(rng));
        case 2: return series ? "t" : "pi";
        case 3: return std::vector<std::string>{"p", "q", "pi", "q^(1/2)", "pi^-1"}[static_cast<size_t>(small(rng) % 5)];
        case 4: return "(" + random_expr(rng, depth - 1, series) + ") + (" + random_expr(rng, depth - 1, series) + ")";
        case 5: return "(" + random_expr(rng, depth - 1, series) + ") - (" + random_expr(rng, depth - 1, series) + ")";
        case 6: return "(" + random_expr(rng, depth - 1, series) + ") * (" + random_expr(rng, depth - 1, series) + ")";
        default: return "(" + random_expr(rng, depth - 1, series) + ")^" + std::to_string(small(rng) % 3);
    }
}
}  // namespace

TEST(Dsl, ScalarLiterals) {
    const DslContext c = ctx(F2);
    EXPECT_EQ(parse_scalar("q^(1/2)", c), Scalar::pi(F2));
    EXPECT_EQ(parse_scalar("q^(-1/2) * pi", c), Scalar(1).bind(F2));
    EXPECT_EQ(parse_scalar("pi^2", c), Scalar(5).bind(F2));
    EXPECT_EQ(parse_scalar("p^(1/2)", c), Scalar::pi(F2));
    EXPECT_EQ(parse_scalar("-3/4 + 2 pi", c), Scalar(Rational(-3, 4)).bind(F2) + Scalar::pi(F2) * Scalar(2));
    EXPECT_EQ(*parse_scalar("q^(3/2) / 25", c).valuation(), Rational(-1, 2));
    EXPECT_EQ(parse_scalar("q(1 + p)", c), Scalar(30).bind(F2));
}

TEST(Dsl, IllegalExponent) {
    const DslContext c = ctx(F2);
    EXPECT_EQ(code_of([&] { parse_scalar("q^(1/3)", c); }), ErrorCode::IllegalExponent);
    EXPECT_EQ(code_of([&] { parse_scalar("pi^(1/2)", c); }), ErrorCode::IllegalExponent);
    EXPECT_EQ(code_of([&] { parse_scalar("(2 q)^(1/2)", c); }), ErrorCode::IllegalExponent);
    EXPECT_EQ(code_of([&] { parse_scalar("2^(1/2)", c); }), ErrorCode::IllegalExponent);
    EXPECT_NO_THROW(parse_scalar("q^(1/4)", ctx(F4)));
}

TEST(Dsl, ParseErrorsCarryColumns) {
    const DslContext c = ctx(F2);
    try {
        parse_scalar("1 + * 2", c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
    }
    EXPECT_EQ(code_of([&] { parse_scalar("(1 + 2", c); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_scalar("1 + t", c); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_scalar("mu", c); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_scalar("1 $ 2", c); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_series("L", c); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_ratfunc("xmu(1/2)", c); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_scalar("1 / (pi - pi)", c); }), ErrorCode::DivisionByZero);
}

TEST(Dsl, CanonicalScalarStringsParse) {
    const DslContext c = ctx(F4);
    Scalar x = Scalar(Rational(3, 7)).bind(F4) + Scalar::pi_power(2, F4, Rational(-5, 2)) + Scalar::pi_power(3, F4);
    EXPECT_EQ(parse_scalar(x.str(), c), x);
}

TEST(Dsl, SeriesEvaluation) {
    const DslContext c = ctx(F2, 5);
    Series geo = parse_series("1 / (1 - t)", c);
    EXPECT_EQ(geo.trunc(), 5);
    for (long k = 0; k <= 5; ++k) EXPECT_EQ(geo.coeff(k), Scalar(1));
    Series s = parse_series("t^-1 + 2 + O(t^3)", c);
    EXPECT_EQ(s.low(), -1);
    EXPECT_EQ(s.trunc(), 2);
    EXPECT_EQ(parse_series("xmu(1/2, 30)", c), xmu(Rational(1, 2), F2, 30));
    EXPECT_EQ(parse_series("gmu(1/2)", c).trunc(), 5);
    LogSeries l = parse_log_series("b + c L", [&] {
        DslContext d = c;
        d.params["b"] = Scalar(2);
        d.params["c"] = Scalar(3);
        return d;
    }());
    EXPECT_EQ(l.log_degree(), 1);
}

TEST(Dsl, RationalMode) {
    const DslContext c = ctx(F2);
    RatFunc f = parse_ratfunc("(1 + t^5) / (1 - t)", c);
    EXPECT_FALSE(f.is_polynomial());
    // common factors cancel
    EXPECT_EQ(format_ratfunc(parse_ratfunc("(1 + t^5) / (1 + t)", c)), "1 - t + t^2 - t^3 + t^4");
    EXPECT_EQ(format_ratfunc(parse_ratfunc("(t + t^2) / (2 t^3 + 2 t^4)", c)), "1/2 t^-2");
    EXPECT_EQ(format_ratfunc(parse_ratfunc(format_ratfunc(f), c)), format_ratfunc(f));
    EXPECT_EQ(parse_ratfunc("gmu(1/2, 24)", c), RatFunc(gmu_window(Rational(1, 2), F2, 3)));
    EXPECT_EQ(parse_ratfunc("t^-2", c), RatFunc(Series::monomial(Scalar(1).bind(F2), -2)));
}

TEST(Dsl, FormatRoundTripProperty) {
    std::mt19937 rng(7);
    int series_cases = 0;
    for (int k = 0; k < 400; ++k) {
        const bool series = k % 2 == 1;
        const std::string x = random_expr(rng, 3, series);
        const DslContext c = ctx(F2, 6);
        if (series) {
            std::string once;
            try {
                once = format_series(parse_series(x, c));
            } catch (const Error& e) {
                ASSERT_EQ(e.code(), ErrorCode::DivisionByZero) << x;
                continue;
            }
            ++series_cases;
            EXPECT_EQ(format_series(parse_series(once, c)), once) << x;
        } else {
            std::string once;
            try {
                once = format_scalar(parse_scalar(x, c));
            } catch (const Error& e) {
                ASSERT_EQ(e.code(), ErrorCode::DivisionByZero) << x;
                continue;
            }
            EXPECT_EQ(format_scalar(parse_scalar(once, c)), once) << x;
            EXPECT_EQ(parse_scalar(once, c), parse_scalar(x, c)) << x;
        }
    }
    EXPECT_GT(series_cases, 150);
}

TEST(Document, MmuFixtureMatchesBuilder) {
    ModuleDocument d = load_module_document(corpus("m_mu.json"));
    const ModulePresentation ref = m_mu(Rational(1, 2), F2, 1250);
    EXPECT_EQ(d.module.label, "m_mu");
    EXPECT_EQ(d.module.cfg, F2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            EXPECT_EQ(d.module.A(i, j), ref.A(i, j));
            EXPECT_EQ(d.module.G(i, j), ref.G(i, j));
            EXPECT_EQ((*d.module.generic_G)(i, j), (*ref.generic_G)(i, j));
        }
    EXPECT_EQ(d.module.phi_t, Series::monomial(Scalar(1).bind(F2), 5));
}

TEST(Document, BesselResidueIsNilpotent) {
    ModuleDocument d = load_module_document(corpus("bessel0.json"));
    EXPECT_EQ(d.module.omega, Omega::dt_over_t);
    EXPECT_EQ(d.special_depth, 625);
    EXPECT_EQ(d.module.G(0, 1), Series(Scalar(-1).bind(F4)));
    EXPECT_NO_THROW(solve_special(d.module, 40));
}

TEST(Document, AllFixturesValidate) {
    for (const char* f : {"rank_one.json", "direct_sum.json", "m_mu_delta.json", "tensor.json", "non_pbq_sub.json"})
        EXPECT_NO_THROW(load_module_document(corpus(f), {200, true})) << f;
}

TEST(Document, StrictSchema) {
    const std::string base = R"({"label":"x","field":{"p":5,"m":2,"q":5},"omega":"dt","rank":1,"A":[["q"]],"G":[["0"]])";
    EXPECT_NO_THROW(parse_module_document(base + "}"));
    EXPECT_EQ(code_of([&] { parse_module_document(base + R"(,"note":1})"); }), ErrorCode::SchemaError);
    EXPECT_EQ(code_of([&] { parse_module_document(R"({"label":"x"})"); }), ErrorCode::SchemaError);
    EXPECT_EQ(code_of([&] { parse_module_document(base + R"(,"params":{"t":"1"}})"); }), ErrorCode::SchemaError);
    try {
        parse_module_document("{\n  \"label\": \"x\",\n  oops\n}");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    try {
        parse_module_document(
            R"J({"label":"x","field":{"p":5,"m":2,"q":5},"omega":"dt","rank":1,"A":[["q^(1/3)"]],"G":[["0"]]})J");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IllegalExponent);
        EXPECT_NE(std::string(e.what()).find("A[1][1]"), std::string::npos) << e.what();
    }
}

TEST(Document, IncompatibleModuleFailsValidation) {
    // phi(e) = q e with nabla(e) = e dt violates d(A) + G A = q t^4 A phi(G)
    const std::string doc = R"({"label":"bad","field":{"p":5,"m":1,"q":5},"omega":"dt","rank":1,"A":[["q"]],"G":[["1"]]})";
    EXPECT_EQ(code_of([&] { parse_module_document(doc); }), ErrorCode::ValidationFailed);
    EXPECT_NO_THROW(parse_module_document(doc, {-1, false}));
}

TEST(Document, CanonicalJsonRoundTrip) {
    ModuleDocument d = load_module_document(corpus("non_pbq_sub.json"));
    const auto j = module_document_json(d.module);
    ModuleDocument back = parse_module_document(j.dump());
    EXPECT_EQ(module_document_json(back.module).dump(), j.dump());
    EXPECT_EQ(back.module.A(1, 1), d.module.A(1, 1));
}
