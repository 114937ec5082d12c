#include "lgf/checks.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lgf {

namespace {

Check make_check(const std::string& name, bool pass, Json w = Json::object()) {
    Check c;
    c.name = name;
    c.pass = pass;
    c.witnesses = std::move(w);
    return c;
}

void require_keys(const Json& j, const std::set<std::string>& keys, const std::string& where) {
    if (!j.is_object()) throw Error(ErrorCode::SchemaError, where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) throw Error(ErrorCode::SchemaError, "unknown field '" + k + "' in " + where);
    for (const auto& k : keys)
        if (!j.contains(k)) throw Error(ErrorCode::SchemaError, "missing field '" + k + "' in " + where);
}

Json ct_json(const CtResult& ct) {
    Json grid = Json::array();
    for (size_t i = 0; i < ct.grid.size(); ++i)
        grid.push_back({{"lambda", rational_json(ct.grid[i])},
                        {"growth_dim", ct.growth_dims[i]},
                        {"frobenius_dim", ct.frobenius_dims[i]}});
    Json locus = Json::array();
    for (const auto& iv : ct.strict_locus) locus.push_back(interval_str(iv));
    return {{"lambda_max", rational_json(ct.lambda_max)},
            {"grid", grid},
            {"containment", ct.containment},
            {"equality", ct.equality},
            {"strict_locus", locus}};
}

Json pbq_json(const PbqVerdict& v) {
    Json j = {{"is_pbq", v.is_pbq},
              {"bounded_solution_dim", v.bounded_solution_dim},
              {"lambda_max_generic", rational_json(v.lambda_max_generic)},
              {"multiset_computed", v.multiset_computed}};
    j["bounded_slope_multiset"] = v.multiset_computed ? multiset_json(v.bounded_slope_multiset) : Json(nullptr);
    return j;
}

Json module_filtration_json(const ModuleFiltration& m) {
    return {{"breakpoints", multiset_json(m.breakpoints)}, {"dims", m.dims}, {"slopes", multiset_json(m.slopes)}};
}

bool denominators_within(const Multiset& ms, long d) {
    return std::all_of(ms.begin(), ms.end(), [d](const Rational& r) { return r.get_den() <= d; });
}

}  // namespace

bool CheckReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* CheckReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

Json to_json(const CheckReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witnesses", c.witnesses}});
    return {{"schema", CheckReport::kSchema}, {"label", r.label}, {"pass", r.pass()}, {"checks", checks}};
}

CheckReport check_report_from_json(const Json& j) {
    require_keys(j, {"schema", "label", "pass", "checks"}, "check report");
    if (j["schema"] != CheckReport::kSchema)
        throw Error(ErrorCode::SchemaError, "unsupported schema " + j["schema"].dump());
    CheckReport r;
    r.label = j["label"].get<std::string>();
    if (!j["checks"].is_array()) throw Error(ErrorCode::SchemaError, "checks must be an array");
    for (const auto& c : j["checks"]) {
        require_keys(c, {"name", "pass", "witnesses"}, "check");
        r.checks.push_back(make_check(c["name"].get<std::string>(), c["pass"].get<bool>(), c["witnesses"]));
    }
    if (j["pass"].get<bool>() != r.pass()) throw Error(ErrorCode::SchemaError, "pass flag disagrees with the checks");
    return r;
}

Json rational_json(const Rational& r) { return rat_str(r); }

Json multiset_json(const Multiset& ms) {
    Json a = Json::array();
    for (const auto& x : ms) a.push_back(rat_str(x));
    return a;
}

Json polygon_json(const NewtonPolygon& np) {
    Json v = Json::array();
    for (const auto& [x, y] : np.vertices) v.push_back({rat_str(x), rat_str(y)});
    return {{"vertices", v}, {"slopes", multiset_json(np.slopes)}};
}

Json growth_json(const GrowthEstimate& g) {
    if (g.minus_infinity) return {{"minus_infinity", true}};
    return {{"lower", rat_str(g.lower)}, {"upper", rat_str(g.upper)}, {"exact", g.exact}, {"snapped", g.snapped}};
}

Json filtration_json(const FiltrationReport& f) {
    Json rows = Json::array();
    for (const auto& g : f.rows) rows.push_back(growth_json(g));
    Json j = {{"kind", filtration_kind_name(f.kind)},
              {"rank", f.rank},
              {"breakpoints", multiset_json(f.breakpoints)},
              {"dims", f.dims},
              {"slopes", multiset_json(f.slopes)},
              {"polygon", polygon_json(newton_polygon(f.slopes))}};
    if (!f.rows.empty()) j["rows"] = rows;
    return j;
}

Json analysis_json(const ModuleAnalysis& a) {
    Json j = {{"label", a.label},
              {"rank", a.rank},
              {"field", {{"p", a.cfg.p}, {"m", a.cfg.m}, {"q", a.cfg.q}}}};
    if (a.has_special) {
        Json C = Json::array();
        for (Eigen::Index i = 0; i < a.special.C.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < a.special.C.cols(); ++k) row.push_back(a.special.C(i, k).str());
            C.push_back(row);
        }
        j["special"] = {{"depth", a.special.depth},
                        {"residual_order", a.special.residual_order},
                        {"C", C},
                        {"growth", filtration_json(a.growth_special)},
                        {"frobenius", filtration_json(a.frobenius_special)},
                        {"b_nabla", rational_json(b_nabla(a.growth_special))}};
    }
    if (a.has_generic) {
        j["generic"] = {{"frobenius",
                         {{"slopes", multiset_json(a.frobenius_generic.slopes)},
                          {"partial_sums", multiset_json(a.frobenius_generic.partial_sums)},
                          {"iterations", a.frobenius_generic.iterations},
                          {"via_invariants", a.frobenius_generic.via_invariants}}},
                        {"growth", filtration_json(a.growth_generic)},
                        {"module_filtration", module_filtration_json(a.module_filtration)},
                        {"b_nabla", rational_json(b_nabla(a.growth_generic))},
                        {"pbq", pbq_json(a.pbq)}};
    }
    if (a.has_special && a.has_generic) j["ct"] = ct_json(a.ct);
    return j;
}

CheckReport verify_ct(const ModuleAnalysis& a) {
    if (!a.has_special || !a.has_generic)
        throw Error(ErrorCode::InsufficientSupport, "verify_ct needs both the special and the generic pipeline");
    CheckReport r;
    r.label = a.label;
    Json w = ct_json(a.ct);
    r.checks.push_back(make_check("ct_containment", a.ct.containment, w));
    w["is_pbq"] = a.pbq.is_pbq;
    r.checks.push_back(make_check("ct_equality_iff_pbq", a.ct.equality == a.pbq.is_pbq, w));
    return r;
}

CheckReport verify_theorems(const ModulePresentation& M, const ModuleAnalysis& a, const AnalysisOptions& opt,
                            const TheoremOptions& th) {
    CheckReport r = verify_ct(a);
    const NewtonPolygon sp = newton_polygon(a.growth_special.slopes);
    const NewtonPolygon gp = newton_polygon(a.growth_generic.slopes);

    NpRelation rel = np_compare(sp, gp);
    r.checks.push_back(make_check(
        "semicontinuity", rel == NpRelation::above_same_endpoints || rel == NpRelation::equal,
        {{"relation", np_relation_name(rel)}, {"special", polygon_json(sp)}, {"generic", polygon_json(gp)}}));

    r.checks.push_back(make_check("gap_bound", gap_check(gp), {{"generic", polygon_json(gp)}}));

    const Rational min_generic = a.growth_generic.slopes.front();
    r.checks.push_back(make_check("min_generic_slope_zero", min_generic == 0,
                                  {{"generic_slopes", multiset_json(a.growth_generic.slopes)}}));

    const long D = opt.growth.snap_denominator;
    r.checks.push_back(make_check(
        "rational_slopes", denominators_within(a.growth_special.slopes, D) && denominators_within(a.growth_generic.slopes, D),
        {{"snap_denominator", D},
         {"special", multiset_json(a.growth_special.slopes)},
         {"generic", multiset_json(a.growth_generic.slopes)}}));

    const NewtonPolygon fp = newton_polygon(a.frobenius_special.slopes);
    const Valuation vdet = valuation(det(a.special.C).bind(M.cfg));
    const Rational expected = vdet ? *vdet / M.cfg.log_q() : Rational(0);
    const Rational height = fp.height(fp.width());
    r.checks.push_back(make_check("frobenius_height", vdet && height == expected,
                                  {{"polygon", polygon_json(fp)},
                                   {"height", rational_json(height)},
                                   {"det_valuation_over_a", rational_json(expected)}}));

    bool complement = a.module_filtration.dims.size() == a.growth_generic.dims.size();
    for (size_t i = 0; complement && i < a.growth_generic.dims.size(); ++i)
        complement = a.module_filtration.dims[i] == a.rank - a.growth_generic.dims[i];
    r.checks.push_back(make_check("duality_complement", complement,
                                  {{"breakpoints", multiset_json(a.growth_generic.breakpoints)},
                                   {"sol_dims", a.growth_generic.dims},
                                   {"module_dims", a.module_filtration.dims}}));

    const Rational b = b_nabla(a.growth_generic);
    if (th.dual_invariance) {
        const Rational bd = generic_b_nabla(dual(a.generic), opt);
        r.checks.push_back(make_check("dual_invariance", b == bd,
                                      {{"b_nabla", rational_json(b)}, {"b_nabla_dual", rational_json(bd)}}));
    }

    if (th.extension_bound) {
        const std::vector<int> cuts = stable_prefixes(a.generic);
        if (!cuts.empty()) {
            bool ok = true;
            Json ext = Json::array();
            for (int c : cuts) {
                const Rational bs = generic_b_nabla(block(a.generic, 0, c), opt);
                const Rational bq = generic_b_nabla(block(a.generic, c, a.rank), opt);
                const bool pass = b <= bs + bq + 1;
                ok = ok && pass;
                ext.push_back({{"sub_rank", c},
                               {"b_sub", rational_json(bs)},
                               {"b_quotient", rational_json(bq)},
                               {"pass", pass}});
            }
            r.checks.push_back(make_check("extension_bound", ok, {{"b_nabla", rational_json(b)}, {"extensions", ext}}));
        }
    }

    if (th.tensor_dual) {
        AnalysisOptions so = opt;
        so.generic = false;
        const ModulePresentation D = dual(M);
        const ModuleAnalysis ad = analyze(D, so);
        const ModuleAnalysis at = analyze(tensor(M, D), so);
        const Rational bm = b_nabla(a.growth_special), bn = b_nabla(ad.growth_special), bt = b_nabla(at.growth_special);
        r.checks.push_back(make_check("tensor_additivity", bt == bm + bn,
                                      {{"b_nabla", rational_json(bm)},
                                       {"b_nabla_dual", rational_json(bn)},
                                       {"b_nabla_tensor", rational_json(bt)},
                                       {"tensor_slopes", multiset_json(at.growth_special.slopes)}}));
        bool weak = true;
        Json missing = Json::array();
        const auto& ts = at.growth_special.slopes;
        for (const auto& x : a.growth_special.breakpoints)
            for (const auto& y : ad.growth_special.breakpoints)
                if (std::find(ts.begin(), ts.end(), x + y) == ts.end()) {
                    weak = false;
                    missing.push_back(rat_str(x + y));
                }
        r.checks.push_back(make_check("weak_tensor", weak,
                                      {{"slopes", multiset_json(a.growth_special.slopes)},
                                       {"dual_slopes", multiset_json(ad.growth_special.slopes)},
                                       {"tensor_slopes", multiset_json(ts)},
                                       {"missing_sums", missing}}));
    }
    return r;
}

std::string polygons_svg(const std::vector<std::pair<std::string, NewtonPolygon>>& polys) {
    constexpr double kUnit = 100.0, kPad = 40.0;
    double w = 1, lo = 0, hi = 0;
    for (const auto& [name, np] : polys) {
        w = std::max(w, static_cast<double>(np.width()));
        for (const auto& [x, y] : np.vertices) {
            lo = std::min(lo, y.get_d());
            hi = std::max(hi, y.get_d());
        }
    }
    const double width = w * kUnit + 2 * kPad, height = std::max(hi - lo, 1.0) * kUnit + 2 * kPad;
    auto px = [&](const Rational& x) { return kPad + x.get_d() * kUnit; };
    auto py = [&](const Rational& y) { return kPad + (hi - y.get_d()) * kUnit; };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    size_t k = 0;
    for (const auto& [name, np] : polys) {
        os << "  <path id=\"" << name << "\" fill=\"none\" stroke=\"" << colors[k % 5] << "\" stroke-width=\"2\" d=\"";
        for (size_t i = 0; i < np.vertices.size(); ++i)
            os << (i ? " L " : "M ") << px(np.vertices[i].first) << " " << py(np.vertices[i].second);
        os << "\"/>\n";
        for (const auto& [x, y] : np.vertices)
            os << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << colors[k % 5] << "\"/>\n";
        ++k;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace lgf
