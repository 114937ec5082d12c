#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "lgf/pipeline.hpp"

namespace lgf {

using Json = nlohmann::json;

struct Check {
    std::string name;
    bool pass = false;
    Json witnesses = Json::object();
};

struct CheckReport {
    static constexpr int kSchema = 1;
    std::string label;
    std::vector<Check> checks;
    bool pass() const;
    const Check* find(const std::string& name) const;
};

Json to_json(const CheckReport& r);
/// SchemaError on a wrong schema version, a missing field or an unknown field.
CheckReport check_report_from_json(const Json& j);

struct TheoremOptions {
    bool dual_invariance = true;
    bool extension_bound = true;
    bool tensor_dual = false;  // b_nabla additivity and weak tensor against the dual
};

/// Containment at every grid point, and equality exactly when the PBQ test says so.
CheckReport verify_ct(const ModuleAnalysis& a);
/// verify_ct plus semicontinuity, gap bound, minimum generic slope, Frobenius height,
/// duality complement and the optional derived-module checks.
CheckReport verify_theorems(const ModulePresentation& M, const ModuleAnalysis& a, const AnalysisOptions& opt,
                            const TheoremOptions& th);

// Witness encodings shared with the CLI.
Json rational_json(const Rational& r);
Json multiset_json(const Multiset& ms);
Json polygon_json(const NewtonPolygon& np);
Json filtration_json(const FiltrationReport& f);
Json growth_json(const GrowthEstimate& g);
Json analysis_json(const ModuleAnalysis& a);

/// Polygons as SVG paths: one unit of rank and one unit of slope per 100 px.
std::string polygons_svg(const std::vector<std::pair<std::string, NewtonPolygon>>& polys);

}  // namespace lgf
