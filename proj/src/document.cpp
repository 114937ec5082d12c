#include "lgf/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace lgf {

namespace {

using OJson = nlohmann::ordered_json;

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

void only_keys(const OJson& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) schema(where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) schema("unknown field '" + k + "' in " + where);
}

const OJson& required(const OJson& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) schema("missing field '" + key + "' in " + where);
    return j.at(key);
}

long integer(const OJson& j, const std::string& where) {
    if (!j.is_number_integer()) schema(where + " must be an integer");
    return j.get<long>();
}

std::string entry_text(const OJson& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    schema(where + " must be a string or an integer");
}

// Prefixes DSL errors with the JSON location.
template <class F>
auto at(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        std::string msg = e.what();
        const std::string prefix = std::string(error_name(e.code())) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
        throw Error(e.code(), where + ", " + msg);
    }
}

template <class T, class F>
Mat<T> matrix(const OJson& j, int n, const std::string& name, F&& eval) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) schema(name + " must have " + std::to_string(n) + " rows");
    Mat<T> m = zeros<T>(n, n);
    for (int i = 0; i < n; ++i) {
        const OJson& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            schema(name + " row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k) {
            const std::string where = name + "[" + std::to_string(i + 1) + "][" + std::to_string(k + 1) + "]";
            const std::string text = entry_text(row[static_cast<size_t>(k)], where);
            m(i, k) = at(where, [&] { return eval(parse_expression(text)); });
        }
    }
    return m;
}

void add_param(DslContext& ctx, const std::string& name, const std::string& text) {
    if (name.empty() || name == "p" || name == "q" || name == "pi" || name == "t" || name == "L")
        schema("parameter name '" + name + "' is reserved");
    ctx.params[name] = at("params." + name, [&] { return parse_scalar(text, ctx); });
}

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t");
    const size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ModuleDocument parse_module_document(const std::string& text, const DocumentOptions& opt) {
    OJson j;
    try {
        j = OJson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
    }
    only_keys(j, {"label", "field", "omega", "rank", "phi_t", "params", "A", "G", "generic", "depth"}, "document");

    ModuleDocument doc;
    const OJson& field = required(j, "field", "document");
    only_keys(field, {"p", "m", "q"}, "field");
    FieldConfig cfg{integer(required(field, "p", "field"), "field.p"),
                    static_cast<int>(integer(required(field, "m", "field"), "field.m")),
                    integer(required(field, "q", "field"), "field.q")};
    cfg.check();

    if (j.contains("depth")) {
        const OJson& d = j["depth"];
        only_keys(d, {"special", "generic"}, "depth");
        if (d.contains("special")) doc.special_depth = integer(d["special"], "depth.special");
        if (d.contains("generic")) doc.generic_depth = integer(d["generic"], "depth.generic");
    }
    DslContext& ctx = doc.context;
    ctx.cfg = cfg;
    ctx.depth = opt.depth >= 0 ? opt.depth : doc.special_depth >= 0 ? doc.special_depth : 2 * cfg.p * cfg.p * cfg.p * cfg.p;

    if (j.contains("params")) {
        const OJson& ps = j["params"];
        if (ps.is_object()) {
            for (const auto& [k, v] : ps.items()) add_param(ctx, k, entry_text(v, "params." + k));
        } else if (ps.is_array()) {
            for (const auto& v : ps) {
                if (!v.is_string()) schema("params entries must be \"name = expr\" strings");
                const std::string s = v.get<std::string>();
                const size_t eq = s.find('=');
                if (eq == std::string::npos) schema("params entry '" + s + "' has no '='");
                add_param(ctx, trim(s.substr(0, eq)), s.substr(eq + 1));
            }
        } else {
            schema("params must be an object or an array");
        }
    }

    const OJson& label = required(j, "label", "document");
    if (!label.is_string()) schema("label must be a string");
    const long rank = integer(required(j, "rank", "document"), "rank");
    if (rank < 1 || rank > 64) schema("rank must be between 1 and 64");
    const OJson& omega = required(j, "omega", "document");
    if (omega != "dt" && omega != "dt/t") schema("omega must be \"dt\" or \"dt/t\"");

    ModulePresentation& M = doc.module;
    M = trivial_module(static_cast<int>(rank), cfg);
    M.label = label.get<std::string>();
    M.omega = omega == "dt" ? Omega::dt : Omega::dt_over_t;
    const std::string phi = j.contains("phi_t") ? entry_text(j["phi_t"], "phi_t") : "t^q";
    M.phi_t = at("phi_t", [&] { return parse_series(phi, ctx); });
    const int n = static_cast<int>(rank);
    auto series = [&](const Expr& e) { return eval_series(e, ctx); };
    auto ratfunc = [&](const Expr& e) { return eval_ratfunc(e, ctx); };
    M.A = matrix<Series>(required(j, "A", "document"), n, "A", series);
    M.G = matrix<Series>(required(j, "G", "document"), n, "G", series);
    if (j.contains("generic")) {
        const OJson& g = j["generic"];
        only_keys(g, {"A", "G"}, "generic");
        if (g.contains("A")) M.generic_A = matrix<RatFunc>(g["A"], n, "generic.A", ratfunc);
        if (g.contains("G")) M.generic_G = matrix<RatFunc>(g["G"], n, "generic.G", ratfunc);
    }

    if (opt.validate) {
        ValidationReport r = validate(M);
        if (!r.pass) {
            std::string msg = M.label + ":";
            for (const auto& f : r.failures) msg += " " + f + ";";
            throw Error(ErrorCode::ValidationFailed, msg);
        }
    }
    return doc;
}

ModuleDocument load_module_document(const std::string& path, const DocumentOptions& opt) {
    try {
        return parse_module_document(read_text_file(path), opt);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + std::string(e.what()).substr(std::string(error_name(e.code())).size() + 2));
    }
}

nlohmann::ordered_json module_document_json(const ModulePresentation& M) {
    auto rows = [&](const auto& m, auto fmt) {
        OJson a = OJson::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            OJson r = OJson::array();
            for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(fmt(m(i, k)));
            a.push_back(r);
        }
        return a;
    };
    OJson j;
    j["label"] = M.label;
    j["field"] = {{"p", M.cfg.p}, {"m", M.cfg.m}, {"q", M.cfg.q}};
    j["omega"] = omega_name(M.omega);
    j["rank"] = M.rank;
    j["phi_t"] = format_series(M.phi_t);
    j["A"] = rows(M.A, format_series);
    j["G"] = rows(M.G, format_series);
    if (M.generic_A || M.generic_G) {
        OJson g = OJson::object();
        if (M.generic_A) g["A"] = rows(*M.generic_A, format_ratfunc);
        if (M.generic_G) g["G"] = rows(*M.generic_G, format_ratfunc);
        j["generic"] = g;
    }
    return j;
}

}  // namespace lgf
