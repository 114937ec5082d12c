#include "lgf/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>

namespace lgf {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kGoldenKeys = {"growth_special",  "growth_generic", "frobenius_special",
                                           "frobenius_generic", "pbq",           "ct_strict",
                                           "b_nabla_special", "b_nabla_generic"};

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) schema(where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) schema("unknown field '" + k + "' in " + where);
}

std::string str_field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string()) schema(where + " needs a string '" + key + "'");
    return j[key].get<std::string>();
}

Json actual_value(const std::string& key, const ModuleAnalysis& a) {
    if (key == "growth_special") return multiset_json(a.growth_special.slopes);
    if (key == "growth_generic") return multiset_json(a.growth_generic.slopes);
    if (key == "frobenius_special") return multiset_json(a.frobenius_special.slopes);
    if (key == "frobenius_generic") return multiset_json(a.frobenius_generic.slopes);
    if (key == "pbq") return a.pbq.is_pbq;
    if (key == "b_nabla_special") return rational_json(b_nabla(a.growth_special));
    if (key == "b_nabla_generic") return rational_json(b_nabla(a.growth_generic));
    Json s = Json::array();
    for (const auto& i : a.ct.strict_locus) s.push_back(interval_str(i));
    return s;
}

Scalar twist_scalar(const Expr& e, const FieldConfig& cfg) {
    DslContext ctx;
    ctx.cfg = cfg;
    return eval_scalar(e, ctx);
}

long int_arg(const Expr& e, const FieldConfig& cfg) {
    DslContext ctx;
    ctx.cfg = cfg;
    const Rational r = eval_rational(e, ctx);
    if (r.get_den() != 1 || !r.get_num().fits_sint_p()) schema("expected a small integer argument");
    return r.get_num().get_si();
}

ModulePresentation build(const Expr& e, const std::map<std::string, ModuleDocument>& docs) {
    if (e.kind == Expr::Kind::symbol) {
        auto it = docs.find(e.name);
        if (it == docs.end()) schema("unknown module '" + e.name + "'");
        return it->second.module;
    }
    if (e.kind != Expr::Kind::call) schema("build expressions are functor calls and module names");
    auto arity = [&](size_t n) {
        if (e.args.size() != n) schema(e.name + " takes " + std::to_string(n) + " arguments");
    };
    if (e.name == "dual" || e.name == "sym2") {
        arity(1);
        const ModulePresentation M = build(e.args[0], docs);
        return e.name == "dual" ? dual(M) : sym2(M);
    }
    if (e.name == "tensor" || e.name == "direct_sum") {
        arity(2);
        const ModulePresentation M = build(e.args[0], docs), N = build(e.args[1], docs);
        return e.name == "tensor" ? tensor(M, N) : direct_sum(M, N);
    }
    if (e.name == "twist") {
        arity(2);
        const ModulePresentation M = build(e.args[0], docs);
        return twist(M, twist_scalar(e.args[1], M.cfg));
    }
    if (e.name == "pushforward") {
        arity(2);
        const ModulePresentation M = build(e.args[0], docs);
        return pushforward(M, static_cast<int>(int_arg(e.args[1], M.cfg)));
    }
    if (e.name == "block") {
        arity(3);
        const ModulePresentation M = build(e.args[0], docs);
        return block(M, static_cast<int>(int_arg(e.args[1], M.cfg)), static_cast<int>(int_arg(e.args[2], M.cfg)));
    }
    schema("unknown functor '" + e.name + "'");
}

}  // namespace

CorpusEntry load_corpus_entry(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": malformed JSON at byte " + std::to_string(e.byte));
    }
    const std::string where = "corpus entry " + path;
    only_keys(j, {"label", "section", "modules", "build", "options", "theorems", "golden"}, where);
    CorpusEntry e;
    e.path = path;
    e.label = str_field(j, "label", where);
    e.section = str_field(j, "section", where);
    const fs::path dir = fs::path(path).parent_path();
    if (!j.contains("modules") || !j["modules"].is_object() || j["modules"].empty()) schema(where + " needs modules");
    for (const auto& [name, p] : j["modules"].items()) {
        if (!p.is_string()) schema(where + ": module paths are strings");
        e.modules[name] = (dir / p.get<std::string>()).lexically_normal().string();
    }
    if (j.contains("build")) {
        e.build = str_field(j, "build", where);
    } else {
        if (e.modules.size() != 1) schema(where + " needs 'build' when it names several modules");
        e.build = e.modules.begin()->first;
    }
    if (j.contains("options")) {
        only_keys(j["options"], {"special_depth", "generic_depth"}, where + " options");
        if (j["options"].contains("special_depth")) e.special_depth = j["options"]["special_depth"].get<long>();
        if (j["options"].contains("generic_depth")) e.generic_depth = j["options"]["generic_depth"].get<long>();
    }
    if (j.contains("theorems")) {
        const Json& t = j["theorems"];
        only_keys(t, {"dual_invariance", "extension_bound", "tensor_dual"}, where + " theorems");
        e.theorems.dual_invariance = t.value("dual_invariance", e.theorems.dual_invariance);
        e.theorems.extension_bound = t.value("extension_bound", e.theorems.extension_bound);
        e.theorems.tensor_dual = t.value("tensor_dual", e.theorems.tensor_dual);
    }
    if (!j.contains("golden")) schema(where + " needs golden values");
    for (const auto& [key, g] : j["golden"].items()) {
        if (!kGoldenKeys.count(key)) schema(where + ": unknown golden key '" + key + "'");
        only_keys(g, {"value", "source"}, where + " golden." + key);
        if (!g.contains("value")) schema(where + " golden." + key + " needs a value");
        const std::string src = str_field(g, "source", where + " golden." + key);
        if (src.rfind("[PAPER", 0) != 0 && src.rfind("[DERIVED", 0) != 0)
            schema(where + " golden." + key + ": source must start with [PAPER or [DERIVED");
        e.golden[key] = Golden{g["value"], src};
    }
    return e;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
    const fs::path root = fs::path(dir) / "entries";
    if (!fs::is_directory(root)) throw Error(ErrorCode::SchemaError, "no entries directory in " + dir);
    std::vector<CorpusEntry> out;
    for (const auto& f : fs::directory_iterator(root))
        if (f.path().extension() == ".json") out.push_back(load_corpus_entry(f.path().string()));
    std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.label < b.label; });
    for (size_t k = 1; k < out.size(); ++k)
        if (out[k].label == out[k - 1].label) schema("duplicate corpus label " + out[k].label);
    return out;
}

AnalysisOptions analysis_options(long doc_special, long doc_generic, const RunOptions& run) {
    AnalysisOptions o;
    if (doc_special >= 0) o.special_depth = doc_special;
    if (doc_generic >= 0) o.generic_depth = doc_generic;
    if (run.depth >= 0) o.special_depth = run.depth;
    if (run.generic_depth >= 0) o.generic_depth = run.generic_depth;
    if (run.window_lo >= 0) o.growth.window_lo = run.window_lo;
    if (run.window_hi >= -1) o.growth.window_hi = run.window_hi;
    if (run.snap_denominator > 0) o.growth.snap_denominator = run.snap_denominator;
    if (run.tol) o.growth.tol = *run.tol;
    return o;
}

ModulePresentation build_module(const std::string& expr, const std::map<std::string, ModuleDocument>& docs) {
    return build(parse_expression(expr), docs);
}

EntryModule load_entry_module(const CorpusEntry& e, const RunOptions& run) {
    DocumentOptions dopt;
    dopt.depth = run.depth >= 0 ? run.depth : e.special_depth;
    std::map<std::string, ModuleDocument> docs;
    long hint_s = -1, hint_g = -1;
    for (const auto& [name, path] : e.modules) {
        ModuleDocument d = load_module_document(path, dopt);
        hint_s = std::max(hint_s, d.special_depth);
        hint_g = std::max(hint_g, d.generic_depth);
        docs.emplace(name, std::move(d));
    }
    EntryModule out;
    out.module = build_module(e.build, docs);
    out.module.label = e.label;
    out.options = analysis_options(e.special_depth >= 0 ? e.special_depth : hint_s,
                                   e.generic_depth >= 0 ? e.generic_depth : hint_g, run);
    return out;
}

EntryResult run_entry(const CorpusEntry& e, const RunOptions& run) {
    EntryResult r;
    r.report.label = e.label;
    r.analysis = nullptr;
    try {
        const EntryModule em = load_entry_module(e, run);
        const ModulePresentation& M = em.module;
        const AnalysisOptions& opt = em.options;
        const ModuleAnalysis a = analyze(M, opt);
        for (const auto& [key, g] : e.golden) {
            const Json actual = actual_value(key, a);
            r.report.checks.push_back(
                {"golden." + key, actual == g.value, {{"expected", g.value}, {"actual", actual}, {"source", g.source}}});
        }
        const CheckReport th = verify_theorems(M, a, opt, e.theorems);
        r.report.checks.insert(r.report.checks.end(), th.checks.begin(), th.checks.end());
        r.analysis = analysis_json(a);
    } catch (const Error& err) {
        r.report.checks = {{"pipeline", false, {{"error", error_name(err.code())}, {"message", err.what()}}}};
    }
    return r;
}

bool CorpusRun::pass() const {
    return std::all_of(results.begin(), results.end(), [](const EntryResult& r) { return r.report.pass(); });
}

Json CorpusRun::to_json() const {
    Json reports = Json::array();
    for (const auto& r : results) reports.push_back(lgf::to_json(r.report));
    return {{"schema", CheckReport::kSchema}, {"pass", pass()}, {"reports", reports}};
}

std::string CorpusRun::summary() const {
    std::ostringstream os;
    size_t width = 5;
    for (const auto& r : results) width = std::max(width, r.report.label.size());
    for (const auto& r : results) {
        size_t ok = 0;
        for (const auto& c : r.report.checks) ok += c.pass ? 1 : 0;
        os << r.report.label << std::string(width + 2 - r.report.label.size(), ' ') << (r.report.pass() ? "PASS" : "FAIL")
           << "  " << ok << "/" << r.report.checks.size();
        for (const auto& c : r.report.checks) {
            if (c.pass) continue;
            os << "  " << c.name;
            if (c.witnesses.contains("error")) os << " " << c.witnesses["error"].get<std::string>();
            if (c.witnesses.contains("expected"))
                os << " expected " << c.witnesses["expected"].dump() << " got " << c.witnesses["actual"].dump();
        }
        os << "\n";
    }
    os << (pass() ? "corpus: all entries pass\n" : "corpus: FAILURES\n");
    return os.str();
}

CorpusRun run_corpus(const std::vector<CorpusEntry>& entries, const RunOptions& run) {
    std::vector<const CorpusEntry*> todo;
    for (const auto& e : entries)
        if (run.only.empty() || e.label == run.only) todo.push_back(&e);
    if (!run.only.empty() && todo.empty()) throw Error(ErrorCode::SchemaError, "no corpus entry labelled " + run.only);
    CorpusRun out;
    out.results.resize(todo.size());
    unsigned jobs = run.jobs > 0 ? static_cast<unsigned>(run.jobs) : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(todo.size()));
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k = next++; k < todo.size(); k = next++) out.results[k] = run_entry(*todo[k], run);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace lgf
