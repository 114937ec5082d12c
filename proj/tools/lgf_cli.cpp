// lgf: command-line front end over module documents and corpus entries.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lgf/corpus.hpp"
#include "lgf/dsl.hpp"

#ifndef LGF_CORPUS_DIR
#define LGF_CORPUS_DIR "corpus"
#endif

namespace {

using namespace lgf;

struct Flags {
    long depth = -1;
    std::string window;
    long snap = -1;
    std::string tol;
    std::string format;
    std::string only;
    std::string out;
    int jobs = 0;
};

RunOptions run_options(const Flags& f) {
    RunOptions r;
    r.depth = f.depth;
    r.snap_denominator = f.snap;
    r.only = f.only;
    r.jobs = f.jobs;
    if (!f.window.empty()) {
        const size_t dots = f.window.find("..");
        if (dots == std::string::npos) throw Error(ErrorCode::ParseError, "--window expects a..b");
        try {
            r.window_lo = std::stol(f.window.substr(0, dots));
            const std::string hi = f.window.substr(dots + 2);
            r.window_hi = hi.empty() ? -1 : std::stol(hi);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::ParseError, "--window expects integers a..b");
        }
        if (r.window_lo < 1 || (r.window_hi >= 0 && r.window_hi <= r.window_lo))
            throw Error(ErrorCode::ParseError, "--window needs 1 <= a < b");
    }
    if (!f.tol.empty()) {
        r.tol = parse_rational(f.tol);
        if (*r.tol <= 0) throw Error(ErrorCode::ParseError, "--tol must be positive");
    }
    return r;
}

// A module document or a corpus entry (recognised by its "golden" field).
struct Target {
    ModulePresentation module;
    AnalysisOptions options;
    TheoremOptions theorems;
    std::optional<CorpusEntry> entry;
};

Target load_target(const std::string& path, const RunOptions& run) {
    const Json j = [&] {
        try {
            return Json::parse(read_text_file(path));
        } catch (const nlohmann::json::parse_error&) {
            return Json();
        }
    }();
    Target t;
    if (j.is_object() && j.contains("golden")) {
        CorpusEntry e = load_corpus_entry(path);
        EntryModule em = load_entry_module(e, run);
        t.module = std::move(em.module);
        t.options = em.options;
        t.theorems = e.theorems;
        t.entry = std::move(e);
    } else {
        DocumentOptions dopt;
        dopt.depth = run.depth;
        ModuleDocument d = load_module_document(path, dopt);
        t.options = analysis_options(d.special_depth, d.generic_depth, run);
        t.module = std::move(d.module);
    }
    return t;
}

void emit(const Flags& f, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream o(f.out, std::ios::binary);
    if (!o) throw Error(ErrorCode::ParseError, "cannot write " + f.out);
    o << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const Flags& f, std::initializer_list<const char*> allowed) {
    if (f.format.empty()) return;
    for (const char* a : allowed)
        if (f.format == a) return;
    throw Error(ErrorCode::ParseError, "--format " + f.format + " is not available for this verb");
}

Json solution_json(const ModulePresentation& M, const SolutionPackage& S) {
    Json y = Json::array();
    for (Eigen::Index i = 0; i < S.Y.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < S.Y.cols(); ++k) row.push_back(format_log_series(S.Y(i, k)));
        y.push_back(row);
    }
    Json c = Json::array();
    for (Eigen::Index i = 0; i < S.C.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < S.C.cols(); ++k) row.push_back(format_scalar(S.C(i, k)));
        c.push_back(row);
    }
    return {{"label", M.label}, {"depth", S.depth}, {"residual_order", S.residual_order}, {"C", c}, {"Y", y}};
}

int cmd_validate(const std::string& path, const Flags& f) {
    require_format(f, {"json"});
    const Target t = load_target(path, run_options(f));
    const ValidationReport r = validate(t.module);
    Json j = {{"label", t.module.label}, {"rank", t.module.rank}, {"pass", r.pass}, {"failures", r.failures}};
    emit(f, f.format == "json" ? json_text(j) : (r.pass ? "ok " + t.module.label + "\n" : json_text(j)));
    return r.pass ? 0 : 1;
}

int cmd_solve(const std::string& path, const Flags& f) {
    require_format(f, {"csv", "json"});
    const Target t = load_target(path, run_options(f));
    const long depth = t.options.special_depth_for(t.module.cfg);
    const SolutionPackage S = solve_special(t.module, depth, t.options.verify_order);
    emit(f, f.format == "json" ? json_text(solution_json(t.module, S)) : solution_csv(S));
    return 0;
}

ModuleAnalysis run_analysis(const Target& t) { return analyze(t.module, t.options); }

int cmd_growth(const std::string& path, const Flags& f) {
    require_format(f, {"json", "csv"});
    const Target t = load_target(path, run_options(f));
    const ModuleAnalysis a = run_analysis(t);
    if (f.format == "csv") {
        std::ostringstream os;
        os << "fiber,row,lower,upper,exact,snapped\n";
        auto rows = [&](const char* fiber, const FiltrationReport& r) {
            for (size_t i = 0; i < r.rows.size(); ++i) {
                const GrowthEstimate& g = r.rows[i];
                os << fiber << "," << i + 1 << ",";
                if (g.minus_infinity)
                    os << "-inf,-inf,1,0\n";
                else
                    os << rat_str(g.lower) << "," << rat_str(g.upper) << "," << g.exact << "," << g.snapped << "\n";
            }
        };
        rows("special", a.growth_special);
        rows("generic", a.growth_generic);
        emit(f, os.str());
        return 0;
    }
    emit(f, json_text({{"label", a.label},
                       {"special", filtration_json(a.growth_special)},
                       {"generic", filtration_json(a.growth_generic)},
                       {"b_nabla_special", rational_json(b_nabla(a.growth_special))},
                       {"b_nabla_generic", rational_json(b_nabla(a.growth_generic))}}));
    return 0;
}

int cmd_slopes(const std::string& path, const Flags& f) {
    require_format(f, {"json"});
    Target t = load_target(path, run_options(f));
    const ModuleAnalysis a = run_analysis(t);
    emit(f, json_text({{"label", a.label},
                       {"frobenius_special", multiset_json(a.frobenius_special.slopes)},
                       {"frobenius_generic", multiset_json(a.frobenius_generic.slopes)},
                       {"growth_special", multiset_json(a.growth_special.slopes)},
                       {"growth_generic", multiset_json(a.growth_generic.slopes)}}));
    return 0;
}

int cmd_newton(const std::string& path, const Flags& f) {
    require_format(f, {"svg", "json"});
    const Target t = load_target(path, run_options(f));
    const ModuleAnalysis a = run_analysis(t);
    const std::vector<std::pair<std::string, NewtonPolygon>> polys = {
        {"growth_special", newton_polygon(a.growth_special.slopes)},
        {"growth_generic", newton_polygon(a.growth_generic.slopes)},
        {"frobenius_special", newton_polygon(a.frobenius_special.slopes)},
        {"frobenius_generic", newton_polygon(a.frobenius_generic.slopes)}};
    if (f.format == "json") {
        Json j = {{"label", a.label}};
        for (const auto& [name, np] : polys) j[name] = polygon_json(np);
        emit(f, json_text(j));
    } else {
        emit(f, polygons_svg(polys));
    }
    return 0;
}

int cmd_check(const std::string& path, const Flags& f) {
    require_format(f, {"json"});
    const RunOptions run = run_options(f);
    CheckReport r;
    Json peek;
    try {
        peek = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error&) {
    }
    if (peek.is_object() && peek.contains("golden")) {
        r = run_entry(load_corpus_entry(path), run).report;
    } else {
        const Target t = load_target(path, run);
        r = verify_theorems(t.module, run_analysis(t), t.options, t.theorems);
        r.label = t.module.label;
    }
    emit(f, json_text(to_json(r)));
    return r.pass() ? 0 : 1;
}

int cmd_corpus(const std::string& dir, const Flags& f) {
    require_format(f, {"json"});
    const CorpusRun run = run_corpus(load_corpus(dir), run_options(f));
    emit(f, f.format == "json" ? json_text(run.to_json()) : run.summary());
    return run.pass() ? 0 : 1;
}

int cmd_report(const std::string& path, const Flags& f) {
    require_format(f, {"json"});
    const Target t = load_target(path, run_options(f));
    const ModuleAnalysis a = run_analysis(t);
    CheckReport r = verify_theorems(t.module, a, t.options, t.theorems);
    r.label = t.module.label;
    emit(f, json_text({{"analysis", analysis_json(a)}, {"checks", to_json(r)}}));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Log-growth and Frobenius slope analysis of differential modules"};
    app.require_subcommand(1);
    Flags flags;
    std::string target;
    std::string corpus_dir = LGF_CORPUS_DIR;

    auto common = [&](CLI::App* sub, bool with_only) {
        sub->add_option("--depth", flags.depth, "Special solver depth and generator truncation")->check(CLI::PositiveNumber);
        sub->add_option("--window", flags.window, "Growth fit window a..b (b may be empty)");
        sub->add_option("--snap", flags.snap, "Largest denominator of snapped slopes")->check(CLI::PositiveNumber);
        sub->add_option("--tol", flags.tol, "Snapping tolerance, a positive rational");
        sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));
        sub->add_option("--out", flags.out, "Write output to PATH");
        if (with_only) {
            sub->add_option("--only", flags.only, "Run a single entry by label");
            sub->add_option("--jobs", flags.jobs, "Worker threads (0: all cores)");
        }
    };

    struct Verb {
        const char* name;
        const char* help;
        int (*run)(const std::string&, const Flags&);
    };
    const Verb verbs[] = {
        {"validate", "Check the integrability relation of a module", cmd_validate},
        {"solve", "Dump the special solution matrix", cmd_solve},
        {"growth", "Log-growth filtrations at the special and generic points", cmd_growth},
        {"slopes", "Frobenius and growth slope multisets", cmd_slopes},
        {"newton", "Newton polygons of the slope multisets", cmd_newton},
        {"check", "Theorem checks as a CheckReport", cmd_check},
        {"report", "Full analysis with its checks", cmd_report},
    };
    std::map<CLI::App*, const Verb*> dispatch;
    for (const Verb& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->add_option("path", target, "Module document or corpus entry")->required();
        common(sub, false);
        dispatch[sub] = &v;
    }
    CLI::App* corpus = app.add_subcommand("corpus", "Run the golden corpus");
    corpus->add_option("dir", corpus_dir, "Corpus directory");
    common(corpus, true);

    CLI11_PARSE(app, argc, argv);
    try {
        if (corpus->parsed()) return cmd_corpus(corpus_dir, flags);
        for (const auto& [sub, v] : dispatch)
            if (sub->parsed()) return v->run(target, flags);
    } catch (const lgf::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
