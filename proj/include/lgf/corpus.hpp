#pragma once

#include <map>
#include <string>
#include <vector>

#include "lgf/checks.hpp"
#include "lgf/document.hpp"

namespace lgf {

/// Expected value with its provenance tag ("[PAPER ...]" or "[DERIVED ...]").
struct Golden {
    Json value;
    std::string source;
};

/// Corpus entry file:
///   {"label", "section", "modules": {"M": "path", ...}, "build"?: "dual(M)",
///    "options"?: {"special_depth", "generic_depth"}, "theorems"?: {"tensor_dual", ...},
///    "golden": {key: {"value", "source"}}}
/// Golden keys: growth_special, growth_generic, frobenius_special, frobenius_generic,
/// pbq, ct_strict, b_nabla_special, b_nabla_generic.
struct CorpusEntry {
    std::string label;
    std::string section;
    std::string path;
    std::map<std::string, std::string> modules;  // name -> document path (resolved)
    std::string build;                           // functor expression over the module names
    long special_depth = -1;
    long generic_depth = -1;
    TheoremOptions theorems;
    std::map<std::string, Golden> golden;
};

CorpusEntry load_corpus_entry(const std::string& path);
/// Every entries/*.json under `dir`, ordered by label.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

/// Command-line overrides shared by the verbs.
struct RunOptions {
    long depth = -1;          // special depth and generator truncation
    long generic_depth = -1;
    long window_lo = -1;
    long window_hi = -2;      // -2: keep; -1: up to the truncation order
    long snap_denominator = -1;
    std::optional<Rational> tol;
    std::string only;         // run a single label
    int jobs = 0;             // 0: hardware concurrency
};

/// Analysis options from defaults, document hints, entry options and overrides (in that order).
AnalysisOptions analysis_options(long doc_special, long doc_generic, const RunOptions& run);

/// Functor expression: a module name, dual(X), tensor(X, Y), direct_sum(X, Y),
/// twist(X, scalar), pushforward(X, a), sym2(X) or block(X, lo, hi) with 0-based [lo, hi).
ModulePresentation build_module(const std::string& expr, const std::map<std::string, ModuleDocument>& docs);

struct EntryModule {
    ModulePresentation module;  // labelled with the entry label
    AnalysisOptions options;
};
/// Loads the entry's documents and evaluates its build expression.
EntryModule load_entry_module(const CorpusEntry& e, const RunOptions& run);

struct EntryResult {
    CheckReport report;
    Json analysis;  // analysis_json, or null after an error
};

/// Goldens become checks named "golden.<key>"; a pipeline error becomes a failing "pipeline" check.
EntryResult run_entry(const CorpusEntry& e, const RunOptions& run);

struct CorpusRun {
    std::vector<EntryResult> results;  // ordered by label
    bool pass() const;
    Json to_json() const;
    std::string summary() const;
};

CorpusRun run_corpus(const std::vector<CorpusEntry>& entries, const RunOptions& run);

}  // namespace lgf
