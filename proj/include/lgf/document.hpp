#pragma once

#include <json.hpp>
#include <string>

#include "lgf/dsl.hpp"
#include "lgf/module.hpp"

namespace lgf {

/// Module definition document:
///   {"label", "field": {"p", "m", "q"}, "omega": "dt" | "dt/t", "rank", "phi_t"?,
///    "params"?: {"mu": "1/2"} or ["mu = 1/2", ...], "A", "G": row-major entry arrays,
///    "generic"?: {"A"?, "G"?} exact rational-function data, "depth"?: {"special"?, "generic"?}}
/// Unknown keys are rejected.
struct ModuleDocument {
    ModulePresentation module;
    DslContext context;
    long special_depth = -1;  // from "depth"; -1 when absent
    long generic_depth = -1;
};

struct DocumentOptions {
    long depth = -1;        // generator truncation; -1: "depth.special" or 2 p^4
    bool validate = true;   // ValidationFailed when the compatibility identity fails
};

/// ParseError (with line and column for JSON syntax), SchemaError, IllegalExponent, ValidationFailed.
ModuleDocument parse_module_document(const std::string& text, const DocumentOptions& opt = {});
ModuleDocument load_module_document(const std::string& path, const DocumentOptions& opt = {});

/// Canonical document of a presentation (entries written out term by term).
nlohmann::ordered_json module_document_json(const ModulePresentation& M);

std::string read_text_file(const std::string& path);

}  // namespace lgf
