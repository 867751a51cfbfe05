#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dqsci/pipeline.hpp"

namespace dqsci::cli {

/// Reads the key-value subset of TOML used by run configurations: comments,
/// [section] and [a.b] headers, dotted bare keys, basic and literal strings,
/// integers, floats (including inf and nan) and booleans. Arrays, inline
/// tables and multi-line strings are rejected with a ParseError.
nlohmann::json parse_config_document(std::istream& in);
nlohmann::json load_config_document(const std::filesystem::path& path);

/// Every dotted key a run configuration accepts, e.g. "sampler.shots".
std::vector<std::string> config_keys();

/// Sets the dotted key in `doc`, converting the flag text to the key's type.
/// Throws ContractViolation for an unknown key or an unconvertible value.
void apply_override(nlohmann::json& doc, const std::string& key, const std::string& text);

/// Builds a PipelineConfig from a document. Unknown keys are rejected. An
/// absent afqmc section is filled with defaults when the refinement needs it.
pipeline::PipelineConfig config_from_document(const nlohmann::json& doc);

}  // namespace dqsci::cli
