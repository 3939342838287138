#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "priverm/core.hpp"

namespace priverm {

using Json = nlohmann::ordered_json;

// Parses JSON text; syntax errors become InputError carrying line and column.
Json parse_json(const std::string& text, const std::string& source_name = "<input>");
Json read_json_file(const std::filesystem::path& path);

// {"domain_size": n, "hypotheses": ["0110...", ...]}, point 0 first.
Json class_to_json(const HypothesisClass& cls);
HypothesisClass class_from_json(const Json& j, const std::string& label = "X");

// {"support": [{"x": i, "xstar": j, "y": b, "p": v}, ...]}
Json distribution_to_json(const FiniteDistribution& dist);
FiniteDistribution distribution_from_json(const Json& j);

// {"triples": [{"x": i, "xstar": j, "y": b}, ...]}
Json sample_to_json(const TripleSample& s);
TripleSample sample_from_json(const Json& j);

}  // namespace priverm
