#pragma once

// File formats. Coordinates and set elements are 1-based in every external
// format and 0-based in the C++ API.
//
//   distribution   bare JSON array of reals
//   joint table    {"shape": [d0, d1, ...], "probs": [...row-major...]}
//   set family     {"n": N, "sets": [[1-based elements], ...]}
//   cover          {"n": N, "groups": [[1-based coordinates], ...]}
//   graph          {"n": N, "edges": [[left, right], ...]}   (1-based)
//   matrix text    one row per line, either whitespace-separated 0/1 tokens
//                  or a compact string of '0'/'1'; '#' starts a comment

#include <string>
#include <variant>

#include "json.hpp"

#include "entrocount/bounds.hpp"
#include "entrocount/entropy.hpp"
#include "entrocount/permanent.hpp"
#include "entrocount/set_family.hpp"
#include "entrocount/shearer.hpp"

namespace entrocount::io {

using nlohmann::json;

/// Reads `arg` as a file when one exists at that path, else returns it
/// unchanged (inline content).
std::string read_file_or_inline(const std::string& arg);

json parse_json(const std::string& text);

using ProbabilityInput = std::variant<DiscreteDistribution, JointTable>;
ProbabilityInput parse_probability_input(const json& j, bool renormalize = false);

JointTable parse_joint_table(const json& j, bool renormalize = false);
json to_json(const JointTable& t);

SetFamily parse_set_family(const json& j);
json to_json(const SetFamily& f);

CoverFamily parse_cover(const json& j);
json to_json(const CoverFamily& c);

BinaryMatrix parse_matrix_text(const std::string& text);
BinaryMatrix parse_graph(const json& j);
/// Rows as compact '0'/'1' strings.
json to_json(const BinaryMatrix& m);
BinaryMatrix parse_matrix_json(const json& j);

json to_json(const BoundReport& r);
json to_json(const OptimizationResult& r);
json to_json(const CheckResult& r);
json to_json(const IntersectionCheck& r);

/// Non-finite doubles become the strings "inf", "-inf" or "nan".
json number(double v);
double parse_number(const json& j);

}  // namespace entrocount::io
