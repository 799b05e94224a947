#pragma once

// JSON formats for spaces, models, empirical models and gluing inputs.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "simctx/simpdist.hpp"
#include "simctx/sset.hpp"

namespace simctx {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Syntax errors name the line and column.
Json load_json(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& origin = "<input>");

/// {"vertices": [...], "edges": [{"id","src","dst"}], "triangles": [{"id","d0","d1","d2"}]}
/// or the name of a standard space.
Json sset_to_json(const SSet2& x);
SSet2 sset_from_json(const Json& j);

Json dist_to_json(const OutcomeDist& p, int d);
OutcomeDist dist_from_json(const Json& j, SemiringKind semiring, int d, int length, const std::string& where);

/// Model file. Generators without a distribution are filled from a coface.
Json simpdist_to_json(const SimpDist& p);
SimpDist simpdist_from_json(const Json& j, std::optional<SemiringKind> semiring_override = std::nullopt);

/// A model file without distributions: space, target and modulus.
struct Scenario {
  std::shared_ptr<const SSet2> space;
  Target target;
};
Scenario scenario_from_json(const Json& j);

Json empirical_to_json(const EmpiricalModel& e);
EmpiricalModel empirical_from_json(const Json& j, std::optional<SemiringKind> semiring_override = std::nullopt);

/// Gluing input: two distributions over string outcomes and their maps to a
/// common set.
struct GlueInput {
  SemiringKind semiring = SemiringKind::NonnegRational;
  Dist<std::string> p1;
  Dist<std::string> p2;
  std::map<std::string, std::string> f1;
  std::map<std::string, std::string> f2;
};
GlueInput glue_from_json(const Json& j, std::optional<SemiringKind> semiring_override = std::nullopt);

Json det_map_to_json(const SSet2& x, const DetMap& phi);
/// "x=0,y=1" with names of edges (nerve) or vertices (delta).
DetMap parse_det_map(const SSet2& x, Target target, const std::string& text);

}  // namespace simctx
