#pragma once

#include <string>

#include <json.hpp>

#include "fanih/invariants.hpp"

namespace fanih {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"dim": n, "rays": [["p/q", ...], ...], "cones": [[ray ids], ...]}. Throws Parse
/// for malformed input and the fan errors of build_fan for invalid fans.
FanPtr parse_fan(const Json& j);
FanPtr parse_fan_text(const std::string& text);
FanPtr read_fan_file(const std::string& path);
/// Maximal cones only; parse_fan(dump_fan(f)) has the same face lattice.
Json dump_fan(const Fan& fan);

/// {"dim": n, "vertices": [["p/q", ...], ...]}.
Polytope parse_polytope(const Json& j);
Polytope read_polytope_file(const std::string& path);
Json dump_polytope(const Polytope& p);

/// Rational vector as strings.
Json to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json to_json(const Matrix& m);

/// Per cone generator degrees and per facet incidence the restriction
/// matrix as polynomial strings.
Json dump_sheaf(const PureSheaf& f);

Json to_json(const PairingReport& r);
Json to_json(const HlReport& r);
Json to_json(const VanishingReport& r);
Json to_json(const DecompositionReport& r);

std::string read_text_file(const std::string& path);

}  // namespace fanih
