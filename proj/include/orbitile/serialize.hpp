#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "orbitile/orbit_graph.hpp"
#include "orbitile/pattern_family.hpp"

namespace orbitile {

using Json = nlohmann::json;

// Canonical text: two-space indent, sorted keys, trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);  // ParseError on malformed input
Json load_json(const std::string& path);

// Windows carry their alphabet (letter names in index order); row letters are written as names.
struct WindowDoc {
  OrbitWindow window;
  std::vector<std::string> alphabet;
};

Json window_to_json(const OrbitWindow& w, const std::vector<std::string>& alphabet);
WindowDoc window_from_json(const Json& j);

// Faces, depth and coordinates are recomputed on load.
Json patch_to_json(const GraphPatch& g);
GraphPatch patch_from_json(const Json& j);

Json family_to_json(const PatternFamily& f);
PatternFamily family_from_json(const Json& j);

Json alphabet_to_json(const OverlaySystem& ov);

// "3/7", "-2", or a decimal such as "0.25" (converted exactly; sets *was_decimal).
mpq_class parse_rational(const std::string& text, bool* was_decimal = nullptr);

}  // namespace orbitile
