#pragma once

#include <string>
#include <vector>

#include "egr/coloring.hpp"
#include "egr/geometry.hpp"
#include "egr/palette.hpp"
#include "egr/tetra.hpp"

namespace egr {

// Configuration: {"dim", "points", "labels"?, "copies", "notes"?, "allow_coincident"?}
std::string to_json(const Configuration& cfg);
// Configuration plus "adjacency": [{"first", "second", "relation", "shared"}]
std::string to_json(const LinkedConfig& lc);
// {"sq_dist": [[...], ...]}
std::string to_json(const SimplexSpec& spec);
// {"config", "mono", "rainbow", "r"}
std::string to_json(const ColoringProblem& p);
// {"verdict", "witness"?, "stats": {"nodes", "seconds"}}
std::string to_json(const SearchResult& res);

// Every reader validates what it returns and throws Error(Parse) on malformed text.
Configuration config_from_json(const std::string& text);
std::vector<CopyAdjacency> adjacency_from_json(const std::string& text);
SimplexSpec spec_from_json(const std::string& text);
ColoringProblem problem_from_json(const std::string& text);
// FORCED or COUNTEREXAMPLE results only.
SearchResult result_from_json(const std::string& text);

struct PaletteFile {
  int r = 0;
  std::vector<Palette> palettes;
};
PaletteFile palettes_from_json(const std::string& text);
std::string to_json(const PaletteFile& file);

std::string read_file(const std::string& path);
// Writes a sibling temporary file and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace egr
