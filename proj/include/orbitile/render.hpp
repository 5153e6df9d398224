#pragma once

#include <string>
#include <vector>

#include "orbitile/orbit_window.hpp"

namespace orbitile {

// One tiling to draw. Row i, cell j sits at x = c + e^d growth^{-i} |prefix|_nu and, with the SVG y axis
// pointing down, y = i log(growth) - d; width e^d growth^{-i} nu(letter), height log(growth).
struct TilingLayer {
  const OrbitWindow* window = nullptr;
  std::vector<std::string> names;  // letter labels
  std::vector<double> weights;     // indexed like the rows' origin_counts
  std::vector<int> weight_class;   // window letter -> index into weights
  double growth = 2.0;
  double c = 0.0, d = 0.0;
  bool stroke_only = false;
  std::string stroke = "#000000";
  std::string fill = "#dfe8f2";
};

// Weights, classes and growth from the window's own metadata (system, or system_a for overlay windows).
TilingLayer layer_for(const OrbitWindow& w, const std::vector<std::string>& names);

std::string render_svg(const std::vector<TilingLayer>& layers);

struct AbutmentReport {
  bool ok = true;
  long rects = 0, pairs_checked = 0, parents_checked = 0;
  double worst = 0.0;  // largest relative defect seen
  std::vector<std::string> problems;
};

// Reads rectangles back from the SVG text and checks row and parent-child abutment for each layer.
AbutmentReport check_abutment(const std::string& svg, const std::vector<TilingLayer>& layers, double tol = 1e-9);

}  // namespace orbitile
