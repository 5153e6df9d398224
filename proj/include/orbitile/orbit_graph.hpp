#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orbitile/orbit_window.hpp"

namespace orbitile {

struct PatchVertex {
  long row = 0;  // index into the window rows
  long col = 0;  // global column j
  int letter = 0;
  std::string label;
  bool core = false;  // every child of the cell is in the window
};

struct PatchEdge {
  int u = 0, v = 0;  // horizontal: u left of v; vertical: u parent, v child
  bool vertical = false;
};

// Plane graph of a window. rot[v] lists neighbours clockwise: parent, right, children right to left, left.
struct GraphPatch {
  std::vector<PatchVertex> vertices;
  std::vector<PatchEdge> edges;
  std::vector<std::vector<int>> rot;
  std::vector<std::vector<int>> faces;  // bounded faces as vertex cycles
  std::vector<int> outer;               // the outer face
  std::vector<int> depth;               // graph distance to the outer face
  std::map<std::pair<int, int>, int> face_of;  // directed edge -> face index, -1 for the outer face
  bool reduced = false;
  std::map<std::string, std::string> metadata;
  std::map<std::pair<long, long>, int> coords;  // (row, col) -> vertex

  int vertex_at(long row, long col) const;  // -1 when absent
  bool interior(int v, int radius) const { return depth[static_cast<std::size_t>(v)] >= radius; }
  bool has_edge(int u, int v) const;
};

struct FaceSet {
  std::vector<std::vector<int>> faces;  // bounded
  std::vector<int> outer;
  std::map<std::pair<int, int>, int> face_of;
};

// Faces of a rotation system. The outer face is the one through the directed edge `hint`
// when given, otherwise the longest.
FaceSet trace_faces(const std::vector<std::vector<int>>& rot, std::pair<int, int> hint = {-1, -1});

// Graph distance from every vertex to the given set.
std::vector<int> distances_from(const std::vector<std::vector<int>>& rot, const std::vector<int>& sources);

// Recomputes faces, outer face and depth from rot; vertex 0 is the top-left cell.
void finish_patch(GraphPatch& g);

GraphPatch build_orbit_graph(const OrbitWindow& w, const std::vector<std::string>& letter_names);

// A triangle has one vertex in its upper row; a quadrilateral has two (unreduced patches only).
bool is_triangle(const GraphPatch& g, const std::vector<int>& face);

struct Gallery {
  std::vector<int> faces;  // face indices top to bottom, all quadrilaterals
  int top_triangle = -1;   // triangle sitting on the upper edge, when present in the patch
};

std::vector<Gallery> galleries(const GraphPatch& g);

// Drops vertical edges into children whose letter maps to W.
GraphPatch reduce(const GraphPatch& g, const std::function<bool(int letter)>& is_w);

struct PQReport {
  bool ok = true;
  long vertices_checked = 0, faces_checked = 0;
  std::vector<std::string> violations;
};

PQReport check_pq(const GraphPatch& g, int p, int q, int radius = 1);

struct Pattern {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> rot;  // clockwise, restricted to pattern edges
  int base = 0;
  // Minimal traversal code over every start edge at the basepoint, clockwise only.
  std::string canonical() const;
};

// Union of the faces through v, with labels relabelled by `label` (defaults to vertex labels).
Pattern extract_pattern(const GraphPatch& g, int v, const std::function<std::string(int)>& label = {});

// Faces through v (indices into g.faces); BoundaryVertex when v touches the outer face.
std::vector<int> faces_at(const GraphPatch& g, int v);

struct PatchPeriod {
  long pi = 0, shift = 0;  // top row shift
};

// Candidate maps (r, j) -> (r + pi, j + t_r) for 0 <= pi <= max_pi, shifts propagated through parent edges;
// survivors preserve labels and edges on the overlap. The identity always survives.
std::vector<PatchPeriod> patch_periods(const GraphPatch& g, long max_pi);

}  // namespace orbitile
