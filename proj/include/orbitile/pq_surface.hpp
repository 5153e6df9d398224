#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitile/growth.hpp"
#include "orbitile/orbit_graph.hpp"

namespace orbitile {

// Y -> (Y W^{p-3})^{q-4} Y W^{p-4},  W -> (Y W^{p-3})^{q-3} Y W^{p-4}.  Letter 0 is Y, 1 is W.
SubstitutionSystem pq_substitution(int p, int q);

struct DecoratedSystem {
  SubstitutionSystem base;
  long N = 0;                     // |sigma(W)|, the longest image
  SubstitutionSystem full;        // every (a, i) with 1 <= i <= N, named like "Y3"
  SubstitutionSystem reachable;   // letters (sigma(a)_i, i) that actually occur in images
  std::vector<int> base_of, pos_of;  // per reachable letter
  int reachable_index(int base, int pos) const;  // -1 when not reachable
};

DecoratedSystem decorate(const SubstitutionSystem& sys);

// Analysis of the reachable decorated system: the same growth rate, and nu_#(a, i) = nu_a.
Analysis decorated_analysis(const DecoratedSystem& d, const Analysis& base);

// pos labels are 1-based; a is the producing base letter.
bool horizontal_type(const std::vector<int>& pos, int a, int p, const SubstitutionSystem& sys);

// Graph with decorated labels and a clockwise rotation system, nothing else.
struct DecoratedGraph {
  std::vector<int> base, pos;
  std::vector<std::vector<int>> rot;
};

// Per face: its unique horizontal-type path and who produced each path vertex.
struct FaceRows {
  std::vector<int> path;       // oriented left to right
  std::vector<int> producers;  // same length as path
};

class RowAnalysis {
 public:
  RowAnalysis(const DecoratedGraph& g, const SubstitutionSystem& sys, int p);

  const FaceSet& faces() const { return faces_; }
  // Every oriented horizontal-type path of a face (on generated patches there is exactly one).
  std::vector<FaceRows> candidates(const std::vector<int>& face) const;
  // The unique path of bounded face f, or nullopt when there is none or more than one.
  const std::optional<FaceRows>& rows_of(int f) const { return rows_[static_cast<std::size_t>(f)]; }
  // dy of the oriented edge u -> v; BoundaryEdge when a side is outer or undetermined.
  int dy(int u, int v) const;

 private:
  const DecoratedGraph& g_;
  const SubstitutionSystem& sys_;
  int p_;
  FaceSet faces_;
  std::vector<std::optional<FaceRows>> rows_;
};

struct Reconstruction {
  int base_vertex = -1;
  std::vector<long> y, x;
  std::vector<int> parent;  // vertex id, -1 when unknown
  std::vector<bool> known;
};

// Rows, columns and parents from labels and rotation only. InconsistentCycle on a bad face.
Reconstruction reconstruct_rows(const DecoratedGraph& g, const SubstitutionSystem& sys, int p);

// Decorated view of a patch whose letters are reachable decorated letters (or mapped through letter_to_dec).
DecoratedGraph decorated_graph(const GraphPatch& g, const DecoratedSystem& d,
                               const std::function<int(int letter)>& letter_to_dec = {});

}  // namespace orbitile
