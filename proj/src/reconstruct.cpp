#include <algorithm>

#include "orbitile/errors.hpp"
#include "orbitile/pq_surface.hpp"

namespace orbitile {

namespace {

void must(bool ok, const std::string& what) {
  if (!ok) throw InconsistentCycle(what);
}

}  // namespace

Reconstruction reconstruct_rows(const DecoratedGraph& g, const SubstitutionSystem& sys, int p) {
  RowAnalysis ra(g, sys, p);
  const std::size_t n = g.rot.size();
  Reconstruction rec;
  rec.y.assign(n, 0);
  rec.x.assign(n, 0);
  rec.parent.assign(n, -1);
  rec.known.assign(n, false);

  std::vector<bool> on_outer(n, false);
  for (int v : ra.faces().outer) on_outer[static_cast<std::size_t>(v)] = true;
  for (std::size_t f = 0; f < ra.faces().faces.size(); ++f) {
    const auto& face = ra.faces().faces[f];
    bool touches = std::any_of(face.begin(), face.end(), [&](int v) { return on_outer[static_cast<std::size_t>(v)]; });
    if (!touches)
      must(ra.rows_of(static_cast<int>(f)).has_value(),
           "face through vertex " + std::to_string(face[0]) + " has no unique horizontal path");
  }

  // y by breadth-first search over edges with both faces bounded
  for (std::size_t v = 0; v < n; ++v)
    if (!on_outer[v] && !g.rot[v].empty()) {
      rec.base_vertex = static_cast<int>(v);
      break;
    }
  if (rec.base_vertex < 0) return rec;
  std::vector<int> queue{rec.base_vertex};
  rec.known[static_cast<std::size_t>(rec.base_vertex)] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int u = queue[h];
    for (int v : g.rot[static_cast<std::size_t>(u)]) {
      int d;
      try {
        d = ra.dy(u, v);
      } catch (const BoundaryEdge&) {
        continue;
      }
      if (rec.known[static_cast<std::size_t>(v)]) {
        must(rec.y[static_cast<std::size_t>(v)] == rec.y[static_cast<std::size_t>(u)] + d,
             "dy does not sum to zero around a cycle");
        continue;
      }
      rec.known[static_cast<std::size_t>(v)] = true;
      rec.y[static_cast<std::size_t>(v)] = rec.y[static_cast<std::size_t>(u)] + d;
      queue.push_back(v);
    }
  }
  // per-face zero sums
  for (std::size_t f = 0; f < ra.faces().faces.size(); ++f) {
    const auto& face = ra.faces().faces[f];
    long sum = 0;
    bool all = true;
    for (std::size_t k = 0; k < face.size() && all; ++k) {
      try {
        sum += ra.dy(face[k], face[(k + 1) % face.size()]);
      } catch (const BoundaryEdge&) {
        all = false;
      }
    }
    if (all) must(sum == 0, "dy sums to " + std::to_string(sum) + " around a face");
  }

  // x along oriented horizontal paths, parents from producers
  std::vector<int> right(n, -1), left(n, -1);
  for (std::size_t f = 0; f < ra.faces().faces.size(); ++f) {
    const auto& fr = ra.rows_of(static_cast<int>(f));
    if (!fr) continue;
    for (std::size_t k = 0; k < fr->path.size(); ++k) {
      int v = fr->path[k];
      int& par = rec.parent[static_cast<std::size_t>(v)];
      must(par < 0 || par == fr->producers[k], "two parents for vertex " + std::to_string(v));
      par = fr->producers[k];
      if (k + 1 < fr->path.size()) {
        int w = fr->path[k + 1];
        must(right[static_cast<std::size_t>(v)] < 0 || right[static_cast<std::size_t>(v)] == w,
             "two right neighbours for vertex " + std::to_string(v));
        right[static_cast<std::size_t>(v)] = w;
        left[static_cast<std::size_t>(w)] = v;
      }
    }
  }
  std::vector<bool> done(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (done[v] || left[v] >= 0) continue;
    long x = 0;
    for (int w = static_cast<int>(v); w >= 0 && !done[static_cast<std::size_t>(w)]; w = right[static_cast<std::size_t>(w)]) {
      done[static_cast<std::size_t>(w)] = true;
      rec.x[static_cast<std::size_t>(w)] = x++;
    }
  }
  return rec;
}

}  // namespace orbitile
