#include <algorithm>
#include <deque>
#include <set>

#include "orbitile/errors.hpp"
#include "orbitile/orbit_graph.hpp"

namespace orbitile {

std::vector<int> faces_at(const GraphPatch& g, int v) {
  std::vector<int> out;
  for (int u : g.rot.at(static_cast<std::size_t>(v))) {
    int f = g.face_of.at({v, u});
    if (f < 0) throw BoundaryVertex("vertex " + std::to_string(v) + " lies on the outer face");
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  if (out.empty()) throw BoundaryVertex("isolated vertex " + std::to_string(v));
  return out;
}

Pattern extract_pattern(const GraphPatch& g, int v, const std::function<std::string(int)>& label) {
  std::vector<int> fs = faces_at(g, v);
  std::set<std::pair<int, int>> edges;
  std::vector<int> verts{v};
  for (int f : fs) {
    const auto& cyc = g.faces[static_cast<std::size_t>(f)];
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      edges.insert({a, b});
      edges.insert({b, a});
      if (std::find(verts.begin(), verts.end(), a) == verts.end()) verts.push_back(a);
    }
  }
  std::map<int, int> id;
  for (int x : verts) id.emplace(x, static_cast<int>(id.size()));
  Pattern p;
  p.base = 0;
  p.labels.resize(verts.size());
  p.rot.resize(verts.size());
  for (int x : verts) {
    int k = id.at(x);
    p.labels[static_cast<std::size_t>(k)] = label ? label(x) : g.vertices[static_cast<std::size_t>(x)].label;
    for (int y : g.rot[static_cast<std::size_t>(x)])
      if (edges.count({x, y})) p.rot[static_cast<std::size_t>(k)].push_back(id.at(y));
  }
  return p;
}

std::string Pattern::canonical() const {
  std::string best;
  bool have = false;
  const auto& r0 = rot.at(static_cast<std::size_t>(base));
  for (std::size_t s = 0; s < std::max<std::size_t>(r0.size(), 1); ++s)
    {
      // orientation-preserving only: a mirrored patch reads its horizontal paths backwards
      // BFS; each vertex lists its neighbours in rotation order starting from the edge it was reached by
      std::vector<int> order(labels.size(), -1), from(labels.size(), -1);
      std::vector<int> seq;
      std::deque<int> q{base};
      order[static_cast<std::size_t>(base)] = 0;
      seq.push_back(base);
      std::string code;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        const auto& ru = rot[static_cast<std::size_t>(u)];
        std::size_t n = ru.size();
        std::size_t start = 0;
        if (u == base) {
          start = s;
        } else {
          start = static_cast<std::size_t>(std::find(ru.begin(), ru.end(), from[static_cast<std::size_t>(u)]) - ru.begin());
        }
        const std::string& lab = labels[static_cast<std::size_t>(u)];
        code += std::to_string(lab.size()) + ":" + lab + "[";
        for (std::size_t k = 0; k < n; ++k) {
          std::size_t idx = (start + k) % n;
          int w = ru[idx];
          if (order[static_cast<std::size_t>(w)] < 0) {
            order[static_cast<std::size_t>(w)] = static_cast<int>(seq.size());
            from[static_cast<std::size_t>(w)] = u;
            seq.push_back(w);
            q.push_back(w);
          }
          code += std::to_string(order[static_cast<std::size_t>(w)]) + ",";
        }
        code += "]";
      }
      if (!have || code < best) {
        best = code;
        have = true;
      }
    }
  return best;
}

}  // namespace orbitile
