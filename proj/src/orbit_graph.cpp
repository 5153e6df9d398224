#include "orbitile/orbit_graph.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <set>

#include "orbitile/errors.hpp"

namespace orbitile {

int GraphPatch::vertex_at(long row, long col) const {
  auto it = coords.find({row, col});
  return it == coords.end() ? -1 : it->second;
}

bool GraphPatch::has_edge(int u, int v) const {
  const auto& r = rot[static_cast<std::size_t>(u)];
  return std::find(r.begin(), r.end(), v) != r.end();
}

FaceSet trace_faces(const std::vector<std::vector<int>>& rot, std::pair<int, int> hint) {
  FaceSet fs;
  std::vector<std::vector<int>> all;
  std::map<std::pair<int, int>, int> owner;
  for (std::size_t u = 0; u < rot.size(); ++u)
    for (int v : rot[u]) {
      if (owner.count({static_cast<int>(u), v})) continue;
      std::vector<int> cyc;
      int a = static_cast<int>(u), b = v;
      const int id = static_cast<int>(all.size());
      while (!owner.count({a, b})) {
        owner[{a, b}] = id;
        cyc.push_back(a);
        const auto& rb = rot[static_cast<std::size_t>(b)];
        auto it = std::find(rb.begin(), rb.end(), a);
        std::size_t k = static_cast<std::size_t>(it - rb.begin());
        int c = rb[(k + 1) % rb.size()];
        a = b;
        b = c;
      }
      all.push_back(std::move(cyc));
    }
  if (all.empty()) return fs;
  int outer = 0;
  if (hint.first >= 0 && owner.count(hint)) {
    outer = owner.at(hint);
  } else {
    for (std::size_t k = 1; k < all.size(); ++k)
      if (all[k].size() > all[static_cast<std::size_t>(outer)].size()) outer = static_cast<int>(k);
  }
  std::vector<int> remap(all.size(), -1);
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (static_cast<int>(k) == outer) continue;
    remap[k] = static_cast<int>(fs.faces.size());
    fs.faces.push_back(all[k]);
  }
  fs.outer = all[static_cast<std::size_t>(outer)];
  for (const auto& [e, id] : owner) fs.face_of[e] = remap[static_cast<std::size_t>(id)];
  return fs;
}

std::vector<int> distances_from(const std::vector<std::vector<int>>& rot, const std::vector<int>& sources) {
  std::vector<int> dist(rot.size(), -1);
  std::deque<int> q;
  for (int s : sources)
    if (dist[static_cast<std::size_t>(s)] < 0) {
      dist[static_cast<std::size_t>(s)] = 0;
      q.push_back(s);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : rot[static_cast<std::size_t>(u)])
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
  }
  // unreachable vertices count as boundary
  for (int& d : dist)
    if (d < 0) d = 0;
  return dist;
}

void finish_patch(GraphPatch& g) {
  std::pair<int, int> hint{-1, -1};
  if (!g.rot.empty() && !g.rot[0].empty()) hint = {0, g.rot[0][0]};
  FaceSet fs = trace_faces(g.rot, hint);
  g.faces = std::move(fs.faces);
  g.outer = std::move(fs.outer);
  g.face_of = std::move(fs.face_of);
  std::vector<int> src = g.outer;
  for (std::size_t v = 0; v < g.rot.size(); ++v)
    if (g.rot[v].empty()) src.push_back(static_cast<int>(v));
  g.depth = distances_from(g.rot, src);
}

GraphPatch build_orbit_graph(const OrbitWindow& w, const std::vector<std::string>& letter_names) {
  GraphPatch g;
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    const OrbitRow& row = w.rows[r];
    for (long j = row.j_lo; j <= row.j_hi(); ++j) {
      PatchVertex v;
      v.row = static_cast<long>(r);
      v.col = j;
      v.letter = row.at(j);
      v.label = letter_names.at(static_cast<std::size_t>(v.letter));
      v.core = row.is_core(j);
      g.coords[{v.row, v.col}] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(std::move(v));
    }
  }
  const std::size_t n = g.vertices.size();
  std::vector<int> parent(n, -1), right(n, -1), left(n, -1);
  std::vector<std::vector<int>> kids(n);
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    const OrbitRow& row = w.rows[r];
    for (long j = row.j_lo; j < row.j_hi(); ++j) {
      int a = g.vertex_at(static_cast<long>(r), j), b = g.vertex_at(static_cast<long>(r), j + 1);
      g.edges.push_back({a, b, false});
      right[static_cast<std::size_t>(a)] = b;
      left[static_cast<std::size_t>(b)] = a;
    }
    if (r + 1 < w.rows.size()) {
      const OrbitRow& down = w.rows[r + 1];
      for (long k = down.j_lo; k <= down.j_hi(); ++k) {
        int c = g.vertex_at(static_cast<long>(r + 1), k);
        int p = g.vertex_at(static_cast<long>(r), w.parent(r, k));
        g.edges.push_back({p, c, true});
        parent[static_cast<std::size_t>(c)] = p;
        kids[static_cast<std::size_t>(p)].push_back(c);
      }
    }
  }
  g.rot.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& rv = g.rot[v];
    if (parent[v] >= 0) rv.push_back(parent[v]);
    if (right[v] >= 0) rv.push_back(right[v]);
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) rv.push_back(*it);
    if (left[v] >= 0) rv.push_back(left[v]);
  }
  finish_patch(g);
  g.metadata = w.metadata;
  return g;
}

bool is_triangle(const GraphPatch& g, const std::vector<int>& face) {
  long top = face.empty() ? 0 : g.vertices[static_cast<std::size_t>(face[0])].row;
  for (int v : face) top = std::min(top, g.vertices[static_cast<std::size_t>(v)].row);
  long n = 0;
  for (int v : face) n += g.vertices[static_cast<std::size_t>(v)].row == top;
  return face.size() == 3 && n == 1;
}

namespace {

// Upper and lower row edges of a face, as (left, right) vertex pairs ordered by column.
std::pair<std::pair<int, int>, std::pair<int, int>> row_edges(const GraphPatch& g, const std::vector<int>& face) {
  long top = g.vertices[static_cast<std::size_t>(face[0])].row;
  for (int v : face) top = std::min(top, g.vertices[static_cast<std::size_t>(v)].row);
  std::vector<int> up, down;
  for (int v : face) (g.vertices[static_cast<std::size_t>(v)].row == top ? up : down).push_back(v);
  auto by_col = [&](int a, int b) {
    return g.vertices[static_cast<std::size_t>(a)].col < g.vertices[static_cast<std::size_t>(b)].col;
  };
  std::sort(up.begin(), up.end(), by_col);
  std::sort(down.begin(), down.end(), by_col);
  std::pair<int, int> u{-1, -1}, d{-1, -1};
  if (up.size() == 2) u = {up[0], up[1]};
  if (down.size() == 2) d = {down[0], down[1]};
  return {u, d};
}

}  // namespace

std::vector<Gallery> galleries(const GraphPatch& g) {
  std::map<std::pair<int, int>, int> below, above;  // row edge -> quad under it / face over it
  std::vector<bool> quad(g.faces.size(), false);
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    auto [up, down] = row_edges(g, g.faces[f]);
    if (g.faces[f].size() == 4 && up.first >= 0) {
      quad[f] = true;
      below[up] = static_cast<int>(f);
    }
    if (down.first >= 0) above[down] = static_cast<int>(f);
  }
  std::vector<Gallery> out;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    if (!quad[f]) continue;
    auto up = row_edges(g, g.faces[f]).first;
    auto it = above.find(up);
    if (it != above.end() && quad[static_cast<std::size_t>(it->second)]) continue;  // not the top of a chain
    Gallery gal;
    if (it != above.end()) gal.top_triangle = it->second;
    int cur = static_cast<int>(f);
    while (cur >= 0) {
      gal.faces.push_back(cur);
      auto down = row_edges(g, g.faces[static_cast<std::size_t>(cur)]).second;
      auto nx = below.find(down);
      cur = nx == below.end() ? -1 : nx->second;
    }
    out.push_back(std::move(gal));
  }
  return out;
}

GraphPatch reduce(const GraphPatch& g, const std::function<bool(int)>& is_w) {
  GraphPatch out = g;
  out.reduced = true;
  out.edges.clear();
  for (const auto& e : g.edges) {
    if (e.vertical && is_w(g.vertices[static_cast<std::size_t>(e.v)].letter)) {
      auto& ru = out.rot[static_cast<std::size_t>(e.u)];
      auto& rv = out.rot[static_cast<std::size_t>(e.v)];
      ru.erase(std::remove(ru.begin(), ru.end(), e.v), ru.end());
      rv.erase(std::remove(rv.begin(), rv.end(), e.u), rv.end());
      continue;
    }
    out.edges.push_back(e);
  }
  finish_patch(out);
  return out;
}

PQReport check_pq(const GraphPatch& g, int p, int q, int radius) {
  PQReport rep;
  auto where = [&](int v) {
    const auto& x = g.vertices[static_cast<std::size_t>(v)];
    return "(" + std::to_string(x.row) + "," + std::to_string(x.col) + ")";
  };
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!g.interior(static_cast<int>(v), radius)) continue;
    ++rep.vertices_checked;
    if (static_cast<int>(g.rot[v].size()) != q) {
      rep.ok = false;
      if (rep.violations.size() < 20)
        rep.violations.push_back("degree " + std::to_string(g.rot[v].size()) + " at " + where(static_cast<int>(v)));
    }
  }
  for (const auto& f : g.faces) {
    bool inside = std::all_of(f.begin(), f.end(), [&](int v) { return g.interior(v, radius); });
    if (!inside) continue;
    ++rep.faces_checked;
    std::set<int> distinct(f.begin(), f.end());
    if (static_cast<int>(f.size()) != p || distinct.size() != f.size()) {
      rep.ok = false;
      if (rep.violations.size() < 20)
        rep.violations.push_back(std::to_string(f.size()) + "-face at " + where(f[0]));
    }
  }
  return rep;
}

std::vector<PatchPeriod> patch_periods(const GraphPatch& g, long max_pi) {
  std::vector<PatchPeriod> out;
  long rows = 0;
  std::map<long, std::pair<long, long>> span;
  for (const auto& v : g.vertices) {
    rows = std::max(rows, v.row + 1);
    auto it = span.find(v.row);
    if (it == span.end())
      span[v.row] = {v.col, v.col};
    else
      it->second = {std::min(it->second.first, v.col), std::max(it->second.second, v.col)};
  }
  auto first_child = [&](int u) {
    long best = LONG_MAX;
    const auto& x = g.vertices[static_cast<std::size_t>(u)];
    for (int c : g.rot[static_cast<std::size_t>(u)]) {
      const auto& y = g.vertices[static_cast<std::size_t>(c)];
      if (y.row == x.row + 1) best = std::min(best, y.col);
    }
    return best;
  };
  for (long pi = 0; pi <= max_pi && pi < rows; ++pi) {
    auto [a_lo, a_hi] = span[0];
    auto [b_lo, b_hi] = span[pi];
    for (long t0 = b_lo - a_hi; t0 <= b_hi - a_lo; ++t0) {
      long overlap = std::min(a_hi, b_hi - t0) - std::max(a_lo, b_lo - t0) + 1;
      long smaller = std::min(a_hi - a_lo, b_hi - b_lo) + 1;
      if (2 * overlap < smaller) continue;
      // shifts per row
      std::vector<long> shift{t0};
      for (long r = 0; r + pi + 1 < rows; ++r) {
        long t = shift.back();
        bool found = false;
        for (long j = span[r].first; j <= span[r].second && !found; ++j) {
          int u = g.vertex_at(r, j), v = g.vertex_at(r + pi, j + t);
          if (u < 0 || v < 0 || !g.vertices[static_cast<std::size_t>(u)].core ||
              !g.vertices[static_cast<std::size_t>(v)].core)
            continue;
          long fu = first_child(u), fv = first_child(v);
          if (fu == LONG_MAX || fv == LONG_MAX) continue;
          shift.push_back(fv - fu);
          found = true;
        }
        if (!found) break;
      }
      std::map<int, int> phi;
      for (long r = 0; r < static_cast<long>(shift.size()) && r + pi < rows; ++r)
        for (long j = span[r].first; j <= span[r].second; ++j) {
          int u = g.vertex_at(r, j), v = g.vertex_at(r + pi, j + shift[static_cast<std::size_t>(r)]);
          if (u >= 0 && v >= 0) phi[u] = v;
        }
      std::set<int> image;
      for (const auto& [u, v] : phi) image.insert(v);
      bool ok = !phi.empty();
      for (const auto& [u, v] : phi) {
        if (g.vertices[static_cast<std::size_t>(u)].label != g.vertices[static_cast<std::size_t>(v)].label) {
          ok = false;
          break;
        }
        std::set<int> mapped, there;
        for (int x : g.rot[static_cast<std::size_t>(u)])
          if (phi.count(x)) mapped.insert(phi.at(x));
        for (int y : g.rot[static_cast<std::size_t>(v)])
          if (image.count(y)) there.insert(y);
        if (mapped != there) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back({pi, t0});
    }
  }
  return out;
}

}  // namespace orbitile
