#include "orbitile/pq_surface.hpp"

#include <algorithm>

#include "orbitile/errors.hpp"

namespace orbitile {

SubstitutionSystem pq_substitution(int p, int q) {
  if (p < 5 || q < 5) throw BadParameters("{p,q} substitution needs p, q >= 5");
  const int Y = 0, W = 1;
  auto block = [&](Word& w, int reps) {
    for (int r = 0; r < reps; ++r) {
      w.push_back(Y);
      w.insert(w.end(), static_cast<std::size_t>(p - 3), W);
    }
    w.push_back(Y);
    w.insert(w.end(), static_cast<std::size_t>(p - 4), W);
  };
  Word y, w;
  block(y, q - 4);
  block(w, q - 3);
  return SubstitutionSystem("pq" + std::to_string(p) + "_" + std::to_string(q), {"Y", "W"}, {y, w});
}

int DecoratedSystem::reachable_index(int b, int pos) const {
  for (std::size_t k = 0; k < base_of.size(); ++k)
    if (base_of[k] == b && pos_of[k] == pos) return static_cast<int>(k);
  return -1;
}

DecoratedSystem decorate(const SubstitutionSystem& sys) {
  DecoratedSystem d;
  d.base = sys;
  for (const auto& img : sys.rules()) d.N = std::max<long>(d.N, static_cast<long>(img.size()));
  const std::size_t nb = sys.size();
  auto full_id = [&](int a, long i) { return static_cast<int>(static_cast<long>(a) * d.N + (i - 1)); };

  std::vector<std::string> names;
  std::vector<Word> rules;
  for (std::size_t a = 0; a < nb; ++a)
    for (long i = 1; i <= d.N; ++i) names.push_back(sys.letter_name(static_cast<int>(a)) + std::to_string(i));
  for (std::size_t a = 0; a < nb; ++a)
    for (long i = 1; i <= d.N; ++i) {
      // sigma_#(a, i) ignores i
      const Word& img = sys.image(static_cast<int>(a));
      Word out;
      for (std::size_t k = 0; k < img.size(); ++k) out.push_back(full_id(img[k], static_cast<long>(k) + 1));
      rules.push_back(out);
    }
  d.full = SubstitutionSystem(sys.name() + "#", names, rules);

  // reachable letters, in order of first appearance over the images of a = 0, 1, ...
  std::vector<int> order;
  std::vector<int> seen(names.size(), -1);
  for (std::size_t a = 0; a < nb; ++a) {
    const Word& img = sys.image(static_cast<int>(a));
    for (std::size_t k = 0; k < img.size(); ++k) {
      int id = full_id(img[k], static_cast<long>(k) + 1);
      if (seen[static_cast<std::size_t>(id)] >= 0) continue;
      seen[static_cast<std::size_t>(id)] = static_cast<int>(order.size());
      order.push_back(id);
      d.base_of.push_back(img[k]);
      d.pos_of.push_back(static_cast<int>(k) + 1);
    }
  }
  std::vector<std::string> rnames;
  std::vector<Word> rrules;
  for (int id : order) {
    rnames.push_back(names[static_cast<std::size_t>(id)]);
    Word out;
    for (int x : rules[static_cast<std::size_t>(id)]) out.push_back(seen[static_cast<std::size_t>(x)]);
    rrules.push_back(out);
  }
  d.reachable = SubstitutionSystem(sys.name() + "#", rnames, rrules);
  return d;
}

Analysis decorated_analysis(const DecoratedSystem& d, const Analysis& base) {
  Analysis an{d.reachable, base.growth, {}};
  // the growth rate is shared; only the matrix used for exact power tests stays the base one
  for (std::size_t k = 0; k < d.base_of.size(); ++k)
    an.dist.weights.push_back(base.dist.weights[static_cast<std::size_t>(d.base_of[k])]);
  auto first_with = [&](int b) {
    return static_cast<int>(std::find(d.base_of.begin(), d.base_of.end(), b) - d.base_of.begin());
  };
  an.dist.min_index = first_with(base.dist.min_index);
  an.dist.max_index = first_with(base.dist.max_index);
  return an;
}

bool horizontal_type(const std::vector<int>& pos, int a, int p, const SubstitutionSystem& sys) {
  const long k = static_cast<long>(pos.size());
  if (k != p - 1 && k != p - 2) return false;
  const Word& img = sys.image(a);
  const long m = static_cast<long>(img.size());
  for (int n : pos)
    if (n < 1 || n > m) return false;
  for (long t = 0; t + 1 < k; ++t)
    if (pos[static_cast<std::size_t>(t + 1)] % m != (pos[static_cast<std::size_t>(t)] + 1) % m) return false;
  auto in_s = [&](int n) { return img[static_cast<std::size_t>(n - 1)] == 0; };
  return in_s(pos.front()) && in_s(pos.back());
}

RowAnalysis::RowAnalysis(const DecoratedGraph& g, const SubstitutionSystem& sys, int p)
    : g_(g), sys_(sys), p_(p), faces_(trace_faces(g.rot)) {
  for (const auto& f : faces_.faces) {
    auto c = candidates(f);
    if (c.size() == 1)
      rows_.emplace_back(c.front());
    else
      rows_.emplace_back(std::nullopt);
  }
}

std::vector<FaceRows> RowAnalysis::candidates(const std::vector<int>& face) const {
  std::vector<FaceRows> out;
  const long n = static_cast<long>(face.size());
  if (n != p_) return out;
  // paths run along the face's traced (clockwise) order; the reverse reading lets p = 5 faces
  // pick up a parent pair plus the next first child as a second path
  const int dir = 1;
  {
    for (long s = 0; s < n; ++s)
      for (long k : {static_cast<long>(p_ - 1), static_cast<long>(p_ - 2)}) {
        auto at = [&](long t) { return face[static_cast<std::size_t>(((s + dir * t) % n + n) % n)]; };
        std::vector<int> path, pos;
        for (long t = 0; t < k; ++t) {
          path.push_back(at(t));
          pos.push_back(g_.pos[static_cast<std::size_t>(at(t))]);
        }
        int v0 = at(-1), v1 = at(k);
        if (!horizontal_type(pos, g_.base[static_cast<std::size_t>(v0)], p_, sys_)) continue;
        FaceRows fr;
        fr.path = path;
        if (k == p_ - 1) {
          fr.producers.assign(static_cast<std::size_t>(k), v0);
        } else {
          fr.producers.assign(static_cast<std::size_t>(k - 1), v0);
          fr.producers.push_back(v1);
        }
        out.push_back(std::move(fr));
      }
  }
  return out;
}

int RowAnalysis::dy(int u, int v) const {
  auto f1 = faces_.face_of.find({u, v});
  auto f2 = faces_.face_of.find({v, u});
  if (f1 == faces_.face_of.end() || f2 == faces_.face_of.end()) throw BoundaryEdge("not an edge");
  if (f1->second < 0 || f2->second < 0) throw BoundaryEdge("edge on the outer face");
  int vote = 2;
  for (int f : {f1->second, f2->second}) {
    const auto& fr = rows_[static_cast<std::size_t>(f)];
    if (!fr) throw BoundaryEdge("face without a unique horizontal path");
    const auto& path = fr->path;
    auto iu = std::find(path.begin(), path.end(), u), iv = std::find(path.begin(), path.end(), v);
    bool on_u = iu != path.end(), on_v = iv != path.end();
    if (on_u && on_v && std::abs(iu - iv) == 1) return 0;
    int here = on_v && !on_u ? 1 : (on_u && !on_v ? -1 : 2);
    if (here == 2) continue;
    if (vote != 2 && vote != here) throw InconsistentCycle("faces disagree on dy");
    vote = here;
  }
  if (vote == 2) throw InconsistentCycle("edge meets no horizontal path");
  return vote;
}

DecoratedGraph decorated_graph(const GraphPatch& g, const DecoratedSystem& d,
                               const std::function<int(int)>& letter_to_dec) {
  DecoratedGraph out;
  out.rot = g.rot;
  for (const auto& v : g.vertices) {
    int k = letter_to_dec ? letter_to_dec(v.letter) : v.letter;
    out.base.push_back(d.base_of.at(static_cast<std::size_t>(k)));
    out.pos.push_back(d.pos_of.at(static_cast<std::size_t>(k)));
  }
  return out;
}

}  // namespace orbitile
