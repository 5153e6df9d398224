#include "orbitile/pattern_family.hpp"

#include <algorithm>
#include <random>

#include "orbitile/errors.hpp"
#include "orbitile/window_checks.hpp"

namespace orbitile {

A0System build_a0(int p, int q, const SubstitutionSystem& sysB, const mpq_class& slack) {
  A0System a0;
  a0.p = p;
  a0.q = q;
  a0.pq = pq_substitution(p, q);
  a0.dec = decorate(a0.pq);
  Analysis base = analyze(a0.pq);
  OverlayOptions opt;
  opt.slack = slack;
  a0.ov = enumerate_alphabet(decorated_analysis(a0.dec, base), analyze(sysB), opt);
  for (const auto& x : a0.ov.letters) a0.names.push_back(a0.ov.name(x));
  return a0;
}

std::vector<std::pair<mpq_class, mpq_class>> default_offsets(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-40, 40), den(7, 53);
  std::vector<std::pair<mpq_class, mpq_class>> out;
  while (static_cast<int>(out.size()) < count) {
    mpq_class c(num(rng), den(rng)), d(num(rng), den(rng));
    c.canonicalize();
    d.canonicalize();
    if (c == 0 && d == 0) continue;
    out.emplace_back(c, d);
  }
  return out;
}

GraphPatch a0_patch(const A0System& a0, const OrbitWindow& w) {
  GraphPatch g = build_orbit_graph(w, a0.names);
  return reduce(g, [&](int l) { return a0.is_w(l); });
}

DecoratedGraph a0_decorated(const A0System& a0, const GraphPatch& g) {
  return decorated_graph(g, a0.dec, [&](int l) { return a0.alpha(l); });
}

LocalCheck local_conditions(const A0System& a0, const GraphPatch& g, const RowAnalysis& ra, int v) {
  LocalCheck out;
  const auto& fo = ra.faces().face_of;
  std::vector<int> fs;
  for (int u : g.rot.at(static_cast<std::size_t>(v))) {
    int f = fo.at({v, u});
    if (f < 0) {
      out.reason = "boundary vertex";
      return out;
    }
    if (std::find(fs.begin(), fs.end(), f) == fs.end()) fs.push_back(f);
  }
  // children and their order, from the paths of the faces around v
  std::map<int, int> right, left;
  std::set<int> kids;
  for (int f : fs) {
    const auto& fr = ra.rows_of(f);
    if (!fr) {
      out.reason = "face without a unique horizontal path";
      return out;
    }
    for (std::size_t k = 0; k < fr->path.size(); ++k) {
      if (fr->producers[k] != v) continue;
      kids.insert(fr->path[k]);
      if (k + 1 < fr->path.size() && fr->producers[k + 1] == v) {
        int a = fr->path[k], b = fr->path[k + 1];
        if ((right.count(a) && right[a] != b) || (left.count(b) && left[b] != a)) {
          out.reason = "children do not form a path";
          return out;
        }
        right[a] = b;
        left[b] = a;
      }
    }
  }
  if (kids.empty()) {
    out.reason = "no produced vertices";
    return out;
  }
  int start = -1;
  for (int k : kids)
    if (!left.count(k)) {
      if (start >= 0) {
        out.reason = "children do not form a path";
        return out;
      }
      start = k;
    }
  if (start < 0) {
    out.reason = "children do not form a path";
    return out;
  }
  for (int k = start;; k = right[k]) {
    out.children.push_back(k);
    if (!right.count(k)) break;
  }
  if (out.children.size() != kids.size()) {
    out.reason = "children do not form a path";
    return out;
  }
  auto letter = [&](int x) { return a0.ov.letters.at(static_cast<std::size_t>(g.vertices[static_cast<std::size_t>(x)].letter)); };
  std::vector<OverlayLetter> w;
  for (int k : out.children) w.push_back(letter(k));
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (!adjacent(w[k], w[k + 1])) {
      out.reason = "L fails between vertices " + std::to_string(out.children[k]) + " and " +
                   std::to_string(out.children[k + 1]);
      return out;
    }
  if (!is_production(a0.ov, letter(v), w)) {
    out.reason = "R fails at vertex " + std::to_string(v);
    return out;
  }
  out.ok = true;
  return out;
}

namespace {

std::string a0_code(const A0System& a0, const GraphPatch& g, int v) {
  return extract_pattern(g, v, [&](int x) { return a0.names.at(static_cast<std::size_t>(g.vertices[static_cast<std::size_t>(x)].letter)); })
      .canonical();
}

std::string projection_code(const A0System& a0, const GraphPatch& g, int v) {
  return extract_pattern(g, v, [&](int x) { return a0.decorated_name(g.vertices[static_cast<std::size_t>(x)].letter); })
      .canonical();
}

}  // namespace

PatternFamily collect_pattern_family(const A0System& a0, const FamilySpec& spec) {
  PatternFamily fam;
  fam.p = a0.p;
  fam.q = a0.q;
  fam.b = a0.ov.B.sys;
  fam.slack = a0.ov.slack;

  // decorated orbits on their own, for the "labels appear in some orbit graph" condition
  {
    Analysis an = decorated_analysis(a0.dec, analyze(a0.pq));
    BaseWindowSpec bs;
    bs.rows = spec.base_rows;
    bs.top_half = 6;
    bs.shape.cone = false;
    bs.shape.half_width = spec.base_half;
    OrbitWindow w = build_base_window(an, bs);
    GraphPatch g = reduce(build_orbit_graph(w, a0.dec.reachable.letters()),
                          [&](int l) { return a0.dec.base_of[static_cast<std::size_t>(l)] == 1; });
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (g.interior(static_cast<int>(v), spec.radius))
        fam.projections.insert(extract_pattern(g, static_cast<int>(v)).canonical());
  }

  long windows = 0, skipped = 0, sites = 0;
  for (const auto& [c, d] : spec.offsets) {
    OverlayWindowSpec ws;
    ws.rows = spec.rows;
    ws.half_width = spec.half_width;
    OrbitWindow w;
    try {
      w = overlay_window(a0.ov, c, d, ws);
    } catch (const DegenerateOffset&) {
      ++skipped;
      continue;
    }
    ++windows;
    GraphPatch g = a0_patch(a0, w);
    DecoratedGraph dg = a0_decorated(a0, g);
    RowAnalysis ra(dg, a0.pq, a0.p);
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      int vi = static_cast<int>(v);
      if (!g.interior(vi, spec.radius)) continue;
      if (!local_conditions(a0, g, ra, vi).ok) continue;
      fam.projections.insert(projection_code(a0, g, vi));
      fam.patterns.insert(a0_code(a0, g, vi));
      ++sites;
    }
  }
  fam.metadata["windows"] = std::to_string(windows);
  fam.metadata["skipped_degenerate"] = std::to_string(skipped);
  fam.metadata["sites"] = std::to_string(sites);
  fam.metadata["rows"] = std::to_string(spec.rows);
  fam.metadata["half_width"] = std::to_string(spec.half_width);
  fam.metadata["radius"] = std::to_string(spec.radius);
  fam.metadata["completeness"] = "under-approximation: finitely many windows";
  return fam;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "UNKNOWN";
  }
}

MembershipReport check_membership(const A0System& a0, const GraphPatch& g, const PatternFamily& fam, int radius,
                                  const std::vector<int>& only) {
  MembershipReport rep;
  DecoratedGraph dg = a0_decorated(a0, g);
  RowAnalysis ra(dg, a0.pq, a0.p);
  std::vector<int> todo = only;
  if (todo.empty())
    for (std::size_t v = 0; v < g.vertices.size(); ++v) todo.push_back(static_cast<int>(v));
  for (int v : todo) {
    if (!g.interior(v, radius)) continue;
    VertexVerdict vv;
    vv.vertex = v;
    LocalCheck lc = local_conditions(a0, g, ra, v);
    if (!lc.ok) {
      vv.verdict = Verdict::Fail;
      vv.reason = lc.reason;
    } else if (fam.patterns.count(a0_code(a0, g, v))) {
      vv.verdict = Verdict::Pass;
    } else {
      vv.verdict = Verdict::Unknown;
      vv.reason = fam.projections.count(projection_code(a0, g, v)) ? "pattern not in the collected family"
                                                                     : "decorated pattern not realized in collected windows";
    }
    (vv.verdict == Verdict::Pass ? rep.pass : vv.verdict == Verdict::Fail ? rep.fail : rep.unknown)++;
    rep.vertices.push_back(std::move(vv));
  }
  return rep;
}

}  // namespace orbitile
