// One line per acceptance criterion; nonzero exit when any of them fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "orbitile/errors.hpp"
#include "orbitile/pattern_family.hpp"
#include "orbitile/render.hpp"
#include "orbitile/window_checks.hpp"

using namespace orbitile;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void run(int n, const char* name, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.ok = false;
    o.detail += " [over the " + std::to_string(static_cast<int>(budget_s)) + " s budget]";
  }
  std::printf("[%s] %d %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  failures += !o.ok;
}

struct TestSystem {
  std::string label;
  SubstitutionSystem sys;
  oracle::Rules rules;  // same rules as single characters, for the oracles
};

oracle::Rules rules_of(const SubstitutionSystem& s) {
  oracle::Rules r;
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::string img;
    for (int l : s.image(static_cast<int>(k))) img += s.letter_name(l)[0];
    r[s.letter_name(static_cast<int>(k))[0]] = img;
  }
  return r;
}

SubstitutionSystem fib() { return SubstitutionSystem::parse("system fib\nletter a -> a b\nletter b -> a\n"); }
SubstitutionSystem fig1() { return SubstitutionSystem::parse("system fig1\nletter A -> A B\nletter B -> A A B\n"); }

std::vector<TestSystem> test_systems() {
  std::vector<TestSystem> out;
  for (auto s : {unary_system(2), unary_system(3), fib(), fig1(), pq_substitution(5, 5), pq_substitution(5, 6),
                 pq_substitution(8, 8)})
    out.push_back({s.name(), s, rules_of(s)});
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// (8,8) tiles are wide: a band needs about 1000 cells a side before any face is interior.
OrbitWindow pq_band(const SubstitutionSystem& sys, const DecoratedSystem* dec, long rows, long half) {
  BaseWindowSpec spec;
  spec.rows = rows;
  spec.top_half = 6;
  spec.shape.cone = false;
  spec.shape.half_width = half;
  if (dec) return build_base_window(decorated_analysis(*dec, analyze(sys)), spec);
  return build_base_window(analyze(sys), spec);
}

// Random rational offset with small denominators; the caller redraws on DegenerateOffset.
std::pair<mpq_class, mpq_class> random_offset(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-40, 40), den(3, 47);
  mpq_class c(num(rng), den(rng)), d(num(rng), den(rng));
  c.canonicalize();
  d.canonicalize();
  return {c, d};
}

}  // namespace

int main() {
  const auto systems = test_systems();

  run(1, "growth rates", 4.0, [&] {
    const double s5 = std::sqrt(5.0), s2 = std::sqrt(2.0);
    struct Case {
      SubstitutionSystem sys;
      double expect;
    };
    std::vector<Case> cases{{unary_system(2), 2.0}, {fib(), (1 + s5) / 2}, {fig1(), 1 + s2},
                            {pq_substitution(5, 5), (7 + 3 * s5) / 2}};
    std::ostringstream d;
    bool ok = true;
    for (const auto& c : cases) {
      auto t0 = std::chrono::steady_clock::now();
      Analysis an = analyze(c.sys);
      double lam = an.growth.approx();
      double counted = static_cast<double>(oracle::growth_by_counting(rules_of(c.sys)));
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      // the reported value is a root of the characteristic polynomial
      double res = 0;
      const auto& cs = an.growth.poly.coeffs();
      for (auto it = cs.rbegin(); it != cs.rend(); ++it) res = res * lam + it->get_d();
      res = std::abs(res);
      bool here = std::abs(lam - c.expect) < 1e-9 && std::abs(counted - lam) < 1e-9 && res < 1e-6 && secs < 1.0;
      if (c.sys.size() == 1) here = here && an.growth.value.is_exact() && AdaptiveReal::compare(an.growth.value, AdaptiveReal(2)) == 0;
      ok = ok && here;
      d << c.sys.name() << "=" << an.growth.value.to_decimal(12) << (here ? "" : "(BAD)") << " ";
    }
    return Outcome{ok, d.str()};
  });

  run(2, "eigen-length identity", 5.0, [&] {
    std::mt19937 rng(2024);
    long words = 0, bad = 0;
    for (const auto& ts : systems) {
      Analysis an = analyze(ts.sys);
      for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<int> len(1, 30), let(0, static_cast<int>(ts.sys.size()) - 1);
        Word w(static_cast<std::size_t>(len(rng)));
        for (int& x : w) x = let(rng);
        AdaptiveReal lhs = nu_length(an.dist, ts.sys.apply(w));
        AdaptiveReal rhs = an.growth.value * nu_length(an.dist, w);
        ++words;
        bad += !AdaptiveReal::approx_equal(lhs, rhs, 1e-9);
      }
    }
    return Outcome{bad == 0, std::to_string(words) + " words over " + std::to_string(systems.size()) +
                                 " systems, " + std::to_string(bad) + " off by more than 1e-9"};
  });

  run(3, "growth is Theta(lambda^k)", 10.0, [&] {
    long checked = 0, bad = 0;
    std::ostringstream d;
    for (const auto& ts : systems) {
      Analysis an = analyze(ts.sys);
      double lam = an.growth.approx();
      double vmin = an.dist.min().to_double(), vmax = an.dist.max().to_double();
      for (std::size_t a = 0; a < ts.sys.size(); ++a) {
        // |w| nu_min <= |w|_nu <= |w| nu_max and |sigma^k a|_nu = lambda^k nu_a fix the bracket at every k
        double va = an.dist[a].to_double();
        double lo = va / vmax * (1 - 1e-12), hi = va / vmin * (1 + 1e-12);
        // lengths by counting letters, independent of the library
        std::map<char, double> cnt{{ts.sys.letter_name(static_cast<int>(a))[0], 1.0}};
        double scale = 1.0;
        for (int k = 1; k <= 15; ++k) {
          std::map<char, double> next;
          for (auto [c, n] : cnt)
            for (char x : ts.rules.at(c)) next[x] += n;
          cnt = next;
          scale *= lam;
          if (k < 5) continue;
          double len = 0;
          for (auto [c, n] : cnt) len += n;
          double r = len / scale;
          ++checked;
          bad += !(lo <= r && r <= hi);
        }
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " ratios for k=5..15, " + std::to_string(bad) +
                                 " outside the bracket [nu_a/nu_max, nu_a/nu_min]"};
  });

  run(4, "overlay alphabet", 120.0, [&] {
    auto ov = enumerate_alphabet(analyze(unary_system(3)), analyze(unary_system(2)));
    std::set<oracle::Letter> got;
    for (const auto& x : ov.letters)
      got.insert({ov.A.sys.letter_name(x.alpha)[0], ov.B.sys.format(x.beta), ov.B.sys.format(x.p),
                  ov.B.sys.format(x.s), x.delta});
    // by hand: eta' = 1, gamma = 2, slack 3/2 gives nu' = 3; K = 2 since 2^2 >= 3
    auto ref = oracle::alphabet({{'0', "000"}}, {{'0', 3.0L}}, {{'0', "00"}}, {{'0', 1.0L}}, 2.0L, 2);
    bool hand = ov.index_of(OverlayLetter{0, {0, 0}, {}, {0}, 1}) >= 0;
    auto pq = enumerate_alphabet(analyze(pq_substitution(5, 5)), analyze(unary_system(2)));
    long valid = 0;
    for (const auto& x : pq.letters) valid += letter_is_valid(pq, x);
    bool ok = got == ref && hand && !pq.letters.empty() && valid == static_cast<long>(pq.letters.size());
    return Outcome{ok, "(0->000,0->00): " + std::to_string(got.size()) + " letters, oracle " +
                           std::to_string(ref.size()) + (got == ref ? " equal" : " DIFFER") +
                           (hand ? ", hand letter present" : ", hand letter MISSING") + "; ({5,5},0->00): " +
                           std::to_string(pq.letters.size()) + " letters, " + std::to_string(valid) +
                           " pass the re-check"};
  });

  run(5, "overlay orbit validity", 300.0, [&] {
    std::vector<std::pair<std::string, OverlaySystem>> pairs;
    pairs.emplace_back("0->000/0->00", enumerate_alphabet(analyze(unary_system(3)), analyze(unary_system(2))));
    pairs.emplace_back("{5,5}/0->00", enumerate_alphabet(analyze(pq_substitution(5, 5)), analyze(unary_system(2))));
    std::mt19937 rng(5);
    std::ostringstream d;
    bool ok = true;
    for (const auto& [label, ov] : pairs) {
      long passed = 0, redrawn = 0, checks = 0;
      std::string first_failure;
      while (passed < 20) {
        auto [c, dd] = random_offset(rng);
        OverlayWindowSpec spec;
        spec.rows = 8;
        OrbitWindow w;
        try {
          w = overlay_window(ov, c, dd, spec);
        } catch (const DegenerateOffset&) {
          ++redrawn;
          continue;
        }
        auto rep = validate_overlay_window(ov, w, 100, static_cast<unsigned>(passed));
        checks += rep.checks;
        if (!rep.ok) {
          ok = false;
          if (first_failure.empty())
            first_failure = " first failure at c=" + c.get_str() + " d=" + dd.get_str() + ": " + rep.failures.front();
          break;
        }
        ++passed;
      }
      d << label << ": " << passed << " offsets valid (" << checks << " checks, " << redrawn << " redrawn)"
        << first_failure << "; ";
    }
    return Outcome{ok, d.str()};
  });

  run(6, "no vertical periods", 300.0, [&] {
    std::vector<std::pair<std::string, OverlaySystem>> pairs;
    pairs.emplace_back("0->000/0->00", enumerate_alphabet(analyze(unary_system(3)), analyze(unary_system(2))));
    pairs.emplace_back("fib/0->00", enumerate_alphabet(analyze(fib()), analyze(unary_system(2))));
    pairs.emplace_back("{5,5}/0->00", enumerate_alphabet(analyze(pq_substitution(5, 5)), analyze(unary_system(2))));
    std::mt19937 rng(6);
    long windows = 0, periodic = 0;
    bool incomm = true;
    for (const auto& [label, ov] : pairs) {
      incomm = incomm && incommensurate(ov.A.growth, ov.B.growth, 20).kind == CommensurabilityVerdict::IncommensurateUpTo;
      for (int t = 0; t < 4;) {
        auto [c, d] = random_offset(rng);
        OverlayWindowSpec spec;
        spec.rows = 12;
        OrbitWindow w;
        try {
          w = overlay_window(ov, c, d, spec);
        } catch (const DegenerateOffset&) {
          continue;
        }
        ++t;
        ++windows;
        periodic += !period_search(w, 4).empty();
      }
    }
    auto control = incommensurate(growth_rate(unary_system(2)), growth_rate(unary_system(4)), 20);
    bool ok = periodic == 0 && incomm && control.to_string() == "Commensurate(2,1)";
    return Outcome{ok, std::to_string(windows) + " height-12 windows over 3 incommensurate pairs, " +
                           std::to_string(periodic) + " with a period <= 4; control 0->00 vs 0->0000: " +
                           control.to_string()};
  });

  run(7, "{p,q} structure of reduced patches", 120.0, [&] {
    std::ostringstream d;
    bool ok = true;
    for (auto [p, q] : std::vector<std::pair<int, int>>{{5, 5}, {5, 6}, {8, 8}}) {
      auto sys = pq_substitution(p, q);
      auto w = pq_band(sys, nullptr, 8, p == 8 ? 1000 : 40);
      auto g = reduce(build_orbit_graph(w, sys.letters()), [](int l) { return l == 1; });
      auto rep = check_pq(g, p, q, 1);
      ok = ok && rep.ok && rep.vertices_checked > 0 && rep.faces_checked > 0;
      d << "(" << p << "," << q << "): " << rep.vertices_checked << " vertices, " << rep.faces_checked
        << " faces, " << rep.violations.size() << " violations; ";
    }
    return Outcome{ok, d.str()};
  });

  run(8, "row reconstruction", 120.0, [&] {
    std::ostringstream d;
    bool ok = true;
    for (auto [p, q] : std::vector<std::pair<int, int>>{{5, 5}, {5, 6}, {8, 8}}) {
      auto sys = pq_substitution(p, q);
      auto dec = decorate(sys);
      auto w = pq_band(sys, &dec, 8, p == 8 ? 1000 : 40);
      auto g = reduce(build_orbit_graph(w, dec.reachable.letters()),
                      [&](int l) { return dec.base_of[static_cast<std::size_t>(l)] == 1; });
      // hand the reconstruction a relabelled copy so vertex order carries no information
      std::vector<int> perm(g.vertices.size());
      for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
      std::mt19937 rng(static_cast<unsigned>(p * 100 + q));
      std::shuffle(perm.begin(), perm.end(), rng);
      auto dg0 = decorated_graph(g, dec);
      DecoratedGraph dg;
      dg.base.resize(perm.size());
      dg.pos.resize(perm.size());
      dg.rot.resize(perm.size());
      for (std::size_t v = 0; v < perm.size(); ++v) {
        auto nv = static_cast<std::size_t>(perm[v]);
        dg.base[nv] = dg0.base[v];
        dg.pos[nv] = dg0.pos[v];
        for (int u : dg0.rot[v]) dg.rot[nv].push_back(perm[static_cast<std::size_t>(u)]);
      }
      auto rec = reconstruct_rows(dg, sys, p);
      long total = 0, good = 0;
      bool have_y = false;
      long yoff = 0;
      std::map<long, long> xoff;
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (!g.interior(static_cast<int>(v), 1)) continue;
        ++total;
        auto nv = static_cast<std::size_t>(perm[v]);
        const auto& tv = g.vertices[v];
        if (!rec.known[nv]) continue;
        long yo = rec.y[nv] - tv.row, xo = rec.x[nv] - tv.col;
        if (!have_y) yoff = yo, have_y = true;
        auto [it, fresh] = xoff.emplace(tv.row, xo);
        bool right = yo == yoff && it->second == xo;
        if (tv.row > 0) {
          int tp = g.vertex_at(tv.row - 1, w.parent(static_cast<std::size_t>(tv.row - 1), tv.col));
          right = right && tp >= 0 && rec.parent[nv] == perm[static_cast<std::size_t>(tp)];
        }
        good += right;
      }
      // exactly one horizontal-type path on every interior face
      RowAnalysis ra(dg0, sys, p);
      long faces = 0, unique = 0;
      for (std::size_t f = 0; f < ra.faces().faces.size(); ++f) {
        bool interior = true;
        for (int v : ra.faces().faces[f]) interior = interior && g.interior(v, 1);
        if (!interior) continue;
        ++faces;
        unique += ra.candidates(ra.faces().faces[f]).size() == 1;
      }
      ok = ok && total > 0 && good == total && faces > 0 && unique == faces;
      d << "(" << p << "," << q << "): " << good << "/" << total << " vertices, " << unique << "/" << faces
        << " faces with one path; ";
    }
    return Outcome{ok, d.str()};
  });

  run(9, "mutations are caught locally", 300.0, [&] {
    const int p = 5;
    A0System a0 = build_a0(p, 5, unary_system(2));
    FamilySpec spec;
    spec.offsets = default_offsets(6);
    spec.rows = 10;
    spec.half_width = 24;
    PatternFamily fam = collect_pattern_family(a0, spec);
    OverlayWindowSpec ws;
    ws.rows = spec.rows;
    ws.half_width = spec.half_width;
    auto g = a0_patch(a0, overlay_window(a0.ov, spec.offsets[0].first, spec.offsets[0].second, ws));
    auto self = check_membership(a0, g, fam);
    if (self.pass == 0 || self.fail || self.unknown)
      return Outcome{false, "generating patch does not pass: " + std::to_string(self.pass) + " pass, " +
                                std::to_string(self.fail) + " fail, " + std::to_string(self.unknown) + " unknown"};
    std::vector<int> sites;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (g.interior(static_cast<int>(v), 1)) sites.push_back(static_cast<int>(v));
    std::mt19937 rng(9);
    std::uniform_int_distribution<std::size_t> pick_site(0, sites.size() - 1), pick_letter(0, a0.names.size() - 1);
    long caught = 0, same_alpha = 0;
    for (int t = 0; t < 50; ++t) {
      int u = sites[pick_site(rng)];
      auto h = g;
      int old = h.vertices[static_cast<std::size_t>(u)].letter, nl;
      // every other mutation keeps the {p,q} letter and changes only the overlay data
      std::vector<int> pool;
      if (t % 2)
        for (std::size_t l = 0; l < a0.names.size(); ++l)
          if (static_cast<int>(l) != old && a0.alpha(static_cast<int>(l)) == a0.alpha(old)) pool.push_back(static_cast<int>(l));
      if (!pool.empty()) {
        nl = pool[rng() % pool.size()];
        ++same_alpha;
      } else {
        do nl = static_cast<int>(pick_letter(rng));
        while (nl == old);
      }
      h.vertices[static_cast<std::size_t>(u)].letter = nl;
      h.vertices[static_cast<std::size_t>(u)].label = a0.names[static_cast<std::size_t>(nl)];
      auto dist = distances_from(h.rot, {u});
      std::vector<int> near;
      for (std::size_t v = 0; v < dist.size(); ++v)
        if (dist[v] >= 0 && dist[v] <= p) near.push_back(static_cast<int>(v));
      caught += check_membership(a0, h, fam, 1, near).fail > 0;
    }
    return Outcome{caught == 50, std::to_string(caught) + "/50 mutations give a FAIL within distance " +
                                     std::to_string(p) + " (" + std::to_string(same_alpha) +
                                     " kept the {5,5} letter); generating patch: " + std::to_string(self.pass) +
                                     " vertices pass; family of " + std::to_string(fam.patterns.size()) +
                                     " patterns"};
  });

  run(10, "rendering exactness", 30.0, [&] {
    std::ostringstream d;
    bool ok = true;
    auto check = [&](const std::string& label, const std::vector<TilingLayer>& layers) {
      auto svg = render_svg(layers);
      auto rep = check_abutment(svg, layers, 1e-9);
      ok = ok && rep.ok && (layers.empty() || rep.rects > 0);
      d << label << ": " << rep.rects << " rects, worst " << fmt(rep.worst) << (rep.ok ? "" : " FAILED") << "; ";
    };
    auto pq = pq_substitution(5, 5);
    auto wb = pq_band(pq, nullptr, 6, 30);
    check("{5,5} band", {layer_for(wb, pq.letters())});

    auto ov = enumerate_alphabet(analyze(unary_system(3)), analyze(unary_system(2)));
    OverlayWindowSpec spec;
    spec.rows = 6;
    auto wo = overlay_window(ov, mpq_class(1, 10), mpq_class(1, 20), spec);
    std::vector<std::string> names;
    for (const auto& x : ov.letters) names.push_back(ov.name(x));
    check("overlay window", {layer_for(wo, names)});

    // the pair A -> AB, B -> AAB over 0 -> 00, the second drawn as outlines
    BaseWindowSpec sa;
    sa.rows = 5;
    sa.top_half = 2;
    auto f1 = fig1();
    auto wa = build_base_window(analyze(f1), sa);
    BaseWindowSpec su;
    su.rows = 6;
    su.top_half = 3;
    auto wu = build_base_window(analyze(unary_system(2)), su);
    auto la = layer_for(wa, f1.letters());
    la.c = 0.1;
    la.d = 0.05;
    auto lu = layer_for(wu, unary_system(2).letters());
    lu.stroke_only = true;
    lu.stroke = "#c0392b";
    check("A->AB,B->AAB over 0->00", {la, lu});
    check("empty", {});
    return Outcome{ok, d.str()};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
