// orbitile command line. Exit codes: 0 ok, 1 validation failure, 2 usage or input error,
// 3 indeterminate comparison or degenerate offset.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "orbitile/errors.hpp"
#include "orbitile/pattern_family.hpp"
#include "orbitile/render.hpp"
#include "orbitile/serialize.hpp"
#include "orbitile/window_checks.hpp"

using namespace orbitile;

namespace {

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << dump(j);
    return;
  }
  std::ofstream f(out);
  if (!f) throw ParseError("cannot write " + out);
  f << dump(j);
}

mpq_class rational_arg(const std::string& text, const char* what) {
  bool dec = false;
  mpq_class q = parse_rational(text, &dec);
  if (dec) std::cerr << "warning: " << what << "=" << text << " read as the exact rational " << q.get_str() << "\n";
  return q;
}

Json report_json(const ValidationReport& r) {
  return {{"ok", r.ok}, {"checks", r.checks}, {"failure_count", r.failure_count}, {"failures", r.failures}};
}

std::vector<std::string> overlay_names(const OverlaySystem& ov) {
  std::vector<std::string> out;
  for (const auto& x : ov.letters) out.push_back(ov.name(x));
  return out;
}

Analysis analysis_for_a(const SubstitutionSystem& sys, bool decorated) {
  if (!decorated) return analyze(sys);
  return decorated_analysis(decorate(sys), analyze(sys));
}

// "Y3;0;;0;2" -> "Y3" -> "Y"
std::string base_name(const std::string& label) {
  std::string a = label.substr(0, label.find(';'));
  while (!a.empty() && std::isdigit(static_cast<unsigned char>(a.back()))) a.pop_back();
  return a;
}

int decorated_index(const DecoratedSystem& d, const std::string& label) {
  return d.reachable.index_of(label.substr(0, label.find(';')));
}

std::vector<std::pair<mpq_class, mpq_class>> parse_windows(const std::string& spec, unsigned seed) {
  if (spec.find(':') == std::string::npos) {
    int n = std::stoi(spec);
    if (n < 1) throw ParseError("--windows needs a positive count");
    return default_offsets(n, seed);
  }
  std::vector<std::pair<mpq_class, mpq_class>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("window offset must be c:d, got " + item);
    out.emplace_back(rational_arg(item.substr(0, colon), "c"), rational_arg(item.substr(colon + 1), "d"));
  }
  return out;
}

Json analyze_json(const SubstitutionSystem& sys) {
  Json j;
  j["system"] = sys.name();
  j["letters"] = sys.letters();
  j["matrix"] = sys.matrix();
  j["primitive"] = sys.is_primitive();
  if (!j["primitive"].get<bool>()) return j;
  j["expansive"] = sys.is_expansive();
  if (!j["expansive"].get<bool>()) return j;
  Analysis an = analyze(sys);
  j["lambda"] = an.growth.value.to_decimal(30);
  j["lambda_isolating_interval"] = {an.growth.lo.get_str(), an.growth.hi.get_str()};
  MinimalPolynomial mp = minimal_polynomial(an.growth.poly, an.growth.lo, an.growth.hi);
  j["minimal_polynomial"] = mp.poly.to_string();
  j["minimal_polynomial_certified"] = mp.certified;
  j["characteristic_polynomial"] = characteristic_polynomial(sys.matrix()).to_string();
  Json nu;
  for (std::size_t k = 0; k < sys.size(); ++k) nu[sys.letter_name(static_cast<int>(k))] = an.dist[k].to_decimal(20);
  j["nu"] = nu;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitile: orbit tilings of substitution systems and their overlays"};
  app.set_config("--config", "", "TOML-style file with flag values");
  app.require_subcommand(1);
  std::string out;

  // analyze
  auto* c_an = app.add_subcommand("analyze", "matrix, primitivity, growth rate, distribution");
  std::string an_file;
  c_an->add_option("system", an_file)->required();

  // compat
  auto* c_co = app.add_subcommand("compat", "incommensurability verdict and K");
  std::string co_a, co_b;
  long co_bound = 20;
  c_co->add_option("a", co_a)->required();
  c_co->add_option("b", co_b)->required();
  c_co->add_option("--bound", co_bound);

  // alphabet
  auto* c_al = app.add_subcommand("alphabet", "enumerate the overlay alphabet");
  std::string al_a, al_b, al_slack = "3/2";
  bool al_dec = false;
  c_al->add_option("a", al_a)->required();
  c_al->add_option("b", al_b)->required();
  c_al->add_option("--slack", al_slack);
  c_al->add_flag("--decorate", al_dec, "use the decorated system of a");
  c_al->add_option("-o,--output", out);

  // orbit
  auto* c_or = app.add_subcommand("orbit", "build and validate a base or overlay window");
  std::string or_a, or_b, or_c = "1/10", or_d = "1/20", or_slack = "3/2";
  long or_rows = 8, or_half = 12, or_top = 1;
  bool or_cone = false, or_dec = false, or_tie = false;
  c_or->add_option("a", or_a)->required();
  c_or->add_option("b", or_b);
  c_or->add_option("--rows", or_rows);
  c_or->add_option("--c", or_c);
  c_or->add_option("--d", or_d);
  c_or->add_option("--half-width", or_half);
  c_or->add_option("--top-half", or_top);
  c_or->add_option("--slack", or_slack);
  c_or->add_flag("--cone", or_cone);
  c_or->add_flag("--decorate", or_dec, "use the decorated system of a");
  c_or->add_flag("--tie-left", or_tie);
  c_or->add_option("-o,--output", out);

  // graph
  auto* c_gr = app.add_subcommand("graph", "orbit graph of a window");
  std::string gr_file, gr_w = "W";
  bool gr_reduce = false;
  std::vector<int> gr_pq;
  int gr_radius = 1;
  c_gr->add_option("window", gr_file)->required();
  c_gr->add_flag("--reduce", gr_reduce);
  c_gr->add_option("--w-letter", gr_w, "base letter whose incoming production edges are dropped");
  c_gr->add_option("--check-pq", gr_pq)->expected(2);
  c_gr->add_option("--radius", gr_radius);
  c_gr->add_option("-o,--output", out);

  // reconstruct
  auto* c_re = app.add_subcommand("reconstruct", "rows, columns and parents from a decorated patch");
  std::string re_file;
  int re_p = 5, re_q = 5;
  c_re->add_option("patch", re_file)->required();
  c_re->add_option("--p", re_p);
  c_re->add_option("--q", re_q);
  c_re->add_option("-o,--output", out);

  // family
  auto* c_fa = app.add_subcommand("family", "collect the pattern family");
  int fa_p = 5, fa_q = 5;
  std::string fa_b, fa_windows = "6", fa_slack = "3/2";
  unsigned fa_seed = 12345;
  FamilySpec fa_spec;
  c_fa->add_option("--p", fa_p);
  c_fa->add_option("--q", fa_q);
  c_fa->add_option("--b", fa_b, "second system; default 0 -> 0 0");
  c_fa->add_option("--windows", fa_windows, "a count of seeded random offsets, or c:d,c:d,...");
  c_fa->add_option("--seed", fa_seed);
  c_fa->add_option("--rows", fa_spec.rows);
  c_fa->add_option("--half-width", fa_spec.half_width);
  c_fa->add_option("--slack", fa_slack);
  c_fa->add_option("-o,--output", out);

  // member
  auto* c_me = app.add_subcommand("member", "check a patch against a pattern family");
  std::string me_patch, me_family;
  int me_radius = 1;
  c_me->add_option("patch", me_patch)->required();
  c_me->add_option("family", me_family)->required();
  c_me->add_option("--radius", me_radius);

  // render
  auto* c_rd = app.add_subcommand("render", "SVG of a window, optionally with a second one drawn over it");
  std::string rd_file, rd_over, rd_c = "0", rd_d = "0";
  c_rd->add_option("window", rd_file)->required();
  c_rd->add_option("--overlay", rd_over);
  c_rd->add_option("--c", rd_c, "horizontal offset of the first base window");
  c_rd->add_option("--d", rd_d, "vertical offset of the first base window");
  c_rd->add_option("-o,--output", out)->required();

  // periods
  auto* c_pe = app.add_subcommand("periods", "vertical period search");
  std::string pe_file;
  long pe_max = 4;
  c_pe->add_option("window", pe_file)->required();
  c_pe->add_option("--max-pi", pe_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_an) {
      Json j = analyze_json(SubstitutionSystem::load(an_file));
      std::cout << dump(j);
      return j["primitive"].get<bool>() && j.value("expansive", false) ? 0 : 1;
    }
    if (*c_co) {
      Analysis a = analyze(SubstitutionSystem::load(co_a)), b = analyze(SubstitutionSystem::load(co_b));
      auto v = incommensurate(a.growth, b.growth, co_bound);
      Json j{{"verdict", v.to_string()}, {"bound", co_bound}};
      if (v.kind == CommensurabilityVerdict::Commensurate) {
        j["m"] = v.m;
        j["n"] = v.n;
        std::cout << dump(j);
        return 1;
      }
      if (v.kind == CommensurabilityVerdict::Indeterminate) {
        std::cout << dump(j);
        return 3;
      }
      j["K"] = compute_K(a.growth, b.growth);
      std::cout << dump(j);
      return 0;
    }
    if (*c_al) {
      OverlayOptions opt;
      opt.slack = rational_arg(al_slack, "slack");
      auto ov = enumerate_alphabet(analysis_for_a(SubstitutionSystem::load(al_a), al_dec),
                                   analyze(SubstitutionSystem::load(al_b)), opt);
      emit(alphabet_to_json(ov), out);
      return ov.letters.empty() ? 1 : 0;
    }
    if (*c_or) {
      SubstitutionSystem sa = SubstitutionSystem::load(or_a);
      if (or_b.empty()) {
        Analysis an = analysis_for_a(sa, or_dec);
        BaseWindowSpec spec;
        spec.rows = or_rows;
        spec.top_half = or_top;
        spec.shape.cone = or_cone;
        spec.shape.half_width = or_half;
        OrbitWindow w = build_base_window(an, spec);
        auto rep = validate_base_window(an.sys, w);
        if (!rep.ok) {
          std::cout << dump(report_json(rep));
          return 1;
        }
        if (or_dec) w.metadata["decorated_from"] = sa.to_text();
        emit(window_to_json(w, an.sys.letters()), out);
        return 0;
      }
      OverlayOptions opt;
      opt.slack = rational_arg(or_slack, "slack");
      auto ov = enumerate_alphabet(analysis_for_a(sa, or_dec), analyze(SubstitutionSystem::load(or_b)), opt);
      OverlayWindowSpec spec;
      spec.rows = or_rows;
      spec.half_width = or_cone ? 0 : or_half;
      spec.top_half = or_top;
      spec.tie_left = or_tie;
      OrbitWindow w = overlay_window(ov, rational_arg(or_c, "c"), rational_arg(or_d, "d"), spec);
      auto rep = validate_overlay_window(ov, w);
      if (!rep.ok) {
        std::cout << dump(report_json(rep));
        return 1;
      }
      if (or_dec) w.metadata["decorated_from"] = sa.to_text();
      emit(window_to_json(w, overlay_names(ov)), out);
      return 0;
    }
    if (*c_gr) {
      WindowDoc doc = window_from_json(load_json(gr_file));
      GraphPatch g = build_orbit_graph(doc.window, doc.alphabet);
      if (gr_reduce)
        g = reduce(g, [&](int l) { return base_name(doc.alphabet.at(static_cast<std::size_t>(l))) == gr_w; });
      if (!gr_pq.empty()) {
        PQReport r = check_pq(g, gr_pq[0], gr_pq[1], gr_radius);
        if (!r.ok) {
          std::cout << dump(Json{{"ok", false},
                                 {"vertices_checked", r.vertices_checked},
                                 {"faces_checked", r.faces_checked},
                                 {"violations", r.violations}});
          return 1;
        }
        std::cerr << "check_pq ok: " << r.vertices_checked << " vertices, " << r.faces_checked << " faces\n";
      }
      emit(patch_to_json(g), out);
      return 0;
    }
    if (*c_re) {
      GraphPatch g = patch_from_json(load_json(re_file));
      SubstitutionSystem sys = pq_substitution(re_p, re_q);
      DecoratedSystem dec = decorate(sys);
      DecoratedGraph dg;
      dg.rot = g.rot;
      for (const auto& v : g.vertices) {
        int k = decorated_index(dec, v.label);
        dg.base.push_back(dec.base_of.at(static_cast<std::size_t>(k)));
        dg.pos.push_back(dec.pos_of.at(static_cast<std::size_t>(k)));
      }
      Reconstruction rec;
      try {
        rec = reconstruct_rows(dg, sys, re_p);
      } catch (const InconsistentCycle& e) {
        std::cout << dump(Json{{"ok", false}, {"error", e.what()}});
        return 1;
      }
      Json vs = Json::array();
      for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (rec.known[v]) vs.push_back({{"vertex", v}, {"y", rec.y[v]}, {"x", rec.x[v]}, {"parent", rec.parent[v]}});
      emit(Json{{"ok", true}, {"base_vertex", rec.base_vertex}, {"vertices", vs}}, out);
      return 0;
    }
    if (*c_fa) {
      SubstitutionSystem b = fa_b.empty() ? unary_system(2) : SubstitutionSystem::load(fa_b);
      A0System a0 = build_a0(fa_p, fa_q, b, rational_arg(fa_slack, "slack"));
      fa_spec.offsets = parse_windows(fa_windows, fa_seed);
      PatternFamily fam = collect_pattern_family(a0, fa_spec);
      fam.metadata["seed"] = std::to_string(fa_seed);
      fam.metadata["windows_spec"] = fa_windows;
      emit(family_to_json(fam), out);
      return fam.patterns.empty() ? 1 : 0;
    }
    if (*c_me) {
      PatternFamily fam = family_from_json(load_json(me_family));
      GraphPatch g = patch_from_json(load_json(me_patch));
      A0System a0 = build_a0(fam.p, fam.q, fam.b, fam.slack);
      std::map<std::string, int> idx;
      for (std::size_t k = 0; k < a0.names.size(); ++k) idx.emplace(a0.names[k], static_cast<int>(k));
      for (auto& v : g.vertices) {
        auto it = idx.find(v.label);
        if (it == idx.end()) {
          std::cout << dump(Json{{"ok", false}, {"error", "label not in the alphabet: " + v.label}});
          return 1;
        }
        v.letter = it->second;
      }
      MembershipReport rep = check_membership(a0, g, fam, me_radius);
      Json vs = Json::array();
      for (const auto& v : rep.vertices) vs.push_back({{"vertex", v.vertex}, {"verdict", to_string(v.verdict)}, {"reason", v.reason}});
      std::cout << dump(Json{{"ok", rep.fail == 0}, {"pass", rep.pass}, {"fail", rep.fail}, {"unknown", rep.unknown}, {"vertices", vs}});
      return rep.fail == 0 ? 0 : 1;
    }
    if (*c_rd) {
      WindowDoc first = window_from_json(load_json(rd_file));
      std::vector<TilingLayer> layers{layer_for(first.window, first.alphabet)};
      if (first.window.kind == OrbitWindow::Kind::Base) {
        layers[0].c = rational_arg(rd_c, "c").get_d();
        layers[0].d = rational_arg(rd_d, "d").get_d();
      }
      WindowDoc second;
      if (!rd_over.empty()) {
        second = window_from_json(load_json(rd_over));
        layers.push_back(layer_for(second.window, second.alphabet));
        layers.back().stroke_only = true;
        layers.back().stroke = "#c0392b";
      }
      std::string svg = render_svg(layers);
      std::ofstream f(out);
      if (!f) throw ParseError("cannot write " + out);
      f << svg;
      AbutmentReport rep = check_abutment(svg, layers);
      Json j{{"ok", rep.ok}, {"rects", rep.rects}, {"pairs_checked", rep.pairs_checked},
             {"parents_checked", rep.parents_checked}, {"worst_relative_defect", rep.worst}, {"problems", rep.problems}};
      std::cout << dump(j);
      return rep.ok ? 0 : 1;
    }
    if (*c_pe) {
      WindowDoc doc = window_from_json(load_json(pe_file));
      auto found = period_search(doc.window, pe_max);
      Json ps = Json::array();
      for (const auto& e : found) ps.push_back({{"pi", e.pi}, {"shifts", e.shifts}, {"compared", e.compared}});
      std::cout << dump(Json{{"max_pi", pe_max}, {"periods", ps}, {"aperiodic_at_window_scale", found.empty()}});
      return 0;
    }
  } catch (const IndeterminateComparison& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateOffset& e) {
    std::cerr << "degenerate offset: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownLetter& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BadParameters& e) {
    std::cerr << "bad parameters: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
