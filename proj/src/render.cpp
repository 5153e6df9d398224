#include "orbitile/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <regex>
#include <sstream>

#include "orbitile/errors.hpp"
#include "orbitile/growth.hpp"
#include "orbitile/pq_surface.hpp"

namespace orbitile {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string esc(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '&') out += "&amp;";
    else if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else if (ch == '"') out += "&quot;";
    else out += ch;
  }
  return out;
}

struct Rect {
  double x, y, w, h;
};

// rects[r][k] for cell rows[r].j_lo + k
std::vector<std::vector<Rect>> layout(const TilingLayer& L) {
  std::vector<std::vector<Rect>> out;
  if (!L.window) return out;
  const double lg = std::log(L.growth);
  for (const auto& row : L.window->rows) {
    const long double scale = std::exp(static_cast<long double>(L.d)) * std::pow(static_cast<long double>(L.growth), -static_cast<long double>(row.i));
    long double pos = 0;
    for (std::size_t k = 0; k < row.origin_counts.size() && k < L.weights.size(); ++k)
      pos += static_cast<long double>(row.origin_counts[k]) * L.weights[k];
    std::vector<Rect> rs;
    for (int l : row.letters) {
      long double wgt = L.weights.at(static_cast<std::size_t>(L.weight_class.at(static_cast<std::size_t>(l))));
      rs.push_back({static_cast<double>(L.c + scale * pos), row.i * lg - L.d, static_cast<double>(scale * wgt), lg});
      pos += wgt;
    }
    out.push_back(std::move(rs));
  }
  return out;
}

}  // namespace

TilingLayer layer_for(const OrbitWindow& w, const std::vector<std::string>& names) {
  TilingLayer L;
  L.window = &w;
  L.names = names;
  const bool overlay = w.kind == OrbitWindow::Kind::Overlay;
  auto it = w.metadata.find(overlay ? "system_a" : "system");
  if (it == w.metadata.end()) throw ParseError("window metadata lacks its substitution system");
  SubstitutionSystem sys = SubstitutionSystem::parse(it->second);
  Analysis an;
  if (auto df = w.metadata.find("decorated_from"); overlay && df != w.metadata.end()) {
    SubstitutionSystem base = SubstitutionSystem::parse(df->second);
    an = decorated_analysis(decorate(base), analyze(base));
  } else {
    an = analyze(sys);
  }
  L.growth = an.growth.approx();
  for (const auto& x : an.dist.weights) L.weights.push_back(x.to_double());
  for (const auto& name : names) {
    if (!overlay) {
      L.weight_class.push_back(sys.index_of(name));
    } else {
      L.weight_class.push_back(sys.index_of(name.substr(0, name.find(';'))));
    }
  }
  if (overlay) {
    if (auto c = w.metadata.find("c"); c != w.metadata.end()) L.c = mpq_class(c->second).get_d();
    if (auto d = w.metadata.find("d"); d != w.metadata.end()) L.d = mpq_class(d->second).get_d();
  }
  return L;
}

std::string render_svg(const std::vector<TilingLayer>& layers) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  std::vector<std::vector<std::vector<Rect>>> all;
  for (const auto& L : layers) {
    all.push_back(layout(L));
    for (const auto& row : all.back())
      for (const auto& r : row) {
        x0 = std::min(x0, r.x);
        y0 = std::min(y0, r.y);
        x1 = std::max(x1, r.x + r.w);
        y1 = std::max(y1, r.y + r.h);
      }
  }
  if (!(x0 < x1)) x0 = y0 = 0, x1 = y1 = 1;
  const double pad = 0.02 * std::max(x1 - x0, y1 - y0);
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(x0 - pad) << ' ' << num(y0 - pad)
    << ' ' << num(x1 - x0 + 2 * pad) << ' ' << num(y1 - y0 + 2 * pad) << "\">\n";
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& L = layers[k];
    s << "<g id=\"layer" << k << "\" fill=\"" << (L.stroke_only ? "none" : L.fill) << "\" stroke=\"" << L.stroke
      << "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\">\n";
    for (std::size_t r = 0; r < all[k].size(); ++r) {
      const auto& row = L.window->rows[r];
      for (std::size_t j = 0; j < all[k][r].size(); ++j) {
        const Rect& q = all[k][r][j];
        s << "<rect data-layer=\"" << k << "\" data-row=\"" << r << "\" data-col=\"" << row.j_lo + static_cast<long>(j)
          << "\" x=\"" << num(q.x) << "\" y=\"" << num(q.y) << "\" width=\"" << num(q.w) << "\" height=\"" << num(q.h)
          << "\" vector-effect=\"non-scaling-stroke\"><title>"
          << esc(L.names.empty() ? std::to_string(row.letters[j]) : L.names.at(static_cast<std::size_t>(row.letters[j])))
          << "</title></rect>\n";
      }
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

AbutmentReport check_abutment(const std::string& svg, const std::vector<TilingLayer>& layers, double tol) {
  AbutmentReport rep;
  static const std::regex rect_re(
      R"re(<rect data-layer="(\d+)" data-row="(\d+)" data-col="(-?\d+)" x="([^"]+)" y="([^"]+)" width="([^"]+)" height="([^"]+)")re");
  std::map<std::tuple<std::size_t, std::size_t, long>, Rect> got;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), rect_re); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    got[{std::stoul(m[1]), std::stoul(m[2]), std::stol(m[3])}] = {std::stod(m[4]), std::stod(m[5]), std::stod(m[6]),
                                                                    std::stod(m[7])};
    ++rep.rects;
  }
  auto note = [&](double defect, double scale, const std::string& what) {
    double rel = scale > 0 ? defect / scale : defect;
    rep.worst = std::max(rep.worst, rel);
    if (rel > tol) {
      rep.ok = false;
      if (rep.problems.size() < 20) rep.problems.push_back(what + " off by " + num(rel));
    }
  };
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const OrbitWindow* w = layers[k].window;
    if (!w) continue;
    auto at = [&](std::size_t r, long j) -> const Rect* {
      auto it = got.find({k, r, j});
      return it == got.end() ? nullptr : &it->second;
    };
    for (std::size_t r = 0; r < w->rows.size(); ++r) {
      const auto& row = w->rows[r];
      const Rect* a = at(r, row.j_lo);
      const Rect* b = at(r, row.j_hi());
      if (!a || !b) {
        rep.ok = false;
        rep.problems.push_back("row " + std::to_string(r) + " missing from the SVG");
        continue;
      }
      const double width = b->x + b->w - a->x;
      for (long j = row.j_lo; j < row.j_hi(); ++j) {
        const Rect *u = at(r, j), *v = at(r, j + 1);
        if (!u || !v) continue;
        ++rep.pairs_checked;
        note(std::abs(u->x + u->w - v->x), width, "row " + std::to_string(r) + " gap at " + std::to_string(j));
      }
      if (r + 1 < w->rows.size()) {
        const Rect* c = at(r + 1, w->rows[r + 1].j_lo);
        if (c) note(std::abs(a->y + a->h - c->y), a->h, "rows " + std::to_string(r) + "/" + std::to_string(r + 1));
        for (long j = row.core_lo; j <= row.core_hi; ++j) {
          auto [f, l] = w->children(r, j);
          const Rect *p = at(r, j), *cf = at(r + 1, f), *cl = at(r + 1, l);
          if (!p || !cf || !cl) continue;
          ++rep.parents_checked;
          note(std::abs(p->x - cf->x) + std::abs(p->x + p->w - cl->x - cl->w), width,
               "children of (" + std::to_string(r) + "," + std::to_string(j) + ")");
        }
      }
    }
  }
  return rep;
}

}  // namespace orbitile
