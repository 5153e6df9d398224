#include "orbitile/serialize.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "orbitile/errors.hpp"

namespace orbitile {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

namespace {

template <class T>
T get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Json window_to_json(const OrbitWindow& w, const std::vector<std::string>& alphabet) {
  Json j;
  j["kind"] = w.kind == OrbitWindow::Kind::Base ? "base" : "overlay";
  j["alphabet"] = alphabet;
  Json rows = Json::array();
  for (const auto& r : w.rows) {
    Json row;
    row["i"] = r.i;
    row["j_lo"] = r.j_lo;
    Json letters = Json::array();
    for (int l : r.letters) letters.push_back(alphabet.at(static_cast<std::size_t>(l)));
    row["letters"] = letters;
    row["origin_counts"] = r.origin_counts;
    row["core"] = {r.core_lo, r.core_hi};
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["parents"] = w.parents;
  Json geo = Json::array();
  for (const auto& g : w.geometry) {
    Json x;
    x["Delta"] = g.Delta;
    x["delta"] = g.delta;
    x["nabla"] = g.nabla;
    x["U"] = g.U;
    x["V"] = g.V;
    x["W"] = g.W;
    geo.push_back(x);
  }
  j["geometry"] = geo;
  j["metadata"] = w.metadata;
  return j;
}

WindowDoc window_from_json(const Json& j) {
  WindowDoc doc;
  auto kind = get<std::string>(j, "kind");
  if (kind != "base" && kind != "overlay") throw ParseError("unknown window kind " + kind);
  doc.window.kind = kind == "base" ? OrbitWindow::Kind::Base : OrbitWindow::Kind::Overlay;
  doc.alphabet = get<std::vector<std::string>>(j, "alphabet");
  std::map<std::string, int> idx;
  for (std::size_t k = 0; k < doc.alphabet.size(); ++k) idx.emplace(doc.alphabet[k], static_cast<int>(k));
  for (const auto& row : j.at("rows")) {
    OrbitRow r;
    r.i = get<long>(row, "i");
    r.j_lo = get<long>(row, "j_lo");
    for (const auto& name : get<std::vector<std::string>>(row, "letters")) {
      auto it = idx.find(name);
      if (it == idx.end()) throw UnknownLetter("window letter " + name + " is not in its alphabet");
      r.letters.push_back(it->second);
    }
    r.origin_counts = get<std::vector<long>>(row, "origin_counts");
    auto core = get<std::vector<long>>(row, "core");
    if (core.size() != 2) throw ParseError("core must be [lo, hi]");
    r.core_lo = core[0];
    r.core_hi = core[1];
    doc.window.rows.push_back(std::move(r));
  }
  doc.window.parents = get<std::vector<std::vector<long>>>(j, "parents");
  if (doc.window.rows.size() > 0 && doc.window.parents.size() + 1 != doc.window.rows.size())
    throw ParseError("parents must have one entry per row pair");
  for (const auto& x : j.at("geometry")) {
    RowGeometry g;
    g.Delta = get<long>(x, "Delta");
    g.delta = get<int>(x, "delta");
    g.nabla = get<std::vector<long>>(x, "nabla");
    g.U = get<std::vector<std::string>>(x, "U");
    g.V = get<std::vector<std::string>>(x, "V");
    g.W = get<std::vector<std::string>>(x, "W");
    doc.window.geometry.push_back(std::move(g));
  }
  doc.window.metadata = get<std::map<std::string, std::string>>(j, "metadata");
  return doc;
}

Json patch_to_json(const GraphPatch& g) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : g.vertices)
    vs.push_back({{"row", v.row}, {"col", v.col}, {"letter", v.letter}, {"label", v.label}, {"core", v.core}});
  j["vertices"] = vs;
  Json es = Json::array();
  for (const auto& e : g.edges) es.push_back({{"u", e.u}, {"v", e.v}, {"vertical", e.vertical}});
  j["edges"] = es;
  j["rot"] = g.rot;
  j["reduced"] = g.reduced;
  j["metadata"] = g.metadata;
  return j;
}

GraphPatch patch_from_json(const Json& j) {
  GraphPatch g;
  for (const auto& x : j.at("vertices")) {
    PatchVertex v;
    v.row = get<long>(x, "row");
    v.col = get<long>(x, "col");
    v.letter = get<int>(x, "letter");
    v.label = get<std::string>(x, "label");
    v.core = get<bool>(x, "core");
    g.coords[{v.row, v.col}] = static_cast<int>(g.vertices.size());
    g.vertices.push_back(std::move(v));
  }
  for (const auto& x : j.at("edges")) g.edges.push_back({get<int>(x, "u"), get<int>(x, "v"), get<bool>(x, "vertical")});
  g.rot = get<std::vector<std::vector<int>>>(j, "rot");
  if (g.rot.size() != g.vertices.size()) throw ParseError("rot must have one entry per vertex");
  const int n = static_cast<int>(g.vertices.size());
  for (const auto& r : g.rot)
    for (int u : r)
      if (u < 0 || u >= n) throw ParseError("rot refers to a missing vertex");
  g.reduced = get<bool>(j, "reduced");
  g.metadata = get<std::map<std::string, std::string>>(j, "metadata");
  finish_patch(g);
  return g;
}

Json family_to_json(const PatternFamily& f) {
  Json j;
  j["p"] = f.p;
  j["q"] = f.q;
  j["b"] = f.b.to_text();
  j["slack"] = f.slack.get_str();
  j["patterns"] = f.patterns;
  j["projections"] = f.projections;
  j["metadata"] = f.metadata;
  return j;
}

PatternFamily family_from_json(const Json& j) {
  PatternFamily f;
  f.p = get<int>(j, "p");
  f.q = get<int>(j, "q");
  f.b = SubstitutionSystem::parse(get<std::string>(j, "b"));
  f.slack = parse_rational(get<std::string>(j, "slack"));
  f.patterns = get<std::set<std::string>>(j, "patterns");
  f.projections = get<std::set<std::string>>(j, "projections");
  f.metadata = get<std::map<std::string, std::string>>(j, "metadata");
  return f;
}

Json alphabet_to_json(const OverlaySystem& ov) {
  Json j;
  j["system_a"] = ov.A.sys.to_text();
  j["system_b"] = ov.B.sys.to_text();
  j["K"] = ov.K;
  j["N"] = ov.N;
  j["slack"] = ov.slack.get_str();
  Json ls = Json::array();
  for (const auto& x : ov.letters)
    ls.push_back({{"name", ov.name(x)},
                  {"alpha", ov.A.sys.letter_name(x.alpha)},
                  {"beta", ov.B.sys.format(x.beta, " ")},
                  {"p", ov.B.sys.format(x.p, " ")},
                  {"s", ov.B.sys.format(x.s, " ")},
                  {"delta", x.delta}});
  j["letters"] = ls;
  j["count"] = ov.letters.size();
  return j;
}

mpq_class parse_rational(const std::string& text, bool* was_decimal) {
  static const std::regex frac(R"(\s*([+-]?\d+)(?:/(\d+))?\s*)");
  static const std::regex dec(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
  std::smatch m;
  if (was_decimal) *was_decimal = false;
  if (std::regex_match(text, m, frac)) {
    std::string n = m[1].str();
    if (n[0] == '+') n.erase(0, 1);  // gmp wants no plus sign
    mpz_class num(n, 10), den(m[2].matched ? m[2].str() : std::string("1"), 10);
    if (den == 0) throw ParseError("zero denominator in " + text);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(text, m, dec)) {
    if (was_decimal) *was_decimal = true;
    std::string digits = m[2].str() + m[3].str();
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, m[3].str().size());
    mpq_class q(m[1].str() == "-" ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }
  throw ParseError("not a rational: " + text);
}

}  // namespace orbitile
