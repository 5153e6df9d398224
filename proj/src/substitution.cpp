#include "orbitile/substitution.hpp"

#include <fstream>
#include <sstream>

#include "orbitile/errors.hpp"

namespace orbitile {

SubstitutionSystem::SubstitutionSystem(std::string name, std::vector<std::string> letters,
                                       std::vector<Word> rules)
    : name_(std::move(name)), letters_(std::move(letters)), rules_(std::move(rules)) {
  if (letters_.empty()) throw ParseError("system has no letters");
  if (rules_.size() != letters_.size()) throw ParseError("one rule per letter is required");
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (!index_.emplace(letters_[k], static_cast<int>(k)).second)
      throw ParseError("duplicate letter '" + letters_[k] + "'");
  }
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (rules_[k].empty()) throw ParseError("empty image for letter '" + letters_[k] + "'");
    for (int c : rules_[k])
      if (c < 0 || static_cast<std::size_t>(c) >= letters_.size())
        throw ParseError("rule for '" + letters_[k] + "' uses an undefined letter");
  }
}

SubstitutionSystem SubstitutionSystem::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string name;
  std::vector<std::string> letters;
  std::vector<std::vector<std::string>> bodies;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
    if (kw == "system") {
      if (!name.empty()) throw ParseError("second 'system' line" + where());
      if (!(ls >> name)) throw ParseError("missing system name" + where());
    } else if (kw == "letter") {
      std::string l, arrow, tok;
      if (!(ls >> l >> arrow) || arrow != "->") throw ParseError("expected 'letter L -> ...'" + where());
      std::vector<std::string> body;
      while (ls >> tok) body.push_back(tok);
      if (body.empty()) throw ParseError("empty image for '" + l + "'" + where());
      for (const auto& prev : letters)
        if (prev == l) throw ParseError("duplicate letter '" + l + "'" + where());
      letters.push_back(l);
      bodies.push_back(std::move(body));
    } else {
      throw ParseError("unknown keyword '" + kw + "'" + where());
    }
  }
  if (name.empty()) throw ParseError("missing 'system <name>' line");
  std::map<std::string, int> idx;
  for (std::size_t k = 0; k < letters.size(); ++k) idx[letters[k]] = static_cast<int>(k);
  std::vector<Word> rules;
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    Word w;
    for (const auto& t : bodies[k]) {
      auto it = idx.find(t);
      if (it == idx.end()) throw ParseError("undefined letter '" + t + "' in rule for '" + letters[k] + "'");
      w.push_back(it->second);
    }
    rules.push_back(std::move(w));
  }
  return SubstitutionSystem(name, letters, rules);
}

SubstitutionSystem SubstitutionSystem::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string SubstitutionSystem::to_text() const {
  std::ostringstream out;
  out << "system " << name_ << "\n";
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    out << "letter " << letters_[k] << " ->";
    for (int c : rules_[k]) out << " " << letters_[static_cast<std::size_t>(c)];
    out << "\n";
  }
  return out.str();
}

int SubstitutionSystem::index_of(const std::string& letter) const {
  auto it = index_.find(letter);
  if (it == index_.end()) throw UnknownLetter("unknown letter '" + letter + "'");
  return it->second;
}

IntMatrix SubstitutionSystem::matrix() const {
  IntMatrix m(size(), std::vector<std::int64_t>(size(), 0));
  for (std::size_t j = 0; j < size(); ++j)
    for (int c : rules_[j]) ++m[static_cast<std::size_t>(c)][j];
  return m;
}

bool SubstitutionSystem::is_primitive() const {
  // Boolean powers up to the Wielandt exponent (n-1)^2 + 1.
  const std::size_t n = size();
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (int c : rules_[j]) a[static_cast<std::size_t>(c)][j] = 1;
  auto p = a;
  std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    bool positive = true;
    for (const auto& row : p)
      for (char v : row) positive = positive && v;
    if (positive) return true;
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t)
        if (p[i][t])
          for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || a[t][j];
    p = std::move(next);
  }
  return false;
}

bool SubstitutionSystem::is_expansive() const {
  if (!is_primitive()) throw NotPrimitive("system '" + name_ + "' is not primitive");
  for (const auto& r : rules_)
    if (r.size() > 1) return true;
  return false;
}

Word SubstitutionSystem::apply(const Word& w, int k) const {
  Word cur = w;
  for (int c : cur)
    if (c < 0 || static_cast<std::size_t>(c) >= size()) throw UnknownLetter("letter index out of range");
  for (int step = 0; step < k; ++step) {
    Word next;
    for (int c : cur) {
      const Word& img = rules_[static_cast<std::size_t>(c)];
      next.insert(next.end(), img.begin(), img.end());
    }
    cur = std::move(next);
  }
  return cur;
}

Word SubstitutionSystem::parse_word(const std::string& text) const {
  Word w;
  std::istringstream in(text);
  std::string tok;
  std::vector<std::string> toks;
  while (in >> tok) toks.push_back(tok);
  if (toks.size() == 1 && index_.find(toks[0]) == index_.end()) {
    // Compact form: one character per letter.
    for (char ch : toks[0]) w.push_back(index_of(std::string(1, ch)));
    return w;
  }
  for (const auto& t : toks) w.push_back(index_of(t));
  return w;
}

std::string SubstitutionSystem::format(const Word& w, const std::string& sep) const {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += sep;
    out += letters_.at(static_cast<std::size_t>(w[k]));
  }
  return out;
}

std::vector<long> SubstitutionSystem::counts(const Word& w) const {
  std::vector<long> c(size(), 0);
  for (int x : w) {
    if (x < 0 || static_cast<std::size_t>(x) >= size()) throw UnknownLetter("letter index out of range");
    ++c[static_cast<std::size_t>(x)];
  }
  return c;
}

SubstitutionSystem unary_system(int k) {
  return SubstitutionSystem("unary" + std::to_string(k), {"0"}, {Word(static_cast<std::size_t>(k), 0)});
}

}  // namespace orbitile
