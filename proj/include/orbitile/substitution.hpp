#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbitile/polynomial.hpp"

namespace orbitile {

// Words are sequences of letter indices into a system's alphabet.
using Word = std::vector<int>;

class SubstitutionSystem {
 public:
  SubstitutionSystem() = default;
  // rules[k] is the image of letter k; throws ParseError on empty images or bad indices.
  SubstitutionSystem(std::string name, std::vector<std::string> letters, std::vector<Word> rules);

  // Parses the "system <name>" / "letter L -> L1 L2 ..." text format.
  static SubstitutionSystem parse(const std::string& text);
  static SubstitutionSystem load(const std::string& path);
  std::string to_text() const;

  const std::string& name() const { return name_; }
  std::size_t size() const { return letters_.size(); }
  const std::vector<std::string>& letters() const { return letters_; }
  const std::string& letter_name(int k) const { return letters_.at(static_cast<std::size_t>(k)); }
  int index_of(const std::string& letter) const;  // UnknownLetter if absent
  const Word& image(int k) const { return rules_.at(static_cast<std::size_t>(k)); }
  const std::vector<Word>& rules() const { return rules_; }

  // Entry (i, j) counts letter i in the image of letter j.
  IntMatrix matrix() const;
  bool is_primitive() const;
  bool is_expansive() const;  // NotPrimitive when the system is not primitive

  Word apply(const Word& w, int k = 1) const;
  Word parse_word(const std::string& text) const;  // whitespace separated, or one char per letter
  std::string format(const Word& w, const std::string& sep = "") const;
  std::vector<long> counts(const Word& w) const;

 private:
  std::string name_;
  std::vector<std::string> letters_;
  std::vector<Word> rules_;
  std::map<std::string, int> index_;
};

// Unary system 0 -> 0^k.
SubstitutionSystem unary_system(int k);

}  // namespace orbitile
