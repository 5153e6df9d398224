#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "orbitile/errors.hpp"
#include "orbitile/overlay_alphabet.hpp"

using namespace orbitile;

namespace {

std::set<oracle::Letter> as_oracle_letters(const OverlaySystem& ov) {
  std::set<oracle::Letter> out;
  for (const auto& x : ov.letters)
    out.insert({ov.A.sys.letter_name(x.alpha)[0], ov.B.sys.format(x.beta), ov.B.sys.format(x.p), ov.B.sys.format(x.s),
                x.delta});
  return out;
}

const OverlaySystem& unary_pair() {
  static const OverlaySystem ov = enumerate_alphabet(analyze(unary_system(3)), analyze(unary_system(2)));
  return ov;
}

const OverlaySystem& pq_pair() {
  static const OverlaySystem ov = enumerate_alphabet(
      analyze(SubstitutionSystem::parse("system pq55\nletter Y -> Y W W Y W\nletter W -> Y W W Y W W Y W\n")),
      analyze(unary_system(2)));
  return ov;
}

OverlayLetter letter(const OverlaySystem& ov, const std::string& name) { return ov.parse_name(name); }

}  // namespace

TEST_CASE("unary pair: alphabet equals the exhaustive oracle") {
  const auto& ov = unary_pair();
  CHECK(ov.K == 2);
  long ties = 0;
  auto ref = oracle::alphabet({{'0', "000"}}, {{'0', 3.0L}}, {{'0', "00"}}, {{'0', 1.0L}}, 2.0L, 2, &ties);
  CHECK(as_oracle_letters(ov) == ref);
  CHECK(!ref.empty());
  // the hand-checked letter
  CHECK(ref.count({'0', "00", "", "0", 1}) == 1);
  CHECK(ov.index_of(letter(ov, "0;0,0;;0;1")) >= 0);
}

TEST_CASE("{5,5} pair: nonempty, every letter passes both re-checkers") {
  const auto& ov = pq_pair();
  CHECK(ov.K == 3);
  REQUIRE(!ov.letters.empty());
  const double phi = (1 + std::sqrt(5.0)) / 2;
  // nu = (1, phi) scaled to min 3; eta' = 1; gamma = 2
  auto ref = oracle::alphabet({{'Y', "YWWYW"}, {'W', "YWWYWWYW"}}, {{'Y', 3.0L}, {'W', 3.0L * phi}}, {{'0', "00"}},
                              {{'0', 1.0L}}, 2.0L, 3);
  CHECK(as_oracle_letters(ov) == ref);
  for (const auto& x : ov.letters) {
    CHECK(letter_is_valid(ov, x));
    CHECK((x.delta == ov.K || x.delta == ov.K - 1));
    CHECK(static_cast<long>(x.p.size()) < ov.N);
    CHECK(static_cast<long>(x.s.size()) < ov.N);
  }
}

TEST_CASE("scaling invariant min nu' > gamma max eta'") {
  for (const OverlaySystem* ov : {&unary_pair(), &pq_pair()})
    CHECK(ov->nu.min() > ov->gamma() * ov->eta.max());
}

TEST_CASE("enumeration is deterministic and sorted") {
  auto again = enumerate_alphabet(analyze(unary_system(3)), analyze(unary_system(2)));
  CHECK(again.letters == unary_pair().letters);
  CHECK(std::is_sorted(again.letters.begin(), again.letters.end()));
}

TEST_CASE("letter names round trip") {
  const auto& ov = pq_pair();
  for (const auto& x : ov.letters) CHECK(ov.parse_name(ov.name(x)) == x);
  CHECK_THROWS_AS(ov.parse_name("Y;0"), ParseError);
}

TEST_CASE("adjacency") {
  OverlayLetter x, y;
  x.s = {0};
  y.p = {0};
  x.delta = y.delta = 2;
  CHECK(adjacent(x, y));
  y.p = {};
  CHECK_FALSE(adjacent(x, y));
  y.p = {0};
  x.delta = 1;
  CHECK_FALSE(adjacent(x, y));
}

TEST_CASE("productions") {
  const auto& ov = unary_pair();
  // sigma(0) = 000, so a production has three adjacent children; find one by brute force
  OverlayLetter x = ov.letters.front();
  bool found = false;
  for (const auto& a : ov.letters)
    for (const auto& b : ov.letters) {
      if (!adjacent(a, b)) continue;
      for (const auto& c : ov.letters) {
        if (!adjacent(b, c)) continue;
        for (const auto& par : ov.letters) {
          if (!is_production(ov, par, {a, b, c})) continue;
          found = true;
          // alpha condition violated
          std::vector<OverlayLetter> two{a, b};
          CHECK_FALSE(is_production(ov, par, two));
          // one beta altered
          auto bad = b;
          bad.beta.push_back(0);
          CHECK_FALSE(is_production(ov, par, {a, bad, c}));
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
  CHECK(found);
  CHECK_FALSE(is_production(ov, x, {}));
}

TEST_CASE("approximate equality") {
  auto w = [](const std::string& s) {
    std::vector<char> v(s.begin(), s.end());
    return v;
  };
  CHECK(approx_eq(w("abc"), w("abc"), 1));
  CHECK(approx_eq(w("abc"), w("xabcy"), 2));
  CHECK_FALSE(approx_eq(w("aaaa"), w("bbbb"), 2));
  CHECK_FALSE(approx_eq(w("abc"), w("xxabcy"), 2));
  CHECK(approx_eq(w(""), w("x"), 2));
}
