#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "orbitile/errors.hpp"
#include "orbitile/window_checks.hpp"

using namespace orbitile;

namespace {

const SubstitutionSystem& fib() {
  static const SubstitutionSystem s = SubstitutionSystem::parse("system fib\nletter a -> a b\nletter b -> a\n");
  return s;
}

const OverlaySystem& unary_pair() {
  static const OverlaySystem ov = enumerate_alphabet(analyze(unary_system(3)), analyze(unary_system(2)));
  return ov;
}

}  // namespace

TEST_CASE("seed choice") {
  auto s = find_seed(fib());
  // sigma^3(a) = abaab has a at index 2 as its first interior a
  CHECK(s.n == 3);
  CHECK(fib().letter_name(s.letter) == "a");
  CHECK(s.k0 == 2);
  CHECK(oracle::expand({{'a', "ab"}, {'b', "a"}}, "a", 3)[static_cast<std::size_t>(s.k0)] == 'a');
  auto u = find_seed(unary_system(2));
  CHECK(u.n == 2);
}

TEST_CASE("seed word is a fixed point around the origin") {
  auto s = find_seed(fib());
  long origin = 0;
  Word w = seed_word(fib(), s, 20, origin);
  // sigma^n maps the word onto itself around index 0: compare against the image of a short window
  Word img = fib().apply(w, s.n);
  REQUIRE(static_cast<long>(w.size()) > 10);
  CHECK(w[static_cast<std::size_t>(origin)] == s.letter);
  CHECK(img.size() > w.size());
}

TEST_CASE("base windows validate; corrupted ones do not") {
  BaseWindowSpec spec;
  spec.rows = 6;
  spec.top_half = 2;
  auto w = build_base_window(analyze(fib()), spec);
  auto rep = validate_base_window(fib(), w);
  CHECK(rep.ok);
  CHECK(rep.checks > 0);
  // rows of widths growing by the image lengths
  for (std::size_t r = 0; r + 1 < w.rows.size(); ++r) {
    long expect = 0;
    for (int l : w.rows[r].letters) expect += static_cast<long>(fib().image(l).size());
    CHECK(w.rows[r + 1].size() == expect);
  }
  auto bad = w;
  auto& row = bad.rows[3].letters;
  row[row.size() / 2] ^= 1;
  CHECK_FALSE(validate_base_window(fib(), bad).ok);
  auto bad2 = w;
  bad2.parents[1][2] += 1;
  CHECK_FALSE(validate_base_window(fib(), bad2).ok);
}

TEST_CASE("band windows stay narrow and valid") {
  BaseWindowSpec spec;
  spec.rows = 10;
  spec.top_half = 3;
  spec.shape.cone = false;
  spec.shape.half_width = 8;
  auto w = build_base_window(analyze(unary_system(2)), spec);
  CHECK(validate_base_window(unary_system(2), w).ok);
  for (std::size_t r = 1; r < w.rows.size(); ++r) CHECK(w.rows[r].size() <= 17);
}

TEST_CASE("delta sequence") {
  auto lam = growth_rate(unary_system(3)), gam = growth_rate(unary_system(2));
  auto ds = delta_sequence(lam, gam, 0, 0, 5);
  // Delta_i = floor(i log 3 / log 2) at d = 0
  for (long i = 0; i <= 5; ++i)
    CHECK(ds.Delta[static_cast<std::size_t>(i)] == static_cast<long>(std::floor(i * std::log(3.0) / std::log(2.0))));
  for (int dl : ds.delta) CHECK((dl == 1 || dl == 2));
}

TEST_CASE("overlay windows validate at several offsets") {
  const auto& ov = unary_pair();
  for (auto [c, d] : std::vector<std::pair<mpq_class, mpq_class>>{
           {mpq_class(1, 10), mpq_class(1, 20)}, {mpq_class(-3, 7), mpq_class(2, 9)}, {mpq_class(5, 13), mpq_class(-1, 3)}}) {
    OverlayWindowSpec spec;
    spec.rows = 8;
    auto w = overlay_window(ov, c, d, spec);
    auto rep = validate_overlay_window(ov, w);
    CHECK(rep.ok);
    CHECK(w.rows.size() == 8);
    CHECK(validate_base_window(ov.A.sys, alpha_projection(ov, w)).ok);
  }
}

TEST_CASE("overlay validation catches a swapped letter") {
  const auto& ov = unary_pair();
  OverlayWindowSpec spec;
  spec.rows = 6;
  auto w = overlay_window(ov, mpq_class(1, 10), mpq_class(1, 20), spec);
  auto& row = w.rows[3].letters;
  std::size_t k = row.size() / 2;
  row[k] = (row[k] + 1) % static_cast<int>(ov.letters.size());
  CHECK_FALSE(validate_overlay_window(ov, w).ok);
}

TEST_CASE("degenerate offset") {
  OverlayWindowSpec spec;
  spec.rows = 4;
  CHECK_THROWS_AS(overlay_window(unary_pair(), 0, 0, spec), DegenerateOffset);
}

TEST_CASE("period search") {
  BaseWindowSpec spec;
  spec.rows = 8;
  spec.top_half = 3;
  spec.shape.cone = false;
  spec.shape.half_width = 10;
  auto w = build_base_window(analyze(unary_system(2)), spec);
  auto found = period_search(w, 3);
  CHECK(!found.empty());  // a constant tiling is periodic
  OverlayWindowSpec os;
  os.rows = 12;
  auto o = overlay_window(unary_pair(), mpq_class(1, 10), mpq_class(1, 20), os);
  CHECK(period_search(o, 4).empty());
}

TEST_CASE("growth exponent along a descendant chain") {
  OverlayWindowSpec spec;
  spec.rows = 8;
  spec.half_width = 0;
  auto w = overlay_window(unary_pair(), mpq_class(1, 10), mpq_class(1, 20), spec);
  auto g = growth_exponent_check(unary_pair(), w);
  CHECK(g.slopes_ok);
  CHECK(g.bounds_ok);
  CHECK(std::abs(g.log_lambda - std::log(3.0)) < 1e-12);
}

TEST_CASE("approximate production catches a corrupted produced row") {
  const auto& ov = unary_pair();
  OverlayWindowSpec spec;
  spec.rows = 4;
  auto w = overlay_window(ov, mpq_class(1, 10), mpq_class(1, 20), spec);
  auto top = overlay_row(ov, w.rows[1]);
  auto below = overlay_row(ov, w.rows[2]);
  // restrict to the children of the core of row 1
  long f = w.children(1, w.rows[1].core_lo).first, l = w.children(1, w.rows[1].core_hi).second;
  std::vector<OverlayLetter> parent(top.begin() + (w.rows[1].core_lo - w.rows[1].j_lo),
                                    top.begin() + (w.rows[1].core_hi - w.rows[1].j_lo) + 1);
  std::vector<OverlayLetter> kids(below.begin() + (f - w.rows[2].j_lo), below.begin() + (l - w.rows[2].j_lo) + 1);
  CHECK(verify_approx_production(ov, parent, kids, ov.N).ok);
  auto bad = kids;
  // unary words differ only in length; ~_N absorbs anything shorter than 2N
  for (long t = 0; t < 2 * ov.N; ++t) bad[bad.size() / 2].beta.push_back(0);
  auto r = verify_approx_production(ov, parent, bad, ov.N);
  CHECK_FALSE(r.ok);
  CHECK(r.index >= 0);
}
