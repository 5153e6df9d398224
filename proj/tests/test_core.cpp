#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "orbitile/errors.hpp"
#include "orbitile/growth.hpp"

using namespace orbitile;

namespace {

SubstitutionSystem sys_of(const std::string& text) { return SubstitutionSystem::parse(text); }

const char* kFib = "system fib\nletter a -> a b\nletter b -> a\n";
const char* kFig1 = "system fig1\nletter A -> A B\nletter B -> A A B\n";
const char* kPq55 = "system pq55\nletter Y -> Y W W Y W\nletter W -> Y W W Y W W Y W\n";

}  // namespace

TEST_CASE("polynomial arithmetic and rendering") {
  Polynomial p = Polynomial::from_integers({-1, -1, 1});  // x^2 - x - 1
  CHECK(p.degree() == 2);
  CHECK(p.to_string() == "x^2 - x - 1");
  CHECK(p(mpq_class(2)) == 1);
  Polynomial q, r;
  Polynomial::divmod(p * Polynomial::from_integers({-2, 1}), Polynomial::from_integers({-2, 1}), q, r);
  CHECK(q == p);
  CHECK(r.is_zero());
  CHECK(gcd(p * p, p.derivative() * p) == p.monic());
  CHECK(squarefree_part(p * p) == p.monic());
  CHECK(Polynomial().degree() == -1);
}

TEST_CASE("Sturm counts and integer roots") {
  Polynomial p = Polynomial::from_integers({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
  SturmSequence s(p);
  CHECK(s.count_roots(0, 10) == 3);
  CHECK(s.count_roots(1, 2) == 1);  // half-open (1, 2]
  CHECK(s.count_roots(mpq_class(3, 2), mpq_class(5, 2)) == 1);
  auto roots = integer_roots(p);
  CHECK(roots == std::vector<long>{1, 2, 3});
  CHECK(cauchy_root_bound(p) >= 3);
}

TEST_CASE("characteristic polynomial against the 2x2 closed form") {
  IntMatrix m{{2, 3}, {3, 5}};
  // x^2 - tr x + det
  CHECK(characteristic_polynomial(m) == Polynomial::from_integers({1, -7, 1}));
  CHECK(determinant(to_big(m)) == 1);
  CHECK(matrix_power(m, 2) == IntMatrix{{13, 21}, {21, 34}});
}

TEST_CASE("AdaptiveReal: exact rationals compare exactly") {
  AdaptiveReal a(mpq_class(1, 3)), b(mpq_class(2, 6));
  CHECK(AdaptiveReal::compare(a, b) == 0);
  CHECK(AdaptiveReal::compare(a + a, AdaptiveReal(mpq_class(2, 3))) == 0);
  CHECK((a * AdaptiveReal(3)).is_exact());
  CHECK(AdaptiveReal(0).sign() == 0);
}

TEST_CASE("AdaptiveReal: algebraic roots and refinement") {
  auto sqrt2 = AdaptiveReal::algebraic_root(Polynomial::from_integers({-2, 0, 1}), 1, 2);
  CHECK(std::abs(sqrt2.to_double() - std::sqrt(2.0)) < 1e-15);
  CHECK(sqrt2 > AdaptiveReal(mpq_class(14142135, 10000000)));
  CHECK(sqrt2 < AdaptiveReal(mpq_class(14142136, 10000000)));
  // 141421356237/10^11 is below sqrt 2 by about 3e-12: needs refinement past 64 bits of the midpoint guess
  CHECK(sqrt2 > AdaptiveReal(mpq_class(mpz_class("141421356237309"), mpz_class("100000000000000"))));
  CHECK(sqrt2.to_decimal(20).substr(0, 12) == "1.4142135623");
}

TEST_CASE("AdaptiveReal: equal irrationals built differently are indeterminate") {
  auto sqrt2 = AdaptiveReal::algebraic_root(Polynomial::from_integers({-2, 0, 1}), 1, 2);
  CHECK_THROWS_AS((void)AdaptiveReal::compare(sqrt2 * sqrt2, AdaptiveReal(2)), IndeterminateComparison);
  CHECK(bit_budget() >= 64);
}

TEST_CASE("AdaptiveReal: exp") {
  auto e = AdaptiveReal::exp(mpq_class(1));
  CHECK(std::abs(e.to_double() - std::exp(1.0)) < 1e-14);
  CHECK(AdaptiveReal::exp(mpq_class(0)).to_double() == 1.0);
  CHECK(AdaptiveReal::exp(mpq_class(-1, 20)) < AdaptiveReal(1));
}

TEST_CASE("AdaptiveReal: concurrent comparisons agree with sequential ones") {
  auto phi = AdaptiveReal::algebraic_root(Polynomial::from_integers({-1, -1, 1}), 1, 2);
  std::vector<AdaptiveReal> qs;
  for (int k = 1; k <= 64; ++k) qs.emplace_back(mpq_class(k * 1618, 64000));
  std::vector<int> seq;
  for (const auto& q : qs) seq.push_back(AdaptiveReal::compare(phi, q));
  auto phi2 = AdaptiveReal::algebraic_root(Polynomial::from_integers({-1, -1, 1}), 1, 2);
  std::vector<std::vector<int>> par(4, std::vector<int>(qs.size()));
  std::vector<std::thread> th;
  for (int t = 0; t < 4; ++t)
    th.emplace_back([&, t] {
      for (std::size_t k = 0; k < qs.size(); ++k) par[static_cast<std::size_t>(t)][k] = AdaptiveReal::compare(phi2, qs[k]);
    });
  for (auto& x : th) x.join();
  for (const auto& v : par) CHECK(v == seq);
}

TEST_CASE("substitution text format") {
  auto s = sys_of(kFib);
  CHECK(s.name() == "fib");
  CHECK(s.size() == 2);
  CHECK(s.format(s.image(0)) == "ab");
  CHECK(SubstitutionSystem::parse(s.to_text()).to_text() == s.to_text());
  CHECK_THROWS_AS(sys_of("system x\nletter a -> a b\n"), ParseError);             // b undefined
  CHECK_THROWS_AS(sys_of("system x\nletter a -> a\nletter a -> a a\n"), ParseError);  // duplicate
  CHECK_THROWS_AS(sys_of("system x\nletter a ->\n"), ParseError);                 // empty image
  CHECK_THROWS_AS(s.index_of("z"), UnknownLetter);
}

TEST_CASE("apply, counts and matrix") {
  auto s = sys_of(kFib);
  Word w = s.parse_word("ab");
  CHECK(s.apply(w, 0) == w);
  CHECK(s.format(s.apply(w, 3)) == oracle::expand({{'a', "ab"}, {'b', "a"}}, "ab", 3));
  CHECK(s.counts(s.parse_word("aab")) == std::vector<long>{2, 1});
  CHECK(s.matrix() == IntMatrix{{1, 1}, {1, 0}});
}

TEST_CASE("primitivity and expansivity") {
  CHECK(sys_of(kFib).is_primitive());
  CHECK(sys_of(kFib).is_expansive());
  CHECK_FALSE(sys_of("system x\nletter a -> a\nletter b -> b a\n").is_primitive());
  CHECK_FALSE(sys_of("system x\nletter a -> b\nletter b -> a\n").is_primitive());
  CHECK(unary_system(2).is_expansive());
  CHECK_FALSE(unary_system(1).is_expansive());
  CHECK_THROWS_AS(growth_rate(sys_of("system x\nletter a -> a\nletter b -> b a\n")), NotPrimitive);
  CHECK_THROWS_AS(growth_rate(unary_system(1)), NotExpansive);
}

TEST_CASE("growth rates match closed forms and letter counting") {
  struct Case {
    const char* text;
    oracle::Rules rules;
    double closed;
  };
  std::vector<Case> cases{
      {kFib, {{'a', "ab"}, {'b', "a"}}, (1 + std::sqrt(5.0)) / 2},
      {kFig1, {{'A', "AB"}, {'B', "AAB"}}, 1 + std::sqrt(2.0)},
      {kPq55, {{'Y', "YWWYW"}, {'W', "YWWYWWYW"}}, (7 + 3 * std::sqrt(5.0)) / 2},
  };
  for (const auto& c : cases) {
    auto g = growth_rate(sys_of(c.text));
    CHECK(std::abs(g.approx() - c.closed) < 1e-12);
    CHECK(std::abs(static_cast<double>(oracle::growth_by_counting(c.rules)) - c.closed) < 1e-9);
  }
  auto two = growth_rate(unary_system(2));
  REQUIRE(two.value.is_exact());
  CHECK(*two.value.exact() == 2);
}

TEST_CASE("distribution is the length eigenvector") {
  auto s = sys_of(kPq55);
  auto an = analyze(s);
  auto ref = oracle::length_eigenvector({{'Y', "YWWYW"}, {'W', "YWWYWWYW"}});
  CHECK(std::abs(an.dist[0].to_double() - static_cast<double>(ref['Y'])) < 1e-12);
  CHECK(std::abs(an.dist[1].to_double() - static_cast<double>(ref['W'])) < 1e-12);
  CHECK(std::abs(an.dist[1].to_double() - (1 + std::sqrt(5.0)) / 2) < 1e-12);
  CHECK(an.dist.min().to_double() == 1.0);
  // |sigma(w)|_nu = lambda |w|_nu on random words
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    Word w;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 30); ++k) w.push_back(static_cast<int>(rng() % 2));
    double lhs = nu_length(an.dist, s.apply(w)).to_double();
    double rhs = an.growth.approx() * nu_length(an.dist, w).to_double();
    CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
  }
  CHECK(nu_length(an.dist, Word{}).to_double() == 0.0);
}

TEST_CASE("compare_powers and commensurability") {
  auto two = growth_rate(unary_system(2)), four = growth_rate(unary_system(4)), three = growth_rate(unary_system(3));
  CHECK(compare_powers(two, 2, four, 1) == 0);
  CHECK(compare_powers(three, 1, two, 2) < 0);
  CHECK(compare_powers(three, 2, two, 3) > 0);
  auto v = incommensurate(two, four, 20);
  CHECK(v.kind == CommensurabilityVerdict::Commensurate);
  CHECK(v.to_string() == "Commensurate(2,1)");
  CHECK(incommensurate(three, two, 20).to_string() == "IncommensurateUpTo(20)");
  auto phi = growth_rate(sys_of(kFib));
  CHECK(incommensurate(phi, two, 12).kind == CommensurabilityVerdict::IncommensurateUpTo);
}

TEST_CASE("compute_K") {
  auto two = growth_rate(unary_system(2)), three = growth_rate(unary_system(3));
  CHECK(compute_K(three, two) == 2);
  CHECK(compute_K(two, two) == 1);
  CHECK(compute_K(growth_rate(sys_of(kPq55)), two) == 3);
  CHECK(compute_K(growth_rate(unary_system(4)), two) == 2);  // gamma^2 = lambda exactly
}

TEST_CASE("scale_distributions") {
  auto two = growth_rate(unary_system(2));
  Distribution nu, eta;
  nu.weights = {AdaptiveReal(1)};
  eta.weights = {AdaptiveReal(1)};
  auto sd = scale_distributions(nu, eta, two.value);
  CHECK(*sd.nu[0].exact() == 3);
  CHECK(*sd.eta[0].exact() == 1);
  auto sqrt2 = AdaptiveReal::algebraic_root(Polynomial::from_integers({-2, 0, 1}), 1, 2);
  nu.weights = {AdaptiveReal(1), sqrt2};
  nu.max_index = 1;
  sd = scale_distributions(nu, eta, two.value);
  CHECK(*sd.nu[0].exact() == 3);
  CHECK(std::abs(sd.nu[1].to_double() - 3 * std::sqrt(2.0)) < 1e-12);
  // canonical input maps to itself
  auto again = scale_distributions(sd.nu, sd.eta, two.value);
  CHECK(std::abs(again.nu[1].to_double() - sd.nu[1].to_double()) < 1e-12);
}

TEST_CASE("minimal polynomial of the growth rate") {
  auto g = growth_rate(sys_of(kFib));
  auto mp = minimal_polynomial(g.poly, g.lo, g.hi);
  CHECK(mp.poly.to_string() == "x^2 - x - 1");
  auto two = growth_rate(unary_system(2));
  CHECK(minimal_polynomial(two.poly, two.lo, two.hi).poly.to_string() == "x - 2");
}
