#include "orbitile/growth.hpp"

#include "orbitile/errors.hpp"

namespace orbitile {

namespace {

mpq_class max_column_sum(const BigMatrix& m) {
  mpz_class best = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i][j];
    if (s > best) best = s;
  }
  return mpq_class(best);
}

// Shrinks (lo, hi] by half, keeping the unique root of the Sturm base inside.
void bisect(const SturmSequence& s, mpq_class& lo, mpq_class& hi) {
  mpq_class mid = (lo + hi) / 2;
  if (s.count_roots(lo, mid) >= 1)
    hi = mid;
  else
    lo = mid;
}

struct Isolated {
  Polynomial poly;
  mpq_class lo, hi;
};

// Largest real root of the characteristic polynomial, with an isolating bracket.
Isolated largest_root(const BigMatrix& m) {
  Polynomial sf = squarefree_part(characteristic_polynomial(m));
  SturmSequence sturm(sf);
  mpq_class hi = max_column_sum(m);
  mpq_class lo = -cauchy_root_bound(sf) - 1;
  while (sturm.count_roots(lo, hi) > 1) {
    mpq_class mid = (lo + hi) / 2;
    if (sturm.count_roots(mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  for (long r : integer_roots(sf)) {
    if (mpq_class(r) > lo && mpq_class(r) <= hi) hi = r;
  }
  return {sf, lo, hi};
}

AdaptiveReal eval_at(const Polynomial& p, const AdaptiveReal& x) {
  AdaptiveReal acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * x + AdaptiveReal(p.coeff(k));
  return acc;
}

// Exact comparison of two elements of Q(g) written as polynomials in g.
int field_compare(const Polynomial& a, const Polynomial& b, const GrowthRate& g) {
  Polynomial d = a - b;
  if (d.is_zero()) return 0;
  Polynomial common = gcd(d, g.poly);
  if (common.degree() >= 1 && SturmSequence(common).count_roots(g.lo, g.hi) >= 1) return 0;
  return eval_at(d, g.value).sign();
}

Polynomial lagrange(const std::vector<long>& xs, const std::vector<mpz_class>& ys) {
  Polynomial acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis = Polynomial::from_integers({1});
    mpq_class denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      basis = basis * Polynomial::from_integers({-xs[j], 1});
      denom *= xs[i] - xs[j];
    }
    acc = acc + basis * Polynomial({mpq_class(ys[i]) / denom});
  }
  return acc;
}

}  // namespace

GrowthRate perron_root(const IntMatrix& m) {
  Isolated iso = largest_root(to_big(m));
  GrowthRate g;
  g.matrix = m;
  g.poly = iso.poly;
  g.lo = iso.lo;
  g.hi = iso.hi;
  g.value = AdaptiveReal::algebraic_root(iso.poly, iso.lo, iso.hi);
  return g;
}

GrowthRate growth_rate(const SubstitutionSystem& sys) {
  if (!sys.is_expansive()) throw NotExpansive("system '" + sys.name() + "' is not expansive");
  return perron_root(sys.matrix());
}

Distribution distribution(const SubstitutionSystem& sys, const GrowthRate& g) {
  const std::size_t n = sys.size();
  Distribution d;
  if (n == 1) {
    d.weights = {AdaptiveReal(1L)};
    return d;
  }
  IntMatrix a = sys.matrix();
  // Column 0 of adj(xI - A^T) spans the left eigenvector; entries are integer polynomials in x.
  std::vector<long> xs;
  std::vector<std::vector<mpz_class>> values(n);
  for (std::size_t t = 0; t < n; ++t) {
    long x = static_cast<long>(t);
    xs.push_back(x);
    for (std::size_t i = 0; i < n; ++i) {
      BigMatrix minor;
      for (std::size_t r = 1; r < n; ++r) {
        std::vector<mpz_class> row;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == i) continue;
          mpz_class v = -static_cast<long>(a[c][r]);
          if (r == c) v += x;
          row.push_back(v);
        }
        minor.push_back(std::move(row));
      }
      mpz_class det = determinant(minor);
      values[i].push_back(i % 2 == 0 ? det : mpz_class(-det));
    }
  }
  std::vector<Polynomial> polys;
  for (std::size_t i = 0; i < n; ++i) polys.push_back(lagrange(xs, values[i]));
  if (eval_at(polys[0], g.value).sign() < 0)
    for (auto& p : polys) p = Polynomial() - p;

  int lo = 0, hi = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (field_compare(polys[i], polys[static_cast<std::size_t>(lo)], g) < 0) lo = static_cast<int>(i);
    if (field_compare(polys[i], polys[static_cast<std::size_t>(hi)], g) > 0) hi = static_cast<int>(i);
  }
  AdaptiveReal base = eval_at(polys[static_cast<std::size_t>(lo)], g.value);
  for (std::size_t i = 0; i < n; ++i) {
    if (field_compare(polys[i], polys[static_cast<std::size_t>(lo)], g) == 0)
      d.weights.emplace_back(1L);
    else
      d.weights.push_back(eval_at(polys[i], g.value) / base);
  }
  d.min_index = lo;
  d.max_index = hi;
  return d;
}

Distribution distribution(const SubstitutionSystem& sys) { return distribution(sys, growth_rate(sys)); }

AdaptiveReal nu_length(const Distribution& dist, const std::vector<long>& counts) {
  std::vector<std::pair<std::int64_t, AdaptiveReal>> terms;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] != 0) terms.emplace_back(counts[k], dist.weights.at(k));
  return AdaptiveReal::linear_combination(terms);
}

AdaptiveReal nu_length(const Distribution& dist, const Word& w) {
  std::vector<long> counts(dist.size(), 0);
  for (int c : w) {
    if (c < 0 || static_cast<std::size_t>(c) >= dist.size()) throw UnknownLetter("letter index out of range");
    ++counts[static_cast<std::size_t>(c)];
  }
  return nu_length(dist, counts);
}

int compare_powers(const GrowthRate& a, long m, const GrowthRate& b, long n) {
  if (m <= 0 && n <= 0 && (m < 0 || n < 0)) return compare_powers(b, -n, a, -m);
  if (m > 0 && n < 0) return 1;
  if (m < 0 && n > 0) return -1;
  if (m == 0) return n == 0 ? 0 : -1;
  if (n == 0) return 1;

  AdaptiveReal am = a.value.pow(m);
  AdaptiveReal bn = b.value.pow(n);
  if (am.is_exact() && bn.is_exact()) return AdaptiveReal::compare(am, bn);
  {
    Enclosure ea = am.enclosure(96), eb = bn.enclosure(96);
    if (mpfr_less_p(ea.hi.get(), eb.lo.get())) return -1;
    if (mpfr_greater_p(ea.lo.get(), eb.hi.get())) return 1;
  }
  // a^m and b^n are Perron roots of A^m and B^n: decide equality through a common factor.
  Isolated p = largest_root(big_power(to_big(a.matrix), m));
  Isolated q = largest_root(big_power(to_big(b.matrix), n));
  Polynomial g = gcd(p.poly, q.poly);
  if (g.degree() < 1) return AdaptiveReal::compare(am, bn);
  SturmSequence sp(p.poly), sq(q.poly), sg(g);
  for (int iter = 0; iter < 100000; ++iter) {
    if (p.hi <= q.lo) return -1;
    if (q.hi <= p.lo) return 1;
    mpq_class lo = p.lo < q.lo ? p.lo : q.lo;
    mpq_class hi = p.hi > q.hi ? p.hi : q.hi;
    if (sp.count_roots(lo, hi) == 1 && sq.count_roots(lo, hi) == 1 && sg.count_roots(lo, hi) == 1) return 0;
    bisect(sp, p.lo, p.hi);
    bisect(sq, q.lo, q.hi);
  }
  throw IndeterminateComparison("power comparison did not settle");
}

std::string CommensurabilityVerdict::to_string() const {
  switch (kind) {
    case IncommensurateUpTo: return "IncommensurateUpTo(" + std::to_string(bound) + ")";
    case Commensurate: return "Commensurate(" + std::to_string(m) + "," + std::to_string(n) + ")";
    case Indeterminate: return "Indeterminate";
  }
  return "";
}

CommensurabilityVerdict incommensurate(const GrowthRate& lambda, const GrowthRate& gamma, long bound) {
  CommensurabilityVerdict v;
  v.bound = bound;
  try {
    for (long m = 1; m <= bound; ++m)
      for (long n = 1; n <= bound; ++n)
        if (compare_powers(lambda, m, gamma, n) == 0) {
          v.kind = CommensurabilityVerdict::Commensurate;
          v.m = m;
          v.n = n;
          return v;
        }
  } catch (const IndeterminateComparison&) {
    v.kind = CommensurabilityVerdict::Indeterminate;
  }
  return v;
}

long compute_K(const GrowthRate& lambda, const GrowthRate& gamma) {
  for (long k = 1;; ++k)
    if (compare_powers(gamma, k, lambda, 1) >= 0) return k;
}

ScaledDistributions scale_distributions(const Distribution& nu, const Distribution& eta,
                                        const AdaptiveReal& gamma, const mpq_class& slack) {
  ScaledDistributions out;
  out.eta = eta;
  for (auto& w : out.eta.weights) w = w / eta.min();
  AdaptiveReal factor = AdaptiveReal(slack) * gamma * out.eta.max() / nu.min();
  out.nu = nu;
  for (auto& w : out.nu.weights) w = w * factor;
  return out;
}

Analysis analyze(const SubstitutionSystem& sys) {
  Analysis a{sys, growth_rate(sys), {}};
  a.dist = distribution(sys, a.growth);
  return a;
}

}  // namespace orbitile
