#include "orbitile/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace orbitile {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::from_integers(const std::vector<long>& coeffs) {
  std::vector<mpq_class> q;
  q.reserve(coeffs.size());
  for (long c : coeffs) q.emplace_back(c);
  return Polynomial(std::move(q));
}

Polynomial Polynomial::monomial(const mpq_class& c, int degree) {
  std::vector<mpq_class> q(static_cast<std::size_t>(degree) + 1, mpq_class(0));
  q.back() = c;
  return Polynomial(std::move(q));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpq_class Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

mpq_class Polynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

int Polynomial::sign_at(const mpq_class& x) const { return sgn((*this)(x)); }

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  std::vector<mpq_class> m(coeffs_);
  mpq_class lead = leading();
  for (auto& c : m) c /= lead;
  return Polynomial(std::move(m));
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return {};
  mpz_class lcm_den = 1;
  for (const auto& c : coeffs_) lcm_den = lcm(lcm_den, c.get_den());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_class v = c.get_num() * (lcm_den / c.get_den());
    g = gcd(g, v);
    ints.push_back(v);
  }
  if (sgn(ints.back()) < 0) g = -g;
  std::vector<mpq_class> out;
  out.reserve(ints.size());
  for (auto& v : ints) out.emplace_back(mpz_class(v / g));
  return Polynomial(std::move(out));
}

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> r(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] += b.coeffs_[k];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> r(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) r[k] -= b.coeffs_[k];
  return Polynomial(std::move(r));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(r));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& quotient,
                        Polynomial& remainder) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem(a.coeffs_);
  int db = b.degree();
  int da = a.degree();
  std::vector<mpq_class> quo(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, mpq_class(0));
  for (int k = da; k >= db; --k) {
    const mpq_class& top = rem[static_cast<std::size_t>(k)];
    if (sgn(top) == 0) continue;
    mpq_class f = top / b.leading();
    quo[static_cast<std::size_t>(k - db)] = f;
    for (int t = 0; t <= db; ++t) rem[static_cast<std::size_t>(k - db + t)] -= f * b.coeffs_[static_cast<std::size_t>(t)];
  }
  quotient = Polynomial(std::move(quo));
  remainder = Polynomial(std::move(rem));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    mpq_class c = coeffs_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (c == 1);
    if (!unit || k == 0) out << c.get_str();
    if (k >= 1) {
      if (!unit) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial q, r;
    Polynomial::divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  Polynomial g = gcd(p, p.derivative());
  Polynomial q, r;
  Polynomial::divmod(p, g, q, r);
  return q.monic();
}

SturmSequence::SturmSequence(const Polynomial& p) {
  chain_.push_back(p);
  if (p.degree() <= 0) return;
  chain_.push_back(p.derivative());
  while (true) {
    Polynomial q, r;
    Polynomial::divmod(chain_[chain_.size() - 2], chain_.back(), q, r);
    if (r.is_zero()) break;
    // Positive rescaling keeps signs while bounding coefficient growth.
    Polynomial pp = r.primitive_part();
    if (sgn(r.leading()) > 0) pp = Polynomial() - pp;
    chain_.push_back(std::move(pp));
  }
}

int SturmSequence::sign_variations(const mpq_class& x) const {
  int count = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmSequence::count_roots(const mpq_class& a, const mpq_class& b) const {
  if (chain_.front().degree() <= 0) return 0;
  return sign_variations(a) - sign_variations(b);
}

mpq_class cauchy_root_bound(const Polynomial& p) {
  if (p.degree() <= 0) return 1;
  mpq_class m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    mpq_class v = abs(p.coeff(k) / p.leading());
    if (v > m) m = v;
  }
  return m + 1;
}

std::vector<long> integer_roots(const Polynomial& p) {
  std::vector<long> roots;
  if (p.degree() <= 0) return roots;
  Polynomial sf = squarefree_part(p);
  SturmSequence sturm(sf);
  mpq_class bound = cauchy_root_bound(sf);
  mpz_class hi = bound.get_num() / bound.get_den() + 1;
  // Isolate by unit intervals only where roots exist; bisect integer ranges recursively.
  std::function<void(const mpz_class&, const mpz_class&)> scan = [&](const mpz_class& lo,
                                                                     const mpz_class& up) {
    // Roots in (lo, up].
    if (sturm.count_roots(mpq_class(lo), mpq_class(up)) == 0) return;
    if (up - lo == 1) {
      if (sf.sign_at(mpq_class(up)) == 0) roots.push_back(up.get_si());
      return;
    }
    mpz_class mid = (lo + up) / 2;
    scan(lo, mid);
    scan(mid, up);
  };
  scan(-hi, hi);
  return roots;
}

Polynomial characteristic_polynomial(const IntMatrix& a) { return characteristic_polynomial(to_big(a)); }

Polynomial characteristic_polynomial(const BigMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return Polynomial::from_integers({1});
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n, mpq_class(0)));
  std::vector<mpq_class> c(n + 1, mpq_class(0));
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<mpq_class>> next(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (std::size_t t = 0; t < n; ++t)
          if (sgn(a[i][t]) != 0 && sgn(m[t][j]) != 0) s += mpq_class(a[i][t]) * m[t][j];
        next[i][j] = s;
      }
      next[i][i] += c[n - k + 1];
    }
    mpq_class trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t)
        if (sgn(a[i][t]) != 0) trace += mpq_class(a[i][t]) * next[t][i];
    c[n - k] = -trace / static_cast<long>(k);
    m = std::move(next);
  }
  return Polynomial(std::move(c));
}

BigMatrix to_big(const IntMatrix& a) {
  BigMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto v : a[i]) out[i].emplace_back(static_cast<long>(v));
  return out;
}

namespace {
BigMatrix big_multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  BigMatrix out(n, std::vector<mpz_class>(m, mpz_class(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < b.size(); ++t) {
      if (sgn(a[i][t]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}
}  // namespace

BigMatrix big_power(const BigMatrix& a, long k) {
  BigMatrix result(a.size(), std::vector<mpz_class>(a.size(), mpz_class(0)));
  for (std::size_t i = 0; i < a.size(); ++i) result[i][i] = 1;
  BigMatrix base = a;
  while (k > 0) {
    if (k & 1) result = big_multiply(result, base);
    k >>= 1;
    if (k > 0) base = big_multiply(base, base);
  }
  return result;
}

mpz_class determinant(BigMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix id(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < b.size(); ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(a[i][t], b[t][j], &prod) ||
            __builtin_add_overflow(out[i][j], prod, &out[i][j]))
          throw std::overflow_error("integer matrix product overflows 64 bits");
      }
    }
  return out;
}

IntMatrix matrix_power(const IntMatrix& a, int k) {
  IntMatrix result = identity_matrix(a.size());
  IntMatrix base = a;
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

namespace {

std::vector<mpz_class> divisors_of(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> small;
  std::vector<mpz_class> large;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Lagrange interpolation through integer nodes; empty polynomial on failure.
Polynomial interpolate(const std::vector<long>& xs, const std::vector<mpz_class>& ys) {
  Polynomial acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis = Polynomial::from_integers({1});
    mpq_class denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      basis = basis * Polynomial::from_integers({-xs[j], 1});
      denom *= (xs[i] - xs[j]);
    }
    acc = acc + basis * Polynomial({mpq_class(ys[i]) / denom});
  }
  return acc;
}

}  // namespace

MinimalPolynomial minimal_polynomial(const Polynomial& p, const mpq_class& lo, const mpq_class& hi) {
  Polynomial h = squarefree_part(p).primitive_part();
  for (long r : integer_roots(h)) {
    if (mpq_class(r) > lo && mpq_class(r) <= hi) return {Polynomial::from_integers({-r, 1}), true};
    Polynomial q, rem;
    Polynomial::divmod(h, Polynomial::from_integers({-r, 1}), q, rem);
    h = q.primitive_part();
  }
  // Without rational roots, degree <= 3 means irreducible.
  if (h.degree() <= 3) return {h.monic(), true};

  // Kronecker search for a factor of degree d vanishing in (lo, hi].
  constexpr long kMaxCombinations = 200000;
  long budget = kMaxCombinations;
  bool exhausted = false;
  for (int d = 2; d <= h.degree() / 2; ++d) {
    std::vector<long> xs;
    std::vector<std::vector<mpz_class>> divs;
    for (long x = 0; static_cast<int>(xs.size()) < d + 1; x = (x <= 0 ? 1 - x : -x)) {
      mpq_class v = h(mpq_class(x));
      if (sgn(v) == 0) continue;
      xs.push_back(x);
      divs.push_back(divisors_of(v.get_num()));
    }
    std::vector<std::size_t> idx(xs.size(), 0);
    std::vector<int> signs(xs.size(), 1);
    // Enumerate divisor tuples with signs; first sign fixed positive (factor up to sign).
    std::function<bool(std::size_t, std::vector<mpz_class>&)> rec =
        [&](std::size_t k, std::vector<mpz_class>& ys) -> bool {
      if (k == xs.size()) {
        if (--budget < 0) {
          exhausted = true;
          return false;
        }
        Polynomial f = interpolate(xs, ys);
        if (f.degree() != d || !f.has_integer_coefficients()) return false;
        Polynomial q, rem;
        Polynomial::divmod(h, f, q, rem);
        if (!rem.is_zero()) return false;
        SturmSequence sf(squarefree_part(f));
        if (sf.count_roots(lo, hi) == 0) return false;
        h = f.primitive_part();
        return true;
      }
      for (const auto& dv : divs[k]) {
        for (int s : {1, -1}) {
          if (k == 0 && s < 0) continue;
          ys.push_back(s * dv);
          bool found = rec(k + 1, ys);
          ys.pop_back();
          if (found) return true;
          if (exhausted) return false;
        }
      }
      return false;
    };
    std::vector<mpz_class> ys;
    if (rec(0, ys)) return minimal_polynomial(h, lo, hi);
    if (exhausted) return {h.monic(), false};
  }
  return {h.monic(), true};
}

}  // namespace orbitile
