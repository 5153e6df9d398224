#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace orbitile {

// Dense univariate polynomial with rational coefficients; coeffs()[k] multiplies x^k.
// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);
  static Polynomial from_integers(const std::vector<long>& coeffs);
  static Polynomial monomial(const mpq_class& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  const mpq_class& leading() const { return coeffs_.back(); }
  mpq_class coeff(int k) const;

  mpq_class operator()(const mpq_class& x) const;
  int sign_at(const mpq_class& x) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  // Scaled to coprime integer coefficients with positive leading coefficient.
  Polynomial primitive_part() const;
  bool has_integer_coefficients() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  // Euclidean division; b must be nonzero.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& quotient,
                     Polynomial& remainder);

  // "x^2 - x - 1" style rendering, variable name configurable.
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

// p / gcd(p, p'), made monic.
Polynomial squarefree_part(const Polynomial& p);

// Sturm chain of a squarefree polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);
  // Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const mpq_class& a, const mpq_class& b) const;
  int sign_variations(const mpq_class& x) const;
  const Polynomial& base() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

// Upper bound on the absolute value of every root (Cauchy bound).
mpq_class cauchy_root_bound(const Polynomial& p);

// Real roots that are integers (candidates tested exactly).
std::vector<long> integer_roots(const Polynomial& p);

// Integer matrices are stored row-major as vectors of rows.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

using BigMatrix = std::vector<std::vector<mpz_class>>;

// Characteristic polynomial det(xI - A) via Faddeev-LeVerrier over the rationals.
Polynomial characteristic_polynomial(const IntMatrix& a);
Polynomial characteristic_polynomial(const BigMatrix& a);

BigMatrix to_big(const IntMatrix& a);
BigMatrix big_power(const BigMatrix& a, long k);

// Bareiss fraction-free determinant.
mpz_class determinant(BigMatrix m);

// Exact integer matrix product / power; throws std::overflow_error on 64-bit overflow.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix matrix_power(const IntMatrix& a, int k);
IntMatrix identity_matrix(std::size_t n);

// Best-effort factor of the squarefree part of p that vanishes at the given root:
// linear factors found exactly, remaining factors by Kronecker search of bounded size.
// 'certified' reports whether irreducibility of the result was established.
struct MinimalPolynomial {
  Polynomial poly;
  bool certified = false;
};

// Divisors tests use the root's isolating interval (lo, hi].
MinimalPolynomial minimal_polynomial(const Polynomial& p, const mpq_class& lo, const mpq_class& hi);

}  // namespace orbitile
