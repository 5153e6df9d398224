#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitile/polynomial.hpp"

namespace orbitile {

// Owning wrapper around mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] with outward-rounded endpoints.
struct Enclosure {
  Mpfr lo;
  Mpfr hi;
  explicit Enclosure(mpfr_prec_t prec) : lo(prec), hi(prec) {}
  double lo_double() const { return mpfr_get_d(lo.get(), MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi.get(), MPFR_RNDU); }
  double width() const;
};

// Bits allowed for a single comparison; ORBITILE_BITS overrides the default of 4096.
long bit_budget();

namespace detail {
struct Node;
}

// A real number known through enclosures that can be refined on demand.
// Values built only from rationals stay exact and compare exactly.
class AdaptiveReal {
 public:
  AdaptiveReal();
  AdaptiveReal(long v);  // NOLINT: implicit on purpose, integers are common literals
  AdaptiveReal(const mpq_class& v);  // NOLINT

  // The unique root of the squarefree polynomial p inside (lo, hi].
  static AdaptiveReal algebraic_root(const Polynomial& p, const mpq_class& lo, const mpq_class& hi);
  static AdaptiveReal exp(const mpq_class& d);
  static AdaptiveReal linear_combination(const std::vector<std::pair<std::int64_t, AdaptiveReal>>& terms);

  friend AdaptiveReal operator+(const AdaptiveReal& a, const AdaptiveReal& b);
  friend AdaptiveReal operator-(const AdaptiveReal& a, const AdaptiveReal& b);
  friend AdaptiveReal operator*(const AdaptiveReal& a, const AdaptiveReal& b);
  friend AdaptiveReal operator/(const AdaptiveReal& a, const AdaptiveReal& b);
  AdaptiveReal operator-() const;
  AdaptiveReal pow(long k) const;

  bool is_exact() const;
  const std::optional<mpq_class>& exact() const;

  Enclosure enclosure(mpfr_prec_t prec) const;
  double to_double() const;
  // Display only: digits significant decimals of the midpoint.
  std::string to_decimal(int digits = 50) const;

  // -1, 0 or +1. Zero is only returned for exact equal values;
  // otherwise overlapping enclosures at the bit budget raise IndeterminateComparison.
  static int compare(const AdaptiveReal& a, const AdaptiveReal& b);
  int sign() const { return compare(*this, AdaptiveReal()); }

  friend bool operator<(const AdaptiveReal& a, const AdaptiveReal& b) { return compare(a, b) < 0; }
  friend bool operator>(const AdaptiveReal& a, const AdaptiveReal& b) { return compare(a, b) > 0; }
  friend bool operator<=(const AdaptiveReal& a, const AdaptiveReal& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const AdaptiveReal& a, const AdaptiveReal& b) { return compare(a, b) >= 0; }

  // True when both enclosures at `prec` bits lie within rel_tol of each other (test helper).
  static bool approx_equal(const AdaptiveReal& a, const AdaptiveReal& b, double rel_tol);

 private:
  explicit AdaptiveReal(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
  friend struct detail::Node;
};

AdaptiveReal max(const AdaptiveReal& a, const AdaptiveReal& b);
AdaptiveReal min(const AdaptiveReal& a, const AdaptiveReal& b);

}  // namespace orbitile
