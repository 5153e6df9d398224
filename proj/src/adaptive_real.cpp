#include "orbitile/adaptive_real.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

#include "orbitile/errors.hpp"

namespace orbitile {

double Enclosure::width() const {
  Mpfr w(mpfr_get_prec(lo.get()));
  mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

long bit_budget() {
  static const long bits = [] {
    const char* env = std::getenv("ORBITILE_BITS");
    if (env != nullptr) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 64) return v;
    }
    return 4096L;
  }();
  return bits;
}

namespace detail {

using Iv = Enclosure;

void set_q(Iv& out, const mpq_class& q) {
  mpfr_set_q(out.lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi.get(), q.get_mpq_t(), MPFR_RNDU);
}

void set_whole(Iv& out) {
  mpfr_set_inf(out.lo.get(), -1);
  mpfr_set_inf(out.hi.get(), 1);
}

bool has_nan(const Iv& v) { return mpfr_nan_p(v.lo.get()) || mpfr_nan_p(v.hi.get()); }

struct Node {
  std::optional<mpq_class> exact;
  mutable std::mutex mu;
  mutable std::map<mpfr_prec_t, std::shared_ptr<Iv>> cache;

  virtual ~Node() = default;
  virtual void compute(mpfr_prec_t prec, Iv& out) const = 0;

  std::shared_ptr<Iv> get(mpfr_prec_t prec) const {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(prec);
      if (it != cache.end()) return it->second;
    }
    auto iv = std::make_shared<Iv>(prec);
    if (exact) {
      set_q(*iv, *exact);
    } else {
      compute(prec, *iv);
      if (has_nan(*iv)) set_whole(*iv);
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(prec, iv).first->second;
  }

  static const Node& of(const AdaptiveReal& a) { return *a.node_; }
};

struct RationalNode : Node {
  explicit RationalNode(const mpq_class& q) {
    exact = q;
    exact->canonicalize();  // mpq_class(2, 6) is not reduced on its own
  }
  void compute(mpfr_prec_t, Iv&) const override {}
};

struct RootNode : Node {
  Polynomial poly;
  int sign_lo = 0;
  mutable std::mutex bracket_mu;
  mutable mpq_class lo, hi;

  RootNode(const Polynomial& p, const mpq_class& a, const mpq_class& b) : poly(p), lo(a), hi(b) {
    if (poly.sign_at(hi) == 0) {
      exact = hi;
      return;
    }
    sign_lo = poly.sign_at(lo);
  }

  void compute(mpfr_prec_t prec, Iv& out) const override {
    std::lock_guard<std::mutex> lock(bracket_mu);
    // Shrink the bracket below 2^-(prec+2) relative to its magnitude.
    while (true) {
      mpq_class w = hi - lo;
      mpq_class mag = abs(hi) > abs(lo) ? abs(hi) : abs(lo);
      if (mag < 1) mag = 1;
      mpz_class scale = 1;
      scale <<= static_cast<mp_bitcnt_t>(prec + 2);
      if (w * scale <= mag) break;
      mpq_class mid = (lo + hi) / 2;
      int s = poly.sign_at(mid);
      if (s == 0) {
        lo = mid;
        hi = mid;
        break;
      }
      if (s == sign_lo)
        lo = mid;
      else
        hi = mid;
    }
    mpfr_set_q(out.lo.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi.get(), hi.get_mpq_t(), MPFR_RNDU);
  }
};

struct ExpNode : Node {
  mpq_class d;
  explicit ExpNode(const mpq_class& v) : d(v) {
    if (sgn(d) == 0) exact = mpq_class(1);
  }
  void compute(mpfr_prec_t prec, Iv& out) const override {
    Iv q(prec + 16);
    set_q(q, d);
    mpfr_exp(out.lo.get(), q.lo.get(), MPFR_RNDD);
    mpfr_exp(out.hi.get(), q.hi.get(), MPFR_RNDU);
  }
};

void interval_mul(const Iv& a, const Iv& b, Iv& out, mpfr_prec_t prec) {
  Mpfr t(prec);
  bool first = true;
  for (const Mpfr* x : {&a.lo, &a.hi})
    for (const Mpfr* y : {&b.lo, &b.hi}) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), out.lo.get())) mpfr_set(out.lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), out.hi.get())) mpfr_set(out.hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
}

void interval_inv(const Iv& a, Iv& out) {
  bool contains_zero = mpfr_sgn(a.lo.get()) <= 0 && mpfr_sgn(a.hi.get()) >= 0;
  if (contains_zero) {
    set_whole(out);
    return;
  }
  mpfr_ui_div(out.lo.get(), 1, a.hi.get(), MPFR_RNDD);
  mpfr_ui_div(out.hi.get(), 1, a.lo.get(), MPFR_RNDU);
}

enum class Op { Add, Sub, Mul, Div };

struct BinaryNode : Node {
  Op op;
  AdaptiveReal a, b;
  BinaryNode(Op o, AdaptiveReal x, AdaptiveReal y) : op(o), a(std::move(x)), b(std::move(y)) {}
  void compute(mpfr_prec_t prec, Iv& out) const override {
    auto ia = of(a).get(prec);
    auto ib = of(b).get(prec);
    switch (op) {
      case Op::Add:
        mpfr_add(out.lo.get(), ia->lo.get(), ib->lo.get(), MPFR_RNDD);
        mpfr_add(out.hi.get(), ia->hi.get(), ib->hi.get(), MPFR_RNDU);
        break;
      case Op::Sub:
        mpfr_sub(out.lo.get(), ia->lo.get(), ib->hi.get(), MPFR_RNDD);
        mpfr_sub(out.hi.get(), ia->hi.get(), ib->lo.get(), MPFR_RNDU);
        break;
      case Op::Mul:
        interval_mul(*ia, *ib, out, prec);
        break;
      case Op::Div: {
        Iv inv(prec);
        interval_inv(*ib, inv);
        if (mpfr_inf_p(inv.lo.get()))
          set_whole(out);
        else
          interval_mul(*ia, inv, out, prec);
        break;
      }
    }
  }
};

struct PowNode : Node {
  AdaptiveReal base;
  long k;
  PowNode(AdaptiveReal b, long e) : base(std::move(b)), k(e) {}
  void compute(mpfr_prec_t prec, Iv& out) const override {
    auto ib = of(base).get(prec);
    long e = k < 0 ? -k : k;
    Iv acc(prec), sq(prec), tmp(prec);
    set_q(acc, mpq_class(1));
    mpfr_set(sq.lo.get(), ib->lo.get(), MPFR_RNDD);
    mpfr_set(sq.hi.get(), ib->hi.get(), MPFR_RNDU);
    while (e > 0) {
      if (e & 1) {
        interval_mul(acc, sq, tmp, prec);
        std::swap(acc, tmp);
      }
      e >>= 1;
      if (e > 0) {
        interval_mul(sq, sq, tmp, prec);
        std::swap(sq, tmp);
      }
    }
    if (k < 0)
      interval_inv(acc, out);
    else {
      mpfr_set(out.lo.get(), acc.lo.get(), MPFR_RNDD);
      mpfr_set(out.hi.get(), acc.hi.get(), MPFR_RNDU);
    }
  }
};

struct LinearNode : Node {
  std::vector<std::pair<std::int64_t, AdaptiveReal>> terms;
  explicit LinearNode(std::vector<std::pair<std::int64_t, AdaptiveReal>> t) : terms(std::move(t)) {}
  void compute(mpfr_prec_t prec, Iv& out) const override {
    mpfr_set_zero(out.lo.get(), 1);
    mpfr_set_zero(out.hi.get(), 1);
    Mpfr lo(prec), hi(prec);
    for (const auto& [c, x] : terms) {
      auto ix = of(x).get(prec);
      if (c >= 0) {
        mpfr_mul_si(lo.get(), ix->lo.get(), c, MPFR_RNDD);
        mpfr_mul_si(hi.get(), ix->hi.get(), c, MPFR_RNDU);
      } else {
        mpfr_mul_si(lo.get(), ix->hi.get(), c, MPFR_RNDD);
        mpfr_mul_si(hi.get(), ix->lo.get(), c, MPFR_RNDU);
      }
      mpfr_add(out.lo.get(), out.lo.get(), lo.get(), MPFR_RNDD);
      mpfr_add(out.hi.get(), out.hi.get(), hi.get(), MPFR_RNDU);
    }
  }
};

}  // namespace detail

using detail::Node;

AdaptiveReal::AdaptiveReal() : AdaptiveReal(mpq_class(0)) {}
AdaptiveReal::AdaptiveReal(long v) : AdaptiveReal(mpq_class(v)) {}
AdaptiveReal::AdaptiveReal(const mpq_class& v) : node_(std::make_shared<detail::RationalNode>(v)) {}

AdaptiveReal AdaptiveReal::algebraic_root(const Polynomial& p, const mpq_class& lo, const mpq_class& hi) {
  auto n = std::make_shared<detail::RootNode>(p, lo, hi);
  if (n->exact) return AdaptiveReal(*n->exact);
  return AdaptiveReal(std::shared_ptr<const Node>(n));
}

AdaptiveReal AdaptiveReal::exp(const mpq_class& d) {
  if (sgn(d) == 0) return AdaptiveReal(1L);
  return AdaptiveReal(std::shared_ptr<const Node>(std::make_shared<detail::ExpNode>(d)));
}

AdaptiveReal AdaptiveReal::linear_combination(const std::vector<std::pair<std::int64_t, AdaptiveReal>>& terms) {
  bool all_exact = true;
  mpq_class sum = 0;
  std::vector<std::pair<std::int64_t, AdaptiveReal>> kept;
  for (const auto& [c, x] : terms) {
    if (c == 0) continue;
    if (x.is_exact())
      sum += mpq_class(mpz_class(static_cast<long>(c))) * *x.exact();
    else
      all_exact = false;
    kept.emplace_back(c, x);
  }
  if (all_exact) return AdaptiveReal(sum);
  return AdaptiveReal(std::shared_ptr<const Node>(std::make_shared<detail::LinearNode>(std::move(kept))));
}


AdaptiveReal operator+(const AdaptiveReal& a, const AdaptiveReal& b) {
  if (a.is_exact() && b.is_exact()) return AdaptiveReal(mpq_class(*a.exact() + *b.exact()));
  if (a.is_exact() && sgn(*a.exact()) == 0) return b;
  if (b.is_exact() && sgn(*b.exact()) == 0) return a;
  return AdaptiveReal(std::shared_ptr<const Node>(std::make_shared<detail::BinaryNode>(detail::Op::Add, a, b)));
}

AdaptiveReal operator-(const AdaptiveReal& a, const AdaptiveReal& b) {
  if (a.is_exact() && b.is_exact()) return AdaptiveReal(mpq_class(*a.exact() - *b.exact()));
  if (b.is_exact() && sgn(*b.exact()) == 0) return a;
  return AdaptiveReal(std::shared_ptr<const Node>(std::make_shared<detail::BinaryNode>(detail::Op::Sub, a, b)));
}

AdaptiveReal operator*(const AdaptiveReal& a, const AdaptiveReal& b) {
  if (a.is_exact() && b.is_exact()) return AdaptiveReal(mpq_class(*a.exact() * *b.exact()));
  if (a.is_exact() && *a.exact() == 1) return b;
  if (b.is_exact() && *b.exact() == 1) return a;
  return AdaptiveReal(std::shared_ptr<const Node>(std::make_shared<detail::BinaryNode>(detail::Op::Mul, a, b)));
}

AdaptiveReal operator/(const AdaptiveReal& a, const AdaptiveReal& b) {
  if (b.is_exact() && sgn(*b.exact()) == 0) throw std::domain_error("division by exact zero");
  if (a.is_exact() && b.is_exact()) return AdaptiveReal(mpq_class(*a.exact() / *b.exact()));
  if (b.is_exact() && *b.exact() == 1) return a;
  return AdaptiveReal(std::shared_ptr<const Node>(std::make_shared<detail::BinaryNode>(detail::Op::Div, a, b)));
}

AdaptiveReal AdaptiveReal::operator-() const { return AdaptiveReal() - *this; }

AdaptiveReal AdaptiveReal::pow(long k) const {
  if (k == 0) return AdaptiveReal(1L);
  if (k == 1) return *this;
  if (is_exact()) {
    mpq_class b = *exact();
    if (k < 0) {
      if (sgn(b) == 0) throw std::domain_error("negative power of exact zero");
      b = 1 / b;
    }
    mpz_class num, den;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), e);
    return AdaptiveReal(mpq_class(num, den));
  }
  return AdaptiveReal(std::shared_ptr<const Node>(std::make_shared<detail::PowNode>(*this, k)));
}

bool AdaptiveReal::is_exact() const { return node_->exact.has_value(); }
const std::optional<mpq_class>& AdaptiveReal::exact() const { return node_->exact; }

Enclosure AdaptiveReal::enclosure(mpfr_prec_t prec) const {
  auto iv = node_->get(prec);
  Enclosure out(prec);
  mpfr_set(out.lo.get(), iv->lo.get(), MPFR_RNDD);
  mpfr_set(out.hi.get(), iv->hi.get(), MPFR_RNDU);
  return out;
}

double AdaptiveReal::to_double() const {
  if (is_exact()) return exact()->get_d();
  for (mpfr_prec_t prec = 64; prec <= bit_budget(); prec *= 2) {
    auto iv = node_->get(prec);
    double lo = mpfr_get_d(iv->lo.get(), MPFR_RNDN);
    double hi = mpfr_get_d(iv->hi.get(), MPFR_RNDN);
    if (std::isfinite(lo) && std::isfinite(hi) && std::abs(hi - lo) <= 1e-17 * std::max(1.0, std::abs(lo)))
      return 0.5 * (lo + hi);
  }
  auto iv = node_->get(bit_budget());
  return 0.5 * (mpfr_get_d(iv->lo.get(), MPFR_RNDN) + mpfr_get_d(iv->hi.get(), MPFR_RNDN));
}

std::string AdaptiveReal::to_decimal(int digits) const {
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
  Mpfr mid(prec);
  if (is_exact()) {
    mpfr_set_q(mid.get(), exact()->get_mpq_t(), MPFR_RNDN);
  } else {
    auto iv = node_->get(prec);
    mpfr_add(mid.get(), iv->lo.get(), iv->hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  }
  if (mpfr_zero_p(mid.get())) return "0";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, mid.get());
  return std::string(buf.data());
}

int AdaptiveReal::compare(const AdaptiveReal& a, const AdaptiveReal& b) {
  if (a.is_exact() && b.is_exact()) return cmp(*a.exact(), *b.exact()) < 0 ? -1 : (*a.exact() == *b.exact() ? 0 : 1);
  if (a.node_ == b.node_) throw IndeterminateComparison("comparison of a non-rational value with itself");
  long budget = bit_budget();
  for (mpfr_prec_t prec = 64;; prec = std::min<mpfr_prec_t>(prec * 2, budget)) {
    auto ia = a.node_->get(prec);
    auto ib = b.node_->get(prec);
    if (mpfr_less_p(ia->hi.get(), ib->lo.get())) return -1;
    if (mpfr_greater_p(ia->lo.get(), ib->hi.get())) return 1;
    if (prec >= budget) break;
  }
  throw IndeterminateComparison("enclosures still overlap at " + std::to_string(budget) + " bits");
}

bool AdaptiveReal::approx_equal(const AdaptiveReal& a, const AdaptiveReal& b, double rel_tol) {
  Enclosure ea = a.enclosure(128);
  Enclosure eb = b.enclosure(128);
  double scale = std::max({std::abs(ea.lo_double()), std::abs(ea.hi_double()), 1e-300});
  double gap = std::max(eb.hi_double() - ea.lo_double(), ea.hi_double() - eb.lo_double());
  return gap <= rel_tol * scale;
}

AdaptiveReal max(const AdaptiveReal& a, const AdaptiveReal& b) { return AdaptiveReal::compare(a, b) >= 0 ? a : b; }
AdaptiveReal min(const AdaptiveReal& a, const AdaptiveReal& b) { return AdaptiveReal::compare(a, b) <= 0 ? a : b; }

}  // namespace orbitile
