#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "orbitile/growth.hpp"

namespace orbitile {

// (alpha, beta, p, s, delta): alpha is a letter of the first system, the words are over the second.
struct OverlayLetter {
  int alpha = 0;
  Word beta;
  Word p;
  Word s;
  int delta = 0;
  auto operator<=>(const OverlayLetter&) const = default;
};

struct OverlayOptions {
  mpq_class slack = mpq_class(3, 2);
};

struct OverlaySystem {
  Analysis A, B;  // unscaled
  Distribution nu, eta;  // scaled: min nu > gamma * max eta
  long K = 0;
  long N = 0;
  mpq_class slack;
  std::vector<OverlayLetter> letters;  // sorted
  std::map<OverlayLetter, int> index;

  const AdaptiveReal& lambda() const { return A.growth.value; }
  const AdaptiveReal& gamma() const { return B.growth.value; }
  int index_of(const OverlayLetter& x) const;  // -1 when absent
  std::string name(const OverlayLetter& x) const;  // "alpha;b,b;p;s;delta"
  OverlayLetter parse_name(const std::string& text) const;
  // Images under the second substitution applied delta times, memoized per letter.
  const Word& b_power(int b, int delta) const;

 private:
  mutable std::map<std::pair<int, int>, Word> b_power_cache_;
  std::shared_ptr<std::mutex> cache_mu_ = std::make_shared<std::mutex>();
};

OverlaySystem enumerate_alphabet(const Analysis& A, const Analysis& B, const OverlayOptions& opt = {});

bool adjacent(const OverlayLetter& x, const OverlayLetter& y);

// p(x) beta(w) = sigma_B^delta(beta(x)) s(x) and sigma_A(alpha(x)) = alpha(w).
bool is_production(const OverlaySystem& ov, const OverlayLetter& x, const std::vector<OverlayLetter>& w);

// Re-check of both defining inequality chains for some witness b (independent of enumeration order).
bool letter_is_valid(const OverlaySystem& ov, const OverlayLetter& x);

template <class Seq>
bool approx_eq(const Seq& u, const Seq& v, long N) {
  const long nu = static_cast<long>(u.size()), nv = static_cast<long>(v.size());
  for (long a = 0; a < N && a <= nu; ++a)
    for (long b = 0; b < N && a + b <= nu; ++b) {
      long len = nu - a - b;
      for (long a2 = 0; a2 < N; ++a2) {
        long b2 = nv - a2 - len;
        if (b2 < 0) break;
        if (b2 >= N) continue;
        if (std::equal(u.begin() + a, u.begin() + a + len, v.begin() + a2)) return true;
      }
    }
  return false;
}

struct ApproxProductionReport {
  bool ok = true;
  long index = -1;  // first offending position of w' when !ok
};

// beta(w') ~_N sigma_B^delta(beta(w)) for a parent row w and its produced row w'.
ApproxProductionReport verify_approx_production(const OverlaySystem& ov, const std::vector<OverlayLetter>& w,
                                 const std::vector<OverlayLetter>& w_prime, long N);

}  // namespace orbitile
