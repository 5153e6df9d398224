#pragma once
// Test-side reference computations. None of these call into the library.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using Rules = std::map<char, std::string>;

inline std::string expand(const Rules& r, std::string w, int k) {
  for (int t = 0; t < k; ++t) {
    std::string next;
    for (char c : w) next += r.at(c);
    w = std::move(next);
  }
  return w;
}

// Growth rate from letter counts: ratio of total lengths of successive images of the first letter.
// The words are expanded literally while short, then only their letter counts are pushed forward.
inline long double growth_by_counting(const Rules& r, int iters = 60) {
  std::string w(1, r.begin()->first);
  while (w.size() < 2000) w = expand(r, w, 1);
  std::map<char, long double> cnt;
  for (char c : w) cnt[c] += 1;
  long double prev = static_cast<long double>(w.size()), ratio = 0;
  for (int t = 0; t < iters; ++t) {
    std::map<char, long double> next;
    for (auto [c, n] : cnt)
      for (char d : r.at(c)) next[d] += n;
    long double total = 0;
    for (auto [c, n] : next) total += n;
    ratio = total / prev;
    // renormalize to stay in range
    for (auto& [c, n] : next) n /= total;
    cnt = next;
    prev = 1;
  }
  return ratio;
}

// Power-iteration eigenvector for the lengths: nu_a proportional to lim |sigma^k(a)| / lambda^k,
// normalized so the smallest entry is 1.
inline std::map<char, long double> length_eigenvector(const Rules& r, int iters = 200) {
  std::map<char, long double> v;
  for (auto& [c, img] : r) v[c] = 1;
  for (int t = 0; t < iters; ++t) {
    std::map<char, long double> next;
    long double mx = 0;
    for (auto& [c, img] : r) {
      long double s = 0;
      for (char d : img) s += v[d];
      next[c] = s;
      mx = std::max(mx, s);
    }
    for (auto& [c, x] : next) x /= mx;
    v = next;
  }
  long double mn = 1e300L;
  for (auto& [c, x] : v) mn = std::min(mn, x);
  for (auto& [c, x] : v) x /= mn;
  return v;
}

// Overlay alphabet straight from the two defining inequality chains, over single-character letters.
// nu, eta are the already scaled weights; words are strings.  Ties (within tie_eps) are recorded
// in *ties and not included.
struct Letter {
  char alpha;
  std::string beta, p, s;
  int delta;
  auto operator<=>(const Letter&) const = default;
};

inline std::set<Letter> alphabet(const Rules& A, const std::map<char, long double>& nu, const Rules& B,
                                 const std::map<char, long double>& eta, long double gamma, int K, long* ties = nullptr,
                                 long double tie_eps = 1e-12L) {
  auto len = [&](const std::string& w, const std::map<char, long double>& wt) {
    long double s = 0;
    for (char c : w) s += wt.at(c);
    return s;
  };
  auto strict = [&](long double a, long double b) {
    if (std::fabs(a - b) <= tie_eps * std::max<long double>(1, std::fabs(b))) {
      if (ties) ++*ties;
      return false;
    }
    return a < b;
  };
  long double min_eta = 1e300L;
  for (auto& [c, x] : eta) min_eta = std::min(min_eta, x);
  std::vector<char> bl;
  for (auto& [c, img] : B) bl.push_back(c);
  std::set<Letter> out;
  for (auto& [a, img] : A) {
    long double la = nu.at(a), li = len(img, nu);
    std::size_t maxlen = static_cast<std::size_t>(1 + la / min_eta);
    // all words over B up to maxlen
    std::vector<std::string> words{""};
    for (std::size_t L = 1; L <= maxlen; ++L) {
      std::vector<std::string> next;
      for (const auto& w : words)
        if (w.size() == L - 1)
          for (char c : bl) next.push_back(w + c);
      for (const auto& w : next) words.push_back(w);
    }
    for (const auto& beta : words) {
      if (beta.empty()) continue;
      for (char b : bl) {
        if (!(strict(len(beta.substr(1), eta), la) && strict(la, gamma * len(beta + b, eta)))) continue;
        for (int delta : {K - 1, K}) {
          if (delta < 0) continue;
          std::string first = expand(B, std::string(1, beta[0]), delta);
          std::string last = expand(B, std::string(1, b), delta);
          std::string r = expand(B, beta.substr(1), delta);
          for (std::size_t pl = 0; pl < first.size(); ++pl)
            for (std::size_t sl = 0; sl < last.size(); ++sl) {
              std::string q = first.substr(pl), s = last.substr(0, sl);
              std::string lower = q.substr(1) + r + s, upper = q + r + s + last[sl];
              if (strict(len(lower, eta), li) && strict(li, gamma * len(upper, eta)))
                out.insert({a, beta, first.substr(0, pl), s, delta});
            }
        }
      }
    }
  }
  return out;
}

}  // namespace oracle
