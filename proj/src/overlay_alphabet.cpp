#include "orbitile/overlay_alphabet.hpp"

#include <algorithm>
#include <sstream>

#include "orbitile/errors.hpp"

namespace orbitile {

namespace {

std::vector<long> counts_of(const Word& w, std::size_t n) {
  std::vector<long> c(n, 0);
  for (int x : w) ++c[static_cast<std::size_t>(x)];
  return c;
}

void add_counts(std::vector<long>& acc, const Word& w, std::size_t from = 0, std::size_t to = SIZE_MAX) {
  to = std::min(to, w.size());
  for (std::size_t k = from; k < to; ++k) ++acc[static_cast<std::size_t>(w[k])];
}

Word concat(std::initializer_list<const Word*> parts) {
  Word out;
  for (const Word* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

std::string join(const SubstitutionSystem& sys, const Word& w) { return sys.format(w, ","); }

Word split(const SubstitutionSystem& sys, const std::string& text) {
  Word w;
  if (text.empty()) return w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) w.push_back(sys.index_of(tok));
  return w;
}

// Both inequality chains for a fixed witness b; lengths measured with the scaled distributions.
struct Checker {
  const OverlaySystem& ov;
  std::size_t nb;

  AdaptiveReal eta_len(const std::vector<long>& c) const { return nu_length(ov.eta, c); }

  bool covers_alpha(const AdaptiveReal& alpha_len, const Word& beta, int b) const {
    std::vector<long> tail(nb, 0);
    add_counts(tail, beta, 1);
    std::vector<long> full = counts_of(beta, nb);
    ++full[static_cast<std::size_t>(b)];
    return eta_len(tail) < alpha_len && alpha_len < ov.gamma() * eta_len(full);
  }

  bool covers_image(const AdaptiveReal& image_len, const Word& beta, int b, std::size_t p_len,
                     std::size_t s_len, int delta) const {
    const Word& first = ov.b_power(beta[0], delta);
    const Word& last = ov.b_power(b, delta);
    if (p_len >= first.size() || s_len >= last.size()) return false;
    // q = first[p_len..], r = images of beta[1..], s = last[..s_len], t = last[s_len..]
    std::vector<long> r(nb, 0);
    for (std::size_t k = 1; k < beta.size(); ++k) add_counts(r, ov.b_power(beta[k], delta));
    std::vector<long> lower = r;
    add_counts(lower, first, p_len + 1);
    add_counts(lower, last, 0, s_len);
    std::vector<long> upper = r;
    add_counts(upper, first, p_len);
    add_counts(upper, last, 0, s_len + 1);
    return eta_len(lower) < image_len && image_len < ov.gamma() * eta_len(upper);
  }
};

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

}  // namespace

int OverlaySystem::index_of(const OverlayLetter& x) const {
  auto it = index.find(x);
  return it == index.end() ? -1 : it->second;
}

std::string OverlaySystem::name(const OverlayLetter& x) const {
  return A.sys.letter_name(x.alpha) + ";" + join(B.sys, x.beta) + ";" + join(B.sys, x.p) + ";" +
         join(B.sys, x.s) + ";" + std::to_string(x.delta);
}

OverlayLetter OverlaySystem::parse_name(const std::string& text) const {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5) throw ParseError("overlay letter needs five ';'-separated fields: " + text);
  OverlayLetter x;
  x.alpha = A.sys.index_of(parts[0]);
  x.beta = split(B.sys, parts[1]);
  x.p = split(B.sys, parts[2]);
  x.s = split(B.sys, parts[3]);
  try {
    x.delta = std::stoi(parts[4]);
  } catch (const std::exception&) {
    throw ParseError("bad delta in overlay letter: " + text);
  }
  return x;
}

const Word& OverlaySystem::b_power(int b, int delta) const {
  auto key = std::make_pair(b, delta);
  std::lock_guard<std::mutex> lock(*cache_mu_);
  auto it = b_power_cache_.find(key);
  if (it != b_power_cache_.end()) return it->second;
  return b_power_cache_.emplace(key, B.sys.apply(Word{b}, delta)).first->second;
}

OverlaySystem enumerate_alphabet(const Analysis& A, const Analysis& B, const OverlayOptions& opt) {
  OverlaySystem ov;
  ov.A = A;
  ov.B = B;
  ov.slack = opt.slack;
  ScaledDistributions sd = scale_distributions(A.dist, B.dist, B.growth.value, opt.slack);
  ov.nu = sd.nu;
  ov.eta = sd.eta;
  ov.K = compute_K(A.growth, B.growth);

  const std::size_t na = A.sys.size(), nb = B.sys.size();
  Checker chk{ov, nb};
  std::vector<int> deltas;
  if (ov.K - 1 >= 0) deltas.push_back(static_cast<int>(ov.K - 1));
  deltas.push_back(static_cast<int>(ov.K));

  for (std::size_t a = 0; a < na; ++a) {
    AdaptiveReal alpha_len = ov.nu[a];
    AdaptiveReal image_len = nu_length(ov.nu, A.sys.counts(A.sys.image(static_cast<int>(a))));
    // |beta| - 1 < |alpha| / min eta, and min eta' = 1.
    for (long len = 1; AdaptiveReal(len - 1) < alpha_len; ++len) {
      Word beta(static_cast<std::size_t>(len), 0);
      while (true) {
        for (std::size_t b = 0; b < nb; ++b) {
          if (!chk.covers_alpha(alpha_len, beta, static_cast<int>(b))) continue;
          for (int delta : deltas) {
            const Word& first = ov.b_power(beta[0], delta);
            const Word& last = ov.b_power(static_cast<int>(b), delta);
            for (std::size_t pl = 0; pl < first.size(); ++pl)
              for (std::size_t sl = 0; sl < last.size(); ++sl) {
                if (!chk.covers_image(image_len, beta, static_cast<int>(b), pl, sl, delta)) continue;
                OverlayLetter x;
                x.alpha = static_cast<int>(a);
                x.beta = beta;
                x.p.assign(first.begin(), first.begin() + static_cast<long>(pl));
                x.s.assign(last.begin(), last.begin() + static_cast<long>(sl));
                x.delta = delta;
                ov.letters.push_back(std::move(x));
              }
          }
        }
        // next word of this length in lexicographic order
        long k = len - 1;
        while (k >= 0 && beta[static_cast<std::size_t>(k)] == static_cast<int>(nb) - 1) {
          beta[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
        ++beta[static_cast<std::size_t>(k)];
      }
    }
  }
  std::sort(ov.letters.begin(), ov.letters.end());
  ov.letters.erase(std::unique(ov.letters.begin(), ov.letters.end()), ov.letters.end());
  long n = 0;
  for (std::size_t k = 0; k < ov.letters.size(); ++k) {
    ov.index.emplace(ov.letters[k], static_cast<int>(k));
    n = std::max<long>(n, static_cast<long>(std::max(ov.letters[k].p.size(), ov.letters[k].s.size())));
  }
  ov.N = n + 1;
  return ov;
}

bool adjacent(const OverlayLetter& x, const OverlayLetter& y) { return x.s == y.p && x.delta == y.delta; }

bool is_production(const OverlaySystem& ov, const OverlayLetter& x, const std::vector<OverlayLetter>& w) {
  if (w.empty()) return false;
  Word alphas;
  Word lhs = x.p;
  for (const auto& y : w) {
    alphas.push_back(y.alpha);
    lhs.insert(lhs.end(), y.beta.begin(), y.beta.end());
  }
  if (alphas != ov.A.sys.image(x.alpha)) return false;
  Word rhs;
  for (int b : x.beta) {
    const Word& img = ov.b_power(b, x.delta);
    rhs.insert(rhs.end(), img.begin(), img.end());
  }
  rhs.insert(rhs.end(), x.s.begin(), x.s.end());
  return lhs == rhs;
}

bool letter_is_valid(const OverlaySystem& ov, const OverlayLetter& x) {
  const std::size_t nb = ov.B.sys.size();
  if (x.alpha < 0 || static_cast<std::size_t>(x.alpha) >= ov.A.sys.size() || x.beta.empty()) return false;
  if (x.delta != ov.K && x.delta != ov.K - 1) return false;
  const Word& first = ov.b_power(x.beta[0], x.delta);
  if (!is_prefix(x.p, first) || x.p.size() >= first.size()) return false;
  Checker chk{ov, nb};
  AdaptiveReal alpha_len = ov.nu[static_cast<std::size_t>(x.alpha)];
  AdaptiveReal image_len = nu_length(ov.nu, ov.A.sys.counts(ov.A.sys.image(x.alpha)));
  for (std::size_t b = 0; b < nb; ++b) {
    const Word& last = ov.b_power(static_cast<int>(b), x.delta);
    if (!is_prefix(x.s, last) || x.s.size() >= last.size()) continue;
    if (chk.covers_alpha(alpha_len, x.beta, static_cast<int>(b)) &&
        chk.covers_image(image_len, x.beta, static_cast<int>(b), x.p.size(), x.s.size(), x.delta))
      return true;
  }
  return false;
}

ApproxProductionReport verify_approx_production(const OverlaySystem& ov, const std::vector<OverlayLetter>& w,
                                 const std::vector<OverlayLetter>& w_prime, long N) {
  ApproxProductionReport rep;
  if (w.empty()) return rep;
  Word produced, expected;
  std::vector<long> owner;
  for (std::size_t k = 0; k < w_prime.size(); ++k) {
    produced.insert(produced.end(), w_prime[k].beta.begin(), w_prime[k].beta.end());
    owner.insert(owner.end(), w_prime[k].beta.size(), static_cast<long>(k));
  }
  for (const auto& x : w)
    for (int b : x.beta) {
      const Word& img = ov.b_power(b, w.front().delta);
      expected.insert(expected.end(), img.begin(), img.end());
    }
  if (approx_eq(produced, expected, N)) return rep;
  rep.ok = false;
  // Locate through the exact identity p(w_1) beta(w') = sigma^delta(beta(w)) s(w_n).
  Word lhs = concat({&w.front().p, &produced});
  Word rhs = concat({&expected, &w.back().s});
  std::size_t k = 0;
  while (k < lhs.size() && k < rhs.size() && lhs[k] == rhs[k]) ++k;
  long pos = static_cast<long>(k) - static_cast<long>(w.front().p.size());
  if (owner.empty())
    rep.index = 0;
  else
    rep.index = owner[static_cast<std::size_t>(std::clamp<long>(pos, 0, static_cast<long>(owner.size()) - 1))];
  return rep;
}

}  // namespace orbitile
