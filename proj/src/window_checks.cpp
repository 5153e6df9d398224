#include "orbitile/window_checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orbitile/errors.hpp"

namespace orbitile {

void ValidationReport::fail(const std::string& what) {
  ok = false;
  ++failure_count;
  if (failures.size() < 20) failures.push_back(what);
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  checks += other.checks;
  if (!other.ok) ok = false;
  failure_count += other.failure_count;
  for (const auto& f : other.failures)
    if (failures.size() < 20) failures.push_back(prefix + f);
}

namespace {

std::string at(long i, long j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

ValidationReport validate_base_window(const SubstitutionSystem& sys, const OrbitWindow& w) {
  ValidationReport rep;
  const std::size_t n = sys.size();
  if (w.rows.empty()) return rep;
  if (w.parents.size() + 1 != w.rows.size()) {
    rep.fail("parent map count does not match rows");
    return rep;
  }
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    const OrbitRow& row = w.rows[r];
    ++rep.checks;
    if (r > 0 && row.i != w.rows[r - 1].i + 1) rep.fail("row labels are not consecutive at " + std::to_string(row.i));
    if (row.origin_counts.size() != n) rep.fail("origin counts have the wrong size in row " + std::to_string(row.i));
    for (int x : row.letters)
      if (x < 0 || static_cast<std::size_t>(x) >= n) {
        rep.fail("letter out of range in row " + std::to_string(row.i));
        return rep;
      }
  }
  for (std::size_t r = 0; r + 1 < w.rows.size(); ++r) {
    const OrbitRow& up = w.rows[r];
    const OrbitRow& down = w.rows[r + 1];
    const auto& par = w.parents[r];
    if (static_cast<long>(par.size()) != down.size()) {
      rep.fail("parent map of row " + std::to_string(down.i) + " has the wrong length");
      continue;
    }
    if (par.empty()) continue;
    // monotone, steps of 0 or 1, inside the row above
    for (std::size_t k = 0; k < par.size(); ++k) {
      ++rep.checks;
      if (!up.contains(par[k])) rep.fail("parent outside row at " + at(down.i, down.j_lo + static_cast<long>(k)));
      if (k > 0 && (par[k] < par[k - 1] || par[k] > par[k - 1] + 1))
        rep.fail("parent map not monotone onto at " + at(down.i, down.j_lo + static_cast<long>(k)));
    }
    // productions: full on the core, suffix at the first parent, prefix at the last one
    const long first = par.front(), last = par.back();
    long core_lo = up.j_lo, core_hi = up.j_lo - 1;
    bool any = false;
    std::size_t k = 0;
    for (long j = first; j <= last; ++j) {
      Word kids;
      while (k < par.size() && par[k] == j) kids.push_back(down.letters[k++]);
      const Word& img = sys.image(up.at(j));
      ++rep.checks;
      if (kids.size() == img.size()) {
        if (kids != img) rep.fail("production mismatch at " + at(up.i, j));
        if (!any) core_lo = j;
        if (any && core_hi != j - 1) rep.fail("core is not contiguous in row " + std::to_string(up.i));
        core_hi = j;
        any = true;
      } else if (j == first && j == last) {
        bool found = false;
        for (std::size_t off = 0; off + kids.size() <= img.size() && !found; ++off)
          found = std::equal(kids.begin(), kids.end(), img.begin() + static_cast<long>(off));
        if (!found) rep.fail("partial production is not a factor at " + at(up.i, j));
      } else if (j == first) {
        if (!std::equal(kids.rbegin(), kids.rend(), img.rbegin()) || kids.size() > img.size())
          rep.fail("partial production is not a suffix at " + at(up.i, j));
      } else if (j == last) {
        if (!std::equal(kids.begin(), kids.end(), img.begin()) || kids.size() > img.size())
          rep.fail("partial production is not a prefix at " + at(up.i, j));
      } else {
        rep.fail("interior cell with incomplete production at " + at(up.i, j));
      }
    }
    if (any && (core_lo != up.core_lo || core_hi != up.core_hi))
      rep.fail("core marking disagrees in row " + std::to_string(up.i));
    if (!any && up.core_hi >= up.core_lo) rep.fail("core marked on a row with no full production " + std::to_string(up.i));

    // index 0 of the row below is the first child of index 0 of the row above
    std::vector<long> cnt = up.origin_counts;
    for (long j = up.j_lo; j < first; ++j) ++cnt[static_cast<std::size_t>(up.at(j))];
    long kids_of_first = static_cast<long>(std::count(par.begin(), par.end(), first));
    long skipped = static_cast<long>(sys.image(up.at(first)).size()) - kids_of_first;
    if (first == last && kids_of_first < static_cast<long>(sys.image(up.at(first)).size())) skipped = -1;
    if (skipped >= 0) {
      ++rep.checks;
      IntMatrix m = sys.matrix();
      std::vector<long> expect(n, 0);
      long j_expect = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) expect[a] += m[a][b] * cnt[b];
        j_expect += static_cast<long>(sys.image(static_cast<int>(a)).size()) * cnt[a];
      }
      const Word& img = sys.image(up.at(first));
      for (long t = 0; t < skipped; ++t) ++expect[static_cast<std::size_t>(img[static_cast<std::size_t>(t)])];
      if (j_expect + skipped != down.j_lo || expect != down.origin_counts)
        rep.fail("origin convention broken between rows " + std::to_string(up.i) + " and " + std::to_string(down.i));
    }
  }
  const OrbitRow& bottom = w.rows.back();
  if (bottom.core_hi >= bottom.core_lo) rep.fail("bottom row cannot have a core");
  return rep;
}

ValidationReport validate_overlay_window(const OverlaySystem& ov, const OrbitWindow& w, int eq1_samples,
                                         unsigned seed) {
  ValidationReport rep;
  for (const auto& row : w.rows)
    for (int x : row.letters)
      if (x < 0 || static_cast<std::size_t>(x) >= ov.letters.size()) {
        rep.fail("overlay letter index out of range in row " + std::to_string(row.i));
        return rep;
      }
  rep.merge(validate_base_window(ov.A.sys, alpha_projection(ov, w)), "alpha projection: ");

  std::vector<std::vector<OverlayLetter>> rows;
  for (const auto& row : w.rows) rows.push_back(overlay_row(ov, row));

  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    const OrbitRow& row = w.rows[r];
    const auto& xs = rows[r];
    if (xs.empty()) continue;
    const int delta = xs.front().delta;
    ++rep.checks;
    if (delta != ov.K && delta != ov.K - 1) rep.fail("delta outside {K-1,K} in row " + std::to_string(row.i));
    if (r < w.geometry.size() && w.geometry[r].delta != delta)
      rep.fail("delta disagrees with geometry in row " + std::to_string(row.i));
    for (std::size_t k = 0; k < xs.size(); ++k) {
      ++rep.checks;
      if (xs[k].delta != delta) rep.fail("delta not constant at " + at(row.i, row.j_lo + static_cast<long>(k)));
      if (k + 1 < xs.size() && !adjacent(xs[k], xs[k + 1]))
        rep.fail("adjacency fails at " + at(row.i, row.j_lo + static_cast<long>(k)));
    }
    if (r + 1 >= w.rows.size()) continue;
    for (long j = row.core_lo; j <= row.core_hi; ++j) {
      auto [f, l] = w.children(r, j);
      std::vector<OverlayLetter> kids(rows[r + 1].begin() + (f - w.rows[r + 1].j_lo),
                                      rows[r + 1].begin() + (l - w.rows[r + 1].j_lo) + 1);
      ++rep.checks;
      if (!is_production(ov, xs[static_cast<std::size_t>(j - row.j_lo)], kids))
        rep.fail("production fails at " + at(row.i, j));
    }
    if (row.core_hi >= row.core_lo) {
      long f = w.children(r, row.core_lo).first, l = w.children(r, row.core_hi).second;
      std::vector<OverlayLetter> parent(xs.begin() + (row.core_lo - row.j_lo), xs.begin() + (row.core_hi - row.j_lo) + 1);
      std::vector<OverlayLetter> kids(rows[r + 1].begin() + (f - w.rows[r + 1].j_lo),
                                      rows[r + 1].begin() + (l - w.rows[r + 1].j_lo) + 1);
      ++rep.checks;
      ApproxProductionReport ap = verify_approx_production(ov, parent, kids, ov.N);
      if (!ap.ok) rep.fail("approximate equality fails below row " + std::to_string(row.i) + " near child " +
                           std::to_string(ap.index));
    }
  }

  // geometry: nabla strictly increasing, Delta steps equal delta
  for (std::size_t r = 0; r < w.geometry.size(); ++r) {
    const auto& g = w.geometry[r];
    for (std::size_t k = 0; k + 1 < g.nabla.size(); ++k) {
      ++rep.checks;
      if (g.nabla[k + 1] <= g.nabla[k]) rep.fail("nabla not increasing in row " + std::to_string(w.rows[r].i));
    }
    if (r + 1 < w.geometry.size() && w.geometry[r + 1].Delta - g.Delta != g.delta)
      rep.fail("Delta step differs from delta in row " + std::to_string(w.rows[r].i));
  }

  // covering inequality on random (i, j, k): |v(nabla_j+1 .. nabla_{k+1}-1)| <= |u(j..k)| < gamma |v(nabla_j .. nabla_{k+1})|
  std::mt19937 rng(seed);
  std::vector<std::size_t> usable;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() >= 2) usable.push_back(r);
  for (int s = 0; s < eq1_samples && !usable.empty(); ++s) {
    std::size_t r = usable[rng() % usable.size()];
    const auto& xs = rows[r];
    std::size_t j = rng() % (xs.size() - 1);
    std::size_t k = j + rng() % (xs.size() - 1 - j);
    std::vector<long> inner(ov.B.sys.size(), 0), outer(ov.B.sys.size(), 0), ucount(ov.A.sys.size(), 0);
    for (std::size_t t = j; t <= k; ++t) {
      ++ucount[static_cast<std::size_t>(xs[t].alpha)];
      for (std::size_t q = 0; q < xs[t].beta.size(); ++q) {
        ++outer[static_cast<std::size_t>(xs[t].beta[q])];
        if (t != j || q != 0) ++inner[static_cast<std::size_t>(xs[t].beta[q])];
      }
    }
    ++outer[static_cast<std::size_t>(xs[k + 1].beta.front())];
    AdaptiveReal u = nu_length(ov.nu, ucount);
    ++rep.checks;
    if (!(nu_length(ov.eta, inner) <= u && u < ov.gamma() * nu_length(ov.eta, outer)))
      rep.fail("covering inequality fails in row " + std::to_string(w.rows[r].i) + " for cells " +
               std::to_string(w.rows[r].j_lo + static_cast<long>(j)) + ".." +
               std::to_string(w.rows[r].j_lo + static_cast<long>(k)));
  }
  return rep;
}

bool test_period(const OrbitWindow& w, long pi, long t0, PeriodEvidence* ev) {
  const long H = static_cast<long>(w.rows.size());
  if (pi < 0 || pi >= H) return false;
  long t = t0;
  long compared = 0;
  std::vector<long> shifts;
  for (long r = 0; r + pi < H; ++r) {
    const OrbitRow& a = w.rows[static_cast<std::size_t>(r)];
    const OrbitRow& b = w.rows[static_cast<std::size_t>(r + pi)];
    long lo = std::max(a.j_lo, b.j_lo - t), hi = std::min(a.j_hi(), b.j_hi() - t);
    if (lo > hi) break;
    if (r == 0) {
      long smaller = std::min(a.size(), b.size());
      if (2 * (hi - lo + 1) < smaller) return false;
    }
    for (long j = lo; j <= hi; ++j) {
      ++compared;
      if (a.at(j) != b.at(j + t)) return false;
    }
    shifts.push_back(t);
    if (r + pi + 1 >= H) break;
    // parents on the overlap of the next row pair, then the next shift from a first child
    long next_t = 0;
    bool found = false;
    for (long j = lo; j <= hi && !found; ++j) {
      // complete productions on both sides, so the first children are real first children
      if (!a.is_core(j) || !b.is_core(j + t)) continue;
      auto ca = w.children(static_cast<std::size_t>(r), j);
      auto cb = w.children(static_cast<std::size_t>(r + pi), j + t);
      next_t = cb.first - ca.first;
      found = true;
    }
    if (!found) break;
    const OrbitRow& a2 = w.rows[static_cast<std::size_t>(r + 1)];
    const OrbitRow& b2 = w.rows[static_cast<std::size_t>(r + pi + 1)];
    long lo2 = std::max(a2.j_lo, b2.j_lo - next_t), hi2 = std::min(a2.j_hi(), b2.j_hi() - next_t);
    for (long k = lo2; k <= hi2; ++k) {
      ++compared;
      if (w.parent(static_cast<std::size_t>(r + pi), k + next_t) != w.parent(static_cast<std::size_t>(r), k) + t)
        return false;
    }
    t = next_t;
  }
  if (ev) {
    ev->pi = pi;
    ev->shifts = shifts;
    ev->compared = compared;
  }
  return true;
}

std::vector<PeriodEvidence> period_search(const OrbitWindow& w, long max_pi) {
  std::vector<PeriodEvidence> out;
  const long H = static_cast<long>(w.rows.size());
  for (long pi = 1; pi <= max_pi && pi < H; ++pi) {
    const OrbitRow& a = w.rows[0];
    const OrbitRow& b = w.rows[static_cast<std::size_t>(pi)];
    for (long t = b.j_lo - a.j_hi(); t <= b.j_hi() - a.j_lo; ++t) {
      PeriodEvidence ev;
      if (test_period(w, pi, t, &ev)) {
        out.push_back(ev);
        break;
      }
    }
  }
  return out;
}

GrowthReport growth_exponent_check(const OverlaySystem& ov, const OrbitWindow& w, double tolerance) {
  GrowthReport rep;
  rep.tolerance = tolerance;
  rep.log_lambda = std::log(ov.lambda().to_double());
  for (const auto& x : ov.letters) rep.C = std::max<long>(rep.C, static_cast<long>(x.beta.size()));
  if (w.rows.empty()) throw WindowTooNarrow("empty window");
  const OrbitRow& top = w.rows[0];
  long lo = top.j_lo + top.size() / 2, hi = lo;
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    const OrbitRow& row = w.rows[r];
    long ul = hi - lo + 1, bl = 0;
    for (long j = lo; j <= hi; ++j) bl += static_cast<long>(ov.letters[static_cast<std::size_t>(row.at(j))].beta.size());
    rep.u_len.push_back(ul);
    rep.beta_len.push_back(bl);
    if (r + 1 >= w.rows.size()) break;
    if (!row.is_core(lo) || !row.is_core(hi)) break;
    lo = w.children(r, lo).first;
    hi = w.children(r, hi).second;
  }
  for (const auto& row : w.rows) {
    long ul = row.size(), bl = 0;
    for (int x : row.letters) bl += static_cast<long>(ov.letters[static_cast<std::size_t>(x)].beta.size());
    if (!(ul <= bl && bl <= rep.C * ul)) rep.bounds_ok = false;
  }
  const std::size_t n = rep.u_len.size();
  if (n < 3) throw WindowTooNarrow("descendant chain shorter than three rows");
  auto slope = [&](const std::vector<long>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
      double x = static_cast<double>(k), y = std::log(static_cast<double>(ys[k]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  };
  rep.slope_u = slope(rep.u_len);
  rep.slope_beta = slope(rep.beta_len);
  rep.slopes_ok = std::abs(rep.slope_u - rep.log_lambda) <= tolerance &&
                  std::abs(rep.slope_beta - rep.log_lambda) <= tolerance;
  return rep;
}

}  // namespace orbitile
