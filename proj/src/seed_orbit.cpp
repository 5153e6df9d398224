#include <algorithm>
#include <cmath>

#include "orbitile/errors.hpp"
#include "orbitile/orbit_window.hpp"

namespace orbitile {

SeedChoice find_seed(const SubstitutionSystem& sys, int occurrence) {
  if (!sys.is_expansive()) throw NotExpansive("system '" + sys.name() + "' is not expansive");
  // Primitive and expansive: some n <= |A|^2 + 2 works for every letter occurrence count we ask for.
  const int limit = static_cast<int>(sys.size() * sys.size()) + 8 + occurrence;
  for (int n = 1; n <= limit; ++n) {
    for (std::size_t a = 0; a < sys.size(); ++a) {
      Word img = sys.apply(Word{static_cast<int>(a)}, n);
      int seen = 0;
      for (std::size_t k = 1; k + 1 < img.size(); ++k) {
        if (img[k] != static_cast<int>(a)) continue;
        if (seen++ == occurrence) return {n, static_cast<int>(a), static_cast<long>(k)};
      }
    }
  }
  throw BadParameters("no interior self-occurrence found for occurrence " + std::to_string(occurrence));
}

Word seed_word(const SubstitutionSystem& sys, const SeedChoice& seed, long half, long& origin) {
  Word w{seed.letter};
  origin = 0;
  while (origin < half || static_cast<long>(w.size()) - origin - 1 < half) {
    Word next;
    long new_origin = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (static_cast<long>(k) == origin) new_origin = static_cast<long>(next.size()) + seed.k0;
      Word img = sys.apply(Word{w[k]}, seed.n);
      next.insert(next.end(), img.begin(), img.end());
    }
    w = std::move(next);
    origin = new_origin;
  }
  Word out(w.begin() + (origin - half), w.begin() + (origin + half + 1));
  origin = half;
  return out;
}

double approx_position(const OrbitRow& row, long j, const std::vector<int>& letters_alpha,
                       const std::vector<double>& weights) {
  double x = 0;
  for (std::size_t k = 0; k < row.origin_counts.size(); ++k)
    x += static_cast<double>(row.origin_counts[k]) * weights[k];
  for (long t = row.j_lo; t < j; ++t)
    x += weights[static_cast<std::size_t>(letters_alpha[static_cast<std::size_t>(t - row.j_lo)])];
  return x;
}

namespace {

std::vector<long> image_lengths(const SubstitutionSystem& sys) {
  std::vector<long> len;
  for (const auto& img : sys.rules()) len.push_back(static_cast<long>(img.size()));
  return len;
}

}  // namespace

OrbitWindow build_base_window(const SubstitutionSystem& sys, const std::vector<double>& weights, double growth,
                              const BaseWindowSpec& spec) {
  if (spec.rows < 1) throw BadParameters("a window needs at least one row");
  SeedChoice seed = find_seed(sys, spec.occurrence);
  long origin = 0;
  Word top = seed_word(sys, seed, spec.top_half, origin);
  const std::size_t n = sys.size();
  const IntMatrix m = sys.matrix();
  std::vector<long> len = image_lengths(sys);

  OrbitWindow w;
  w.kind = OrbitWindow::Kind::Base;
  OrbitRow row;
  row.i = spec.top_label;
  row.j_lo = -spec.top_half;
  row.letters = top;
  row.origin_counts.assign(n, 0);
  for (long k = 0; k < spec.top_half; ++k) --row.origin_counts[static_cast<std::size_t>(top[static_cast<std::size_t>(k)])];
  w.rows.push_back(row);

  for (long r = 1; r < spec.rows; ++r) {
    const OrbitRow& up = w.rows.back();
    OrbitRow next;
    next.i = up.i + 1;
    // index 0 of the new row is the first child of index 0 of the row above
    next.origin_counts.assign(n, 0);
    next.j_lo = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) next.origin_counts[a] += m[a][b] * up.origin_counts[b];
      next.j_lo += len[a] * up.origin_counts[a];
    }
    std::vector<long> par;
    for (long j = up.j_lo; j <= up.j_hi(); ++j) {
      const Word& img = sys.image(up.at(j));
      next.letters.insert(next.letters.end(), img.begin(), img.end());
      par.insert(par.end(), img.size(), j);
    }
    if (!spec.shape.cone) {
      // keep a band of cells around the one containing the anchor
      const double scale = std::pow(growth, -static_cast<double>(next.i));
      long center = next.j_lo;
      double x = approx_position(next, next.j_lo, next.letters, weights) * scale;
      for (long j = next.j_lo; j <= next.j_hi(); ++j) {
        double right = x + weights[static_cast<std::size_t>(next.at(j))] * scale;
        center = j;
        if (spec.anchor < right) break;
        x = right;
      }
      long lo = std::max(next.j_lo, center - spec.shape.half_width);
      long hi = std::min(next.j_hi(), center + spec.shape.half_width);
      for (long j = next.j_lo; j < lo; ++j) ++next.origin_counts[static_cast<std::size_t>(next.at(j))];
      std::size_t off = static_cast<std::size_t>(lo - next.j_lo), cnt = static_cast<std::size_t>(hi - lo + 1);
      next.letters = Word(next.letters.begin() + static_cast<long>(off), next.letters.begin() + static_cast<long>(off + cnt));
      par = std::vector<long>(par.begin() + static_cast<long>(off), par.begin() + static_cast<long>(off + cnt));
      next.j_lo = lo;
    }
    w.parents.push_back(std::move(par));
    w.rows.push_back(std::move(next));
  }
  mark_core(w, len);
  w.metadata["system"] = sys.to_text();
  w.metadata["seed"] = "n=" + std::to_string(seed.n) + " letter=" + sys.letter_name(seed.letter) +
                       " k0=" + std::to_string(seed.k0) + " occurrence=" + std::to_string(spec.occurrence);
  w.metadata["shape"] = spec.shape.cone ? "cone" : "band " + std::to_string(spec.shape.half_width);
  return w;
}

OrbitWindow build_base_window(const Analysis& an, const BaseWindowSpec& spec) {
  std::vector<double> wts;
  for (const auto& x : an.dist.weights) wts.push_back(x.to_double());
  return build_base_window(an.sys, wts, an.growth.approx(), spec);
}

OrbitWindow seed_orbit(const SubstitutionSystem& sys, long height, long width_hint) {
  if (height < 2) throw BadParameters("seed_orbit needs height >= 2");
  if (!sys.is_expansive()) throw NotExpansive("system '" + sys.name() + "' is not expansive");
  Analysis an = analyze(sys);
  BaseWindowSpec spec;
  spec.rows = height;
  spec.top_half = std::max<long>(width_hint, 0);
  return build_base_window(an, spec);
}

}  // namespace orbitile
