#include "orbitile/orbit_window.hpp"

#include <algorithm>

namespace orbitile {

std::pair<long, long> OrbitWindow::children(std::size_t r, long j) const {
  if (r + 1 >= rows.size()) return {0, -1};
  const auto& par = parents[r];
  auto lo = std::lower_bound(par.begin(), par.end(), j);
  auto hi = std::upper_bound(par.begin(), par.end(), j);
  long base = rows[r + 1].j_lo;
  if (lo == hi) return {base + (lo - par.begin()), base + (lo - par.begin()) - 1};
  return {base + (lo - par.begin()), base + (hi - par.begin()) - 1};
}

long OrbitWindow::cell_count() const {
  long n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

void mark_core(OrbitWindow& w, const std::vector<long>& image_len) {
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    auto& row = w.rows[r];
    row.core_lo = row.j_lo;
    row.core_hi = row.j_lo - 1;
    if (r + 1 >= w.rows.size()) continue;
    bool any = false;
    for (long j = row.j_lo; j <= row.j_hi(); ++j) {
      auto [f, l] = w.children(r, j);
      if (l - f + 1 != image_len.at(static_cast<std::size_t>(row.at(j)))) continue;
      if (!any) row.core_lo = j;
      row.core_hi = j;
      any = true;
    }
  }
}

std::vector<OverlayLetter> overlay_row(const OverlaySystem& ov, const OrbitRow& row) {
  std::vector<OverlayLetter> out;
  out.reserve(row.letters.size());
  for (int x : row.letters) out.push_back(ov.letters.at(static_cast<std::size_t>(x)));
  return out;
}

OrbitWindow alpha_projection(const OverlaySystem& ov, const OrbitWindow& w) {
  OrbitWindow out = w;
  out.kind = OrbitWindow::Kind::Base;
  out.geometry.clear();
  for (auto& row : out.rows)
    for (int& x : row.letters) x = ov.letters.at(static_cast<std::size_t>(x)).alpha;
  return out;
}

}  // namespace orbitile
