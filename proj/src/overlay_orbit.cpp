#include <algorithm>
#include <cmath>

#include "orbitile/errors.hpp"
#include "orbitile/orbit_window.hpp"

namespace orbitile {

namespace {

// sign(e^d lambda^i - gamma^D), exact.
int compare_offset_power(const GrowthRate& lambda, const GrowthRate& gamma, const mpq_class& d, long i, long D) {
  if (d == 0) return compare_powers(lambda, i, gamma, D);
  try {
    return AdaptiveReal::compare(AdaptiveReal::exp(d) * lambda.value.pow(i), gamma.value.pow(D));
  } catch (const IndeterminateComparison& e) {
    throw DegenerateOffset(std::string("cannot separate e^d lambda^i from gamma^Delta: ") + e.what());
  }
}

int checked_compare(const AdaptiveReal& a, const AdaptiveReal& b) {
  try {
    return AdaptiveReal::compare(a, b);
  } catch (const IndeterminateComparison& e) {
    throw DegenerateOffset(std::string("undecidable tile boundary comparison: ") + e.what());
  }
}

std::vector<long> mat_vec(const IntMatrix& m, const std::vector<long>& v) {
  std::vector<long> out(m.size(), 0);
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b) out[a] += m[a][b] * v[b];
  return out;
}

}  // namespace

DeltaSequence delta_sequence(const GrowthRate& lambda, const GrowthRate& gamma, const mpq_class& d, long i_lo,
                             long i_hi) {
  const long K = compute_K(lambda, gamma);
  DeltaSequence out;
  const double ll = std::log(lambda.approx()), lg = std::log(gamma.approx());
  for (long i = i_lo; i <= i_hi + 1; ++i) {
    long D = static_cast<long>(std::floor((d.get_d() + static_cast<double>(i) * ll) / lg));
    // gamma^D <= e^d lambda^i < gamma^(D+1)
    while (compare_offset_power(lambda, gamma, d, i, D) < 0) --D;
    while (compare_offset_power(lambda, gamma, d, i, D + 1) >= 0) ++D;
    out.Delta.push_back(D);
  }
  for (std::size_t k = 0; k + 1 < out.Delta.size(); ++k) {
    long delta = out.Delta[k + 1] - out.Delta[k];
    if (delta != K && delta != K - 1)
      throw Error("delta_" + std::to_string(i_lo + static_cast<long>(k)) + " = " + std::to_string(delta) +
                  " is outside {K-1, K}");
    out.delta.push_back(static_cast<int>(delta));
  }
  return out;
}

std::vector<long> nabla_indices(const std::vector<AdaptiveReal>& targets, const std::vector<AdaptiveReal>& edges,
                                long k_lo, bool tie_left) {
  std::vector<long> out;
  if (edges.size() < 2) throw WindowTooNarrow("row of the second window is empty");
  std::size_t k = 0;  // current cell: edges[k] <= target < edges[k+1]
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const AdaptiveReal& T = targets[t];
    if (t == 0) {
      int c0 = checked_compare(edges[0], T);
      if (c0 > 0 || (c0 == 0 && tie_left)) throw WindowTooNarrow("target lies left of the second window");
      if (c0 == 0) throw DegenerateOffset("a tile boundary of the first tiling meets one of the second exactly");
    }
    while (true) {
      if (k + 1 >= edges.size()) throw WindowTooNarrow("target lies right of the second window");
      int c = checked_compare(edges[k + 1], T);
      if (c > 0) break;
      if (c == 0) {
        if (tie_left) break;
        throw DegenerateOffset("a tile boundary of the first tiling meets one of the second exactly");
      }
      ++k;
    }
    out.push_back(k_lo + static_cast<long>(k));
  }
  return out;
}

OrbitWindow build_overlay_orbit(const OverlaySystem& ov, const OrbitWindow& orbitA, const OrbitWindow& orbitB,
                                const mpq_class& c, const mpq_class& d, const OverlayBuildOptions& opt) {
  if (orbitA.rows.empty()) throw BadParameters("empty first window");
  const long i_lo = orbitA.rows.front().i, i_hi = orbitA.rows.back().i;
  DeltaSequence ds = delta_sequence(ov.A.growth, ov.B.growth, d, i_lo, i_hi);
  const long b_lo = orbitB.rows.empty() ? 0 : orbitB.rows.front().i;
  const long b_hi = orbitB.rows.empty() ? -1 : orbitB.rows.back().i;

  const AdaptiveReal E = AdaptiveReal::exp(-d);
  const AdaptiveReal C(c);
  const IntMatrix mb = ov.B.sys.matrix();

  OrbitWindow w;
  w.kind = OrbitWindow::Kind::Overlay;
  w.parents = orbitA.parents;

  for (std::size_t r = 0; r < orbitA.rows.size(); ++r) {
    const OrbitRow& ar = orbitA.rows[r];
    const long i = ar.i;
    const long D = ds.Delta[r];
    const int delta = ds.delta[r];
    if (D < b_lo || D > b_hi)
      throw WindowTooNarrow("second window lacks row " + std::to_string(D));
    const OrbitRow& br = orbitB.rows[static_cast<std::size_t>(D - b_lo)];

    const AdaptiveReal Li = ov.lambda().pow(-i);
    std::vector<long> cnt = ar.origin_counts;
    std::vector<AdaptiveReal> U, targets;
    for (long j = ar.j_lo; j <= ar.j_hi() + 1; ++j) {
      AdaptiveReal u = Li * nu_length(ov.nu, cnt);
      U.push_back(u);
      targets.push_back(E * u + C);
      if (j <= ar.j_hi()) ++cnt[static_cast<std::size_t>(ar.at(j))];
    }
    const AdaptiveReal G = ov.gamma().pow(-D);
    const AdaptiveReal Gn = ov.gamma().pow(-(D + delta));
    std::vector<long> bc = br.origin_counts;
    std::vector<std::vector<long>> bcounts;
    std::vector<AdaptiveReal> edges;
    for (long k = br.j_lo; k <= br.j_hi() + 1; ++k) {
      bcounts.push_back(bc);
      edges.push_back(G * nu_length(ov.eta, bc));
      if (k <= br.j_hi()) ++bc[static_cast<std::size_t>(br.at(k))];
    }
    std::vector<long> nabla = nabla_indices(targets, edges, br.j_lo, opt.tie_left);

    IntMatrix md = matrix_power(mb, delta);
    // p at every left edge j_lo .. j_hi+1 (the last one is s of the final cell)
    std::vector<Word> pre;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      long k = nabla[t];
      int b = br.at(k);
      const Word& img = ov.b_power(b, delta);
      std::vector<long> acc = mat_vec(md, bcounts[static_cast<std::size_t>(k - br.j_lo)]);
      std::size_t best = 0;
      for (std::size_t l = 1; l < img.size(); ++l) {
        ++acc[static_cast<std::size_t>(img[l - 1])];
        int cmp = checked_compare(Gn * nu_length(ov.eta, acc), targets[t]);
        if (cmp > 0) break;
        if (cmp == 0) {
          if (opt.tie_left) break;
          throw DegenerateOffset("a tile boundary of the first tiling meets a refined boundary of the second");
        }
        best = l;
      }
      pre.emplace_back(img.begin(), img.begin() + static_cast<long>(best));
    }

    OrbitRow row;
    row.i = i;
    row.j_lo = ar.j_lo;
    row.origin_counts = ar.origin_counts;
    row.core_lo = ar.core_lo;
    row.core_hi = ar.core_hi;
    RowGeometry geo;
    geo.Delta = D;
    geo.delta = delta;
    geo.nabla = nabla;
    for (long j = ar.j_lo; j <= ar.j_hi(); ++j) {
      std::size_t t = static_cast<std::size_t>(j - ar.j_lo);
      OverlayLetter x;
      x.alpha = ar.at(j);
      for (long k = nabla[t]; k < nabla[t + 1]; ++k) x.beta.push_back(br.at(k));
      x.p = pre[t];
      x.s = pre[t + 1];
      x.delta = delta;
      int id = ov.index_of(x);
      if (id < 0) throw Error("constructed letter " + ov.name(x) + " at (" + std::to_string(i) + "," +
                              std::to_string(j) + ") is not in the overlay alphabet");
      row.letters.push_back(id);
      if (opt.with_decimals) {
        geo.U.push_back(U[t].to_decimal(50));
        geo.V.push_back(edges[static_cast<std::size_t>(nabla[t] - br.j_lo)].to_decimal(50));
        geo.W.push_back(edges[static_cast<std::size_t>(nabla[t] - br.j_lo + 1)].to_decimal(50));
      }
    }
    w.rows.push_back(std::move(row));
    w.geometry.push_back(std::move(geo));
  }
  w.metadata["c"] = c.get_str();
  w.metadata["d"] = d.get_str();
  w.metadata["K"] = std::to_string(ov.K);
  w.metadata["N"] = std::to_string(ov.N);
  w.metadata["slack"] = ov.slack.get_str();
  w.metadata["system_a"] = ov.A.sys.to_text();
  w.metadata["system_b"] = ov.B.sys.to_text();
  w.metadata["origin"] = "index 0 of row i+1 is the first child of index 0 of row i; S_i = 0";
  w.metadata["ties"] = opt.tie_left ? "left" : "raise";
  if (orbitA.metadata.count("seed")) w.metadata["seed_a"] = orbitA.metadata.at("seed");
  if (orbitB.metadata.count("seed")) w.metadata["seed_b"] = orbitB.metadata.at("seed");
  return w;
}

OrbitWindow overlay_window(const OverlaySystem& ov, const mpq_class& c, const mpq_class& d,
                           const OverlayWindowSpec& spec) {
  if (spec.rows < 1) throw BadParameters("overlay window needs at least one row");
  std::vector<double> nu, eta;
  for (const auto& x : ov.nu.weights) nu.push_back(x.to_double());
  for (const auto& x : ov.eta.weights) eta.push_back(x.to_double());
  const double lam = ov.lambda().to_double(), gam = ov.gamma().to_double();
  const double nu_max = *std::max_element(nu.begin(), nu.end());
  const double ed = std::exp(-d.get_d());

  BaseWindowSpec sa;
  sa.rows = spec.rows;
  const bool cone = spec.half_width <= 0;
  sa.top_half = cone ? spec.top_half : spec.half_width;
  sa.shape.cone = cone;
  sa.shape.half_width = spec.half_width;
  SeedChoice seedA = find_seed(ov.A.sys);
  sa.anchor = 0.5 * nu[static_cast<std::size_t>(seedA.letter)];
  OrbitWindow wa = build_base_window(ov.A.sys, nu, lam, sa);

  DeltaSequence ds = delta_sequence(ov.A.growth, ov.B.growth, d, 0, spec.rows - 1);
  BaseWindowSpec sb;
  sb.top_label = ds.Delta.front();
  sb.rows = ds.Delta[static_cast<std::size_t>(spec.rows - 1)] - ds.Delta.front() + 1;
  sb.anchor = ed * sa.anchor + c.get_d();
  // B cells are at least gamma^{-Delta} wide and A cells at most e^{-d} lambda^{-i} nu_max <= that times nu_max
  const double top_scale = std::pow(gam, static_cast<double>(sb.top_label));
  const double reach = (std::abs(sb.anchor) + ed * (static_cast<double>(sa.top_half) + 2) * nu_max) * top_scale;
  sb.top_half = static_cast<long>(std::ceil(reach)) + 3;
  sb.shape.cone = cone;
  sb.shape.half_width = static_cast<long>(std::ceil((static_cast<double>(spec.half_width) + 2) * nu_max)) + 3;
  OrbitWindow wb = build_base_window(ov.B.sys, eta, gam, sb);

  OverlayBuildOptions opt;
  opt.tie_left = spec.tie_left;
  OrbitWindow w = build_overlay_orbit(ov, wa, wb, c, d, opt);
  w.metadata["shape"] = cone ? "cone" : "band " + std::to_string(spec.half_width);
  return w;
}

}  // namespace orbitile
