#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitile/overlay_alphabet.hpp"

namespace orbitile {

struct OrbitRow {
  long i = 0;     // row label
  long j_lo = 0;  // global index of letters[0]
  std::vector<int> letters;
  // Signed letter counts of the row between global index 0 and j_lo (negative when j_lo < 0).
  // For overlay windows the counts are over the alpha alphabet.
  std::vector<long> origin_counts;
  long core_lo = 0, core_hi = -1;  // global range of cells whose children all lie in the window

  long j_hi() const { return j_lo + static_cast<long>(letters.size()) - 1; }
  long size() const { return static_cast<long>(letters.size()); }
  bool contains(long j) const { return j >= j_lo && j <= j_hi(); }
  int at(long j) const { return letters.at(static_cast<std::size_t>(j - j_lo)); }
  bool is_core(long j) const { return j >= core_lo && j <= core_hi; }
};

struct RowGeometry {
  long Delta = 0;
  int delta = 0;
  std::vector<long> nabla;  // per cell, then one extra entry for the right edge of the last cell
  std::vector<std::string> U, V, W;  // display only
};

struct OrbitWindow {
  enum class Kind { Base, Overlay };
  Kind kind = Kind::Base;
  std::vector<OrbitRow> rows;  // consecutive labels
  // parents[r][k]: global index in rows[r] of the parent of cell rows[r+1].j_lo + k
  std::vector<std::vector<long>> parents;
  std::vector<RowGeometry> geometry;  // overlay windows only
  std::map<std::string, std::string> metadata;

  long parent(std::size_t r, long j) const {
    return parents.at(r).at(static_cast<std::size_t>(j - rows.at(r + 1).j_lo));
  }
  // Global index range [first, last] of the in-window children of cell j of rows[r].
  std::pair<long, long> children(std::size_t r, long j) const;
  long cell_count() const;
};

// Recomputes core ranges from parents and image lengths (image_len[letter]).
void mark_core(OrbitWindow& w, const std::vector<long>& image_len);

// ---- seeds and base windows ----

struct SeedChoice {
  int n = 0;       // power of the substitution with a fixed interior letter
  int letter = 0;  // that letter
  long k0 = 0;     // position of the chosen interior occurrence in sigma^n(letter)
};

// Minimal n, then first letter in alphabet order, with an interior occurrence of itself in sigma^n(a).
// occurrence picks among interior occurrences (0 = leftmost).
SeedChoice find_seed(const SubstitutionSystem& sys, int occurrence = 0);

// Bi-infinite fixed point of sigma^n restricted to [-half, half] around index 0.
Word seed_word(const SubstitutionSystem& sys, const SeedChoice& seed, long half, long& origin);

struct WindowShape {
  bool cone = true;     // cone: keep all descendants of the top row
  long half_width = 0;  // band: keep [center - half_width, center + half_width] in every row below the top
};

struct BaseWindowSpec {
  long top_label = 0;
  long rows = 2;
  long top_half = 1;  // top row covers [-top_half, top_half]
  WindowShape shape;
  double anchor = 0.0;  // horizontal position followed by band centers, in top-row units
  int occurrence = 0;
};

// Rows below the top are single substitution steps; row r+1 index 0 is the first child of row r index 0.
OrbitWindow build_base_window(const Analysis& an, const BaseWindowSpec& spec);
// weights/growth only steer the band (doubles); anchor is in growth^{-label} scaled units.
OrbitWindow build_base_window(const SubstitutionSystem& sys, const std::vector<double>& weights, double growth,
                              const BaseWindowSpec& spec);

// Seed orbit: cone window of the given height whose top row has 2*width_hint+1 cells.
OrbitWindow seed_orbit(const SubstitutionSystem& sys, long height, long width_hint = 1);

// Left edge of cell j in row-relative units: counts(0..j) . weights (doubles, display and anchoring only).
double approx_position(const OrbitRow& row, long j, const std::vector<int>& letters_alpha,
                       const std::vector<double>& weights);

// ---- overlay windows ----

struct DeltaSequence {
  std::vector<long> Delta;  // Delta[k] for row i_lo + k, one more than the row count
  std::vector<int> delta;
};

DeltaSequence delta_sequence(const GrowthRate& lambda, const GrowthRate& gamma, const mpq_class& d, long i_lo,
                             long i_hi);

struct OverlayBuildOptions {
  bool tie_left = false;      // resolve exact ties toward the smaller index instead of raising
  bool with_decimals = true;  // fill U/V/W display strings
};

// nabla for targets: index k of the B cell with B_k <= target < B_{k+1}.
std::vector<long> nabla_indices(const std::vector<AdaptiveReal>& targets, const std::vector<AdaptiveReal>& edges,
                                long k_lo, bool tie_left);

OrbitWindow build_overlay_orbit(const OverlaySystem& ov, const OrbitWindow& orbitA, const OrbitWindow& orbitB,
                                const mpq_class& c, const mpq_class& d, const OverlayBuildOptions& opt = {});

struct OverlayWindowSpec {
  long rows = 8;
  long half_width = 12;  // band half width of the A window; 0 means a cone from a 3-cell top row
  long top_half = 1;
  bool tie_left = false;
};

// Builds both base windows with matching extents and overlays them.
OrbitWindow overlay_window(const OverlaySystem& ov, const mpq_class& c, const mpq_class& d,
                           const OverlayWindowSpec& spec);

// Letters of an overlay window decoded through its OverlaySystem.
std::vector<OverlayLetter> overlay_row(const OverlaySystem& ov, const OrbitRow& row);

// Replaces every overlay letter by its alpha letter.
OrbitWindow alpha_projection(const OverlaySystem& ov, const OrbitWindow& w);

}  // namespace orbitile
