#pragma once

#include <string>
#include <vector>

#include "orbitile/orbit_window.hpp"

namespace orbitile {

struct ValidationReport {
  bool ok = true;
  long checks = 0;
  std::vector<std::string> failures;  // first few only
  long failure_count = 0;
  void fail(const std::string& what);
  void merge(const ValidationReport& other, const std::string& prefix = "");
};

// Independent re-validation: row labels, parent maps monotone and onto the core, productions on the core,
// partial productions at the two ends, origin index convention.
ValidationReport validate_base_window(const SubstitutionSystem& sys, const OrbitWindow& w);

// Adjacency, production, delta constancy, approximate-equality property, covering inequality on random
// samples and the alpha projection.
ValidationReport validate_overlay_window(const OverlaySystem& ov, const OrbitWindow& w, int eq1_samples = 100,
                                         unsigned seed = 12345);

struct PeriodEvidence {
  long pi = 0;
  std::vector<long> shifts;  // horizontal shift for each row pair (r, r + pi)
  long compared = 0;         // cells compared
};

// Every pi in 1..max_pi for which rows r and r+pi agree (labels and parents) under some top shift.
std::vector<PeriodEvidence> period_search(const OrbitWindow& w, long max_pi);

// Tries the map (r, j) -> (r + pi, j + shift_r) starting from top shift t0; returns false on any mismatch.
bool test_period(const OrbitWindow& w, long pi, long t0, PeriodEvidence* ev = nullptr);

struct GrowthReport {
  std::vector<long> u_len, beta_len;  // descendant chain of the top-centre cell
  double slope_u = 0, slope_beta = 0, log_lambda = 0;
  double tolerance = 0.05;
  bool slopes_ok = false;
  bool bounds_ok = true;  // |u| <= |beta(u)| <= C|u| on every row word
  long C = 0;
};

GrowthReport growth_exponent_check(const OverlaySystem& ov, const OrbitWindow& w, double tolerance = 0.05);

}  // namespace orbitile
