#pragma once

#include <string>
#include <vector>

#include "orbitile/adaptive_real.hpp"
#include "orbitile/polynomial.hpp"
#include "orbitile/substitution.hpp"

namespace orbitile {

// Perron root of a nonnegative integer matrix, kept with the data needed for exact power tests.
struct GrowthRate {
  AdaptiveReal value;
  IntMatrix matrix;
  Polynomial poly;  // squarefree characteristic polynomial
  mpq_class lo, hi;  // value is the only root of poly in (lo, hi]
  double approx() const { return value.to_double(); }
};

GrowthRate perron_root(const IntMatrix& m);
GrowthRate growth_rate(const SubstitutionSystem& sys);  // NotPrimitive / NotExpansive

// Positive left eigenvector for the Perron root.
struct Distribution {
  std::vector<AdaptiveReal> weights;
  int min_index = 0;
  int max_index = 0;
  const AdaptiveReal& operator[](std::size_t k) const { return weights[k]; }
  std::size_t size() const { return weights.size(); }
  const AdaptiveReal& min() const { return weights[static_cast<std::size_t>(min_index)]; }
  const AdaptiveReal& max() const { return weights[static_cast<std::size_t>(max_index)]; }
};

// Normalized so the smallest weight is exactly 1.
Distribution distribution(const SubstitutionSystem& sys, const GrowthRate& g);
Distribution distribution(const SubstitutionSystem& sys);

AdaptiveReal nu_length(const Distribution& dist, const std::vector<long>& counts);
AdaptiveReal nu_length(const Distribution& dist, const Word& w);

// Exact sign of a^m - b^n for integer exponents (either may be negative or zero).
int compare_powers(const GrowthRate& a, long m, const GrowthRate& b, long n);

struct CommensurabilityVerdict {
  enum Kind { IncommensurateUpTo, Commensurate, Indeterminate } kind = IncommensurateUpTo;
  long m = 0, n = 0, bound = 0;
  std::string to_string() const;
};

CommensurabilityVerdict incommensurate(const GrowthRate& lambda, const GrowthRate& gamma, long bound);

// Smallest k >= 1 with gamma^k >= lambda.
long compute_K(const GrowthRate& lambda, const GrowthRate& gamma);

struct ScaledDistributions {
  Distribution nu, eta;
};

// eta' = eta / min eta; nu' scaled so min nu' = slack * gamma * max eta'.
ScaledDistributions scale_distributions(const Distribution& nu, const Distribution& eta,
                                        const AdaptiveReal& gamma, const mpq_class& slack = mpq_class(3, 2));

// Everything the overlay machinery needs about one system.
struct Analysis {
  SubstitutionSystem sys;
  GrowthRate growth;
  Distribution dist;
};

Analysis analyze(const SubstitutionSystem& sys);

}  // namespace orbitile
