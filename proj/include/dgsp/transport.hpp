#pragma once

// Exact 2-Wasserstein distance and optimal couplings between finite discrete
// measures over R^n. Dense transportation simplex: north-west-corner start,
// most-negative-reduced-cost pivoting with deterministic tie-breaks, an
// epsilon perturbation retry if the pivot count suggests cycling. Exact at
// desk scale; no entropic approximation anywhere in this path.

#include "dgsp/measure.hpp"

namespace dgsp {

struct Coupling {
  DiscreteMeasure row_measure;
  DiscreteMeasure col_measure;
  Matrix plan;  // row i, col j: mass moved from row atom i to col atom j
  double cost;  // sum of plan * squared distance = squared W2
};

/// 2-Wasserstein distance between measures over vector atoms of equal
/// dimension: square root of the optimal transport cost under squared
/// Euclidean ground cost.
double w2(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Distance to a Dirac in closed form: sqrt(sum_i w_i |x_i - p|^2).
/// Against a one-point target every coupling coincides, so no solve needed.
double w2_dirac(const DiscreteMeasure& mu, const Vector& p);

/// Optimal transport plan witnessing w2. Row sums match mu's weights and
/// column sums nu's within 1e-9; zero-weight atoms are dropped before the
/// solve and appear as zero rows/columns.
Coupling optimal_coupling(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace dgsp
