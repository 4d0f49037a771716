#pragma once

#include <array>

#include "mhc/lattice.hpp"

namespace mhc {

// The 12 offsets with 0 < ||j||_1 <= 2, in a fixed scan order.
const std::array<Site, 12>& influence_offsets();

// I_{j->0}: worst-case total-variation swing of the one-vertex conditional at
// the origin when only site j changes; exhaustive over the other 11 sites.
double influence(Site j, double beta);

struct InfluenceTable {
  double beta = 0;
  std::array<double, 12> entries{};
  double alpha = 0;
};

InfluenceTable compute_influences(double beta);

// alpha(beta) = sum of the 12 influences (shift invariance).
double dobrushin_alpha(double beta);

// Bisection root of alpha(beta) = 1 on [lo, hi]; requires a bracketing
// interval (alpha(lo) < 1 < alpha(hi)).
double find_beta0(double lo = 0.04, double hi = 0.06, double tol = 1e-6);

}  // namespace mhc
