#include "mhc/dobrushin.hpp"

#include <cmath>

namespace mhc {

const std::array<Site, 12>& influence_offsets() {
  static const std::array<Site, 12> offs = [] {
    std::array<Site, 12> a{};
    int k = 0;
    for (int x = -2; x <= 2; ++x)
      for (int y = -2; y <= 2; ++y) {
        Site s{x, y};
        if (l1(s) > 0 && l1(s) <= 2) a[k++] = s;
      }
    return a;
  }();
  return offs;
}

double influence(Site j, double beta) {
  if (beta <= 0) throw precondition_error("influence: beta must be > 0");
  if (l1(j) > 2) return 0.0;
  if (l1(j) == 0) throw precondition_error("influence: j must differ from i");
  const auto& offs = influence_offsets();
  Configuration env(Region::box(2), BoundaryRule::zero());
  int jpos = -1;
  std::array<Site, 11> rest{};
  int r = 0;
  for (int k = 0; k < 12; ++k) {
    if (offs[k] == j)
      jpos = k;
    else
      rest[r++] = offs[k];
  }
  if (jpos < 0) throw precondition_error("influence: offset not at distance <= 2");
  double best = 0;
  for (uint32_t bits = 0; bits < (1u << 11); ++bits) {
    for (int k = 0; k < 11; ++k) env.set(rest[k], (bits >> k) & 1);
    env.set(j, 0);
    double a = one_vertex_prob(env, {0, 0}, beta).p0;
    env.set(j, 1);
    double b = one_vertex_prob(env, {0, 0}, beta).p0;
    best = std::max(best, std::abs(a - b));  // TV of a two-point law
  }
  return best;
}

InfluenceTable compute_influences(double beta) {
  InfluenceTable t;
  t.beta = beta;
  const auto& offs = influence_offsets();
  for (int k = 0; k < 12; ++k) {
    t.entries[k] = influence(offs[k], beta);
    t.alpha += t.entries[k];
  }
  return t;
}

double dobrushin_alpha(double beta) { return compute_influences(beta).alpha; }

double find_beta0(double lo, double hi, double tol) {
  if (!(lo < hi) || tol <= 0)
    throw precondition_error("find_beta0: need lo < hi and tol > 0");
  double alo = dobrushin_alpha(lo), ahi = dobrushin_alpha(hi);
  if (!(alo < 1.0 && 1.0 < ahi))
    throw precondition_error(
        "find_beta0: interval does not bracket alpha = 1 (alpha(lo) = " +
        std::to_string(alo) + ", alpha(hi) = " + std::to_string(ahi) + ")");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (dobrushin_alpha(mid) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mhc
