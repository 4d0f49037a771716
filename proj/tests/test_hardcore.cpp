#include <doctest.h>

#include <cmath>

#include "mhc/hardcore.hpp"

using namespace mhc;

namespace {

Configuration even_filled(int halfwidth) {
  return Configuration::from_rule(Region::box(halfwidth), BoundaryRule::even());
}

}  // namespace

TEST_CASE("conditional support and weights") {
  Region lam = Region::box(1);
  Configuration omega = even_filled(4);
  McConditional mc = mhc_conditional(lam, omega, 1.0);
  REQUIRE(mc.patterns.size() > 0);
  // uniform at activity 1, and Z equals the completion count
  CHECK(mc.z == doctest::Approx((double)mc.patterns.size()));
  for (size_t k = 0; k < mc.patterns.size(); ++k)
    CHECK(mc.probability(k) == doctest::Approx(1.0 / mc.patterns.size()));
  // every support member extends omega to a valid local MIS
  for (uint64_t pat : mc.patterns) {
    Configuration full = omega;
    for (size_t b = 0; b < mc.sites.size(); ++b)
      full.set(mc.sites[b], (pat >> b) & 1);
    CHECK(is_maximal(full, Region::box(2)));
  }
  // activity reweighting multiplies each weight by c^{occupied}
  McConditional mc2 = mhc_conditional(lam, omega, 2.0);
  REQUIRE(mc2.patterns == mc.patterns);
  for (size_t k = 0; k < mc.patterns.size(); ++k) {
    int ones = __builtin_popcountll(mc.patterns[k]);
    CHECK(mc2.weights[k] == doctest::Approx(mc.weights[k] * std::pow(2.0, ones)));
  }
  CHECK_THROWS_AS(mhc_conditional(lam, omega, 0.0), precondition_error);
}

TEST_CASE("conditional rejects invalid exteriors") {
  Region lam = Region::box(1);
  Configuration zero(Region::box(4), BoundaryRule::zero());
  // the all-zero exterior violates the recovery rule at unfixable sites
  CHECK_THROWS_AS(mhc_conditional(lam, zero, 1.0), precondition_error);
  CHECK_THROWS_AS(
      mhc_conditional(Region::window(0, 0, 9, 9), even_filled(8), 1.0),
      precondition_error);
}

TEST_CASE("parity events on the checkerboards") {
  Configuration odd = Configuration::from_rule(Region::box(6), BoundaryRule::odd());
  Configuration even = even_filled(6);
  for (int m = 1; m <= 3; ++m) {
    CHECK(is_m_odd(odd, m));
    CHECK_FALSE(is_m_even(odd, m));
    CHECK(is_m_even(even, m));
    CHECK_FALSE(is_m_odd(even, m));
  }
  auto rects = parity_rects(2);
  REQUIRE(rects.size() == 4);
  CHECK(rects[0].x0 == -3);  // west rectangle [m^-] x [m]
  CHECK(rects[0].x1 == 2);
  CHECK(rects[1].x1 == 3);  // east rectangle [m^+] x [m]
}

TEST_CASE("exact parity weights against an independent enumeration at n = 2") {
  // enumerate J_2 via the conditional enumerator and classify events directly
  for (Parity par : {Parity::Even, Parity::Odd}) {
    BoundaryRule rule =
        par == Parity::Even ? BoundaryRule::even() : BoundaryRule::odd();
    Configuration omega = Configuration::from_rule(Region::box(5), rule);
    McConditional mc = mhc_conditional(Region::box(2), omega, 8.0);
    double odd_w = 0, even_w = 0, total = 0;
    for (size_t k = 0; k < mc.patterns.size(); ++k) {
      Configuration full = omega;
      for (size_t b = 0; b < mc.sites.size(); ++b)
        full.set(mc.sites[b], (mc.patterns[k] >> b) & 1);
      total += mc.weights[k];
      if (is_m_odd(full, 1)) odd_w += mc.weights[k];
      if (is_m_even(full, 1)) even_w += mc.weights[k];
    }
    ParityWeights dp = parity_weights_exact(2, 1, 8.0, par);
    CHECK(dp.total == doctest::Approx(total).epsilon(1e-9));
    CHECK(dp.odd == doctest::Approx(odd_w).epsilon(1e-9));
    CHECK(dp.even == doctest::Approx(even_w).epsilon(1e-9));
  }
}

TEST_CASE("exact parity weights at n = 3 against the enumerator") {
  Configuration omega = Configuration::from_rule(Region::box(6), BoundaryRule::even());
  McConditional mc = mhc_conditional(Region::box(3), omega, 1.0);
  CHECK(mc.patterns.size() == 1184);  // |J_3^e|
  double odd_w = 0;
  for (size_t k = 0; k < mc.patterns.size(); ++k) {
    Configuration full = omega;
    for (size_t b = 0; b < mc.sites.size(); ++b)
      full.set(mc.sites[b], (mc.patterns[k] >> b) & 1);
    if (is_m_odd(full, 1)) odd_w += 1;
  }
  CHECK(odd_w == 175);  // |B^e_{1,3}|
  ParityWeights dp = parity_weights_exact(3, 1, 1.0, Parity::Even);
  CHECK(dp.total == doctest::Approx(1184.0));
  CHECK(dp.odd == doctest::Approx(175.0));
  CHECK(dp.even == doctest::Approx(1.0));  // only omega^e itself
}

TEST_CASE("parity probability orders boundaries at the acceptance point") {
  ParityProbability pe = parity_probability(4, 2, 8.0, Parity::Even);
  ParityProbability po = parity_probability(4, 2, 8.0, Parity::Odd);
  CHECK(pe.method == "exact");
  CHECK(po.method == "exact");
  CHECK(pe.hom_has_mass);
  CHECK(po.hom_has_mass);
  CHECK(pe.p_odd_given_hom < po.p_odd_given_hom);
  // frozen from an independent implementation of the same sums
  CHECK(pe.weight_odd == doctest::Approx(2.84087896e29).epsilon(1e-6));
  CHECK(pe.weight_even == doctest::Approx(1.0633824e37).epsilon(1e-6));
  CHECK(po.weight_odd == doctest::Approx(1.33963287e36).epsilon(1e-6));
  CHECK(po.weight_even == doctest::Approx(4.33768251e28).epsilon(1e-6));

  CHECK_THROWS_AS(parity_probability(4, 4, 8.0, Parity::Even), precondition_error);
  CHECK_THROWS_AS(parity_probability(4, 5, 8.0, Parity::Even), precondition_error);
  CHECK_THROWS_AS(parity_weights_exact(5, 2, 8.0, Parity::Even), precondition_error);
}

TEST_CASE("mcmc parity sampler runs and is labeled empirical") {
  ParityProbability r = parity_probability(5, 2, 2.0, Parity::Even, 7, 120);
  CHECK(r.method == "mcmc");
  // forcing the sampler at a small window keeps the requested n
  ParityProbability f =
      parity_probability(3, 1, 2.0, Parity::Even, 7, 60, ParityMethod::Mcmc);
  CHECK(f.method == "mcmc");
  CHECK_THROWS_AS(
      parity_probability(6, 2, 2.0, Parity::Even, 7, 60, ParityMethod::Exact),
      precondition_error);
  CHECK(r.samples == 120);
  CHECK(r.weight_total > 0);
  if (r.hom_has_mass) {
    CHECK(r.p_odd_given_hom >= 0.0);
    CHECK(r.p_odd_given_hom <= 1.0);
  }
}
