#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "mhc/lattice.hpp"

using namespace mhc;

namespace {

Configuration filled(Region r, BoundaryRule b) {
  return Configuration::from_rule(r, b);
}

// direct MIS definition: independent and no vertex can be added
bool mis_by_definition(const Configuration& cfg, const Region& region) {
  if (!is_independent(cfg, region)) return false;
  for (Site s : region.sites()) {
    if (cfg.query(s) == 1) continue;
    bool addable = true;
    for (Site d : kDirs)
      if (cfg.query(s + d) == 1) addable = false;
    if (addable) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cross shape") {
  Cross c{{2, -1}};
  auto sites = c.sites();
  CHECK(sites.size() == 5);
  std::set<Site> uniq(sites.begin(), sites.end());
  CHECK(uniq.size() == 5);
  for (Site s : sites) CHECK(c.contains(s));
  CHECK_FALSE(c.contains({3, 0}));
  CHECK_FALSE(c.contains({0, -1}));
}

TEST_CASE("recovery rule basics") {
  Configuration zero(Region::box(2), BoundaryRule::zero());
  CHECK_FALSE(recovery_ok(zero, {0, 0}));  // all-zero cross

  Configuration even = filled(Region::box(3), BoundaryRule::even());
  for (Site s : Region::box(2).sites()) CHECK(recovery_ok(even, s));

  Configuration pair(Region::box(2), BoundaryRule::zero());
  pair.set({0, 0}, 1);
  pair.set({1, 0}, 1);
  CHECK_FALSE(recovery_ok(pair, {0, 0}));
}

TEST_CASE("error sets") {
  Configuration even = filled(Region::box(3), BoundaryRule::even());
  CHECK(error_set(even, Region::box(3)).count == 0);

  // single 1 at the origin on a zero background: every site outside the
  // closed cross violates the rule (direct evaluation at each of the 25)
  Configuration one(Region::box(2), BoundaryRule::zero());
  one.set({0, 0}, 1);
  ErrorReport rep = error_set(one, Region::box(2));
  CHECK(rep.count == 20);
  std::set<Site> got(rep.sites.begin(), rep.sites.end());
  for (Site s : Region::box(2).sites()) {
    bool in_cross = l1(s) <= 1;
    CHECK(got.count(s) == (in_cross ? 0u : 1u));
  }
  // in particular all eight sites at l1-distance exactly 2 are in error
  for (Site s : {Site{2, 0}, {-2, 0}, {0, 2}, {0, -2}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}})
    CHECK(got.count(s) == 1);

  Configuration zero(Region::box(1), BoundaryRule::zero());
  CHECK(error_set(zero, Region::box(1)).count == 9);
}

TEST_CASE("hamiltonian") {
  Configuration even = filled(Region::box(4), BoundaryRule::even());
  // zero errors: H = -beta |Lambda^+|; |U_2^+| = 25 + 20
  CHECK(hamiltonian(even, Region::box(2), 1.0) == doctest::Approx(-45.0));

  Configuration zero(Region::box(4), BoundaryRule::zero());
  // every site of Lambda^+ errs: H = +beta |Lambda^+|; |U_1^+| = 9 + 12
  CHECK(hamiltonian(zero, Region::box(1), 1.0) == doctest::Approx(21.0));

  CHECK_THROWS_AS(hamiltonian(even, Region::box(1), 0.0), precondition_error);
  CHECK_THROWS_AS(hamiltonian(even, Region::box(1), -1.0), precondition_error);

  // H(cfg) - H(cfg') = 2 beta (eps - eps') for configurations equal outside
  Configuration a = even, b = even;
  b.set({0, 0}, 0);
  double beta = 0.7;
  std::vector<Site> plus = region_plus(a, Region::box(2));
  long long e1 = 0, e2 = 0;
  for (Site s : plus) {
    e1 += recovery_ok(a, s) ? 0 : 1;
    e2 += recovery_ok(b, s) ? 0 : 1;
  }
  CHECK(hamiltonian(a, Region::box(2), beta) - hamiltonian(b, Region::box(2), beta) ==
        doctest::Approx(2.0 * beta * (e1 - e2)));
}

TEST_CASE("independence and maximality") {
  Configuration even = filled(Region::box(3), BoundaryRule::even());
  CHECK(is_independent(even, Region::box(3)));
  CHECK(is_maximal(even, Region::box(3)));

  Configuration zero(Region::box(3), BoundaryRule::zero());
  CHECK(is_independent(zero, Region::box(3)));
  CHECK_FALSE(is_maximal(zero, Region::box(3)));

  Configuration pair(Region::box(2), BoundaryRule::zero());
  pair.set({0, 0}, 1);
  pair.set({0, 1}, 1);
  CHECK_FALSE(is_independent(pair, Region::box(2)));

  // the eight-point 5x5 example configuration: an MIS of the grid graph
  Configuration fig(Region::window(0, 0, 4, 4), BoundaryRule::zero());
  for (Site s : {Site{0, 0}, {0, 3}, {1, 1}, {2, 0}, {2, 4}, {2, 2}, {4, 1}, {4, 3}})
    fig.set(s, 1);
  CHECK(is_independent(fig, fig.region()));
  CHECK(is_maximal(fig, fig.region()));

  // independent with one all-zero cross is not maximal
  Configuration hole = fig;
  hole.set({2, 2}, 0);
  CHECK(is_independent(hole, hole.region()));
  CHECK_FALSE(is_maximal(hole, hole.region()));
}

TEST_CASE("MIS equivalence on all 512 patterns of the 3x3 torus") {
  Region t = Region::torus(3, 3);
  for (uint32_t bits = 0; bits < 512; ++bits) {
    Configuration cfg(t, BoundaryRule::zero());
    for (int k = 0; k < 9; ++k) cfg.set({k % 3, k / 3}, (bits >> k) & 1);
    bool lhs = is_maximal(cfg, t);
    bool rhs = mis_by_definition(cfg, t);
    bool zero_err = error_set(cfg, t).count == 0 && is_independent(cfg, t);
    CHECK(lhs == rhs);
    CHECK(lhs == zero_err);
  }
}

TEST_CASE("complete_to_mis") {
  Region t5 = Region::torus(5, 5);
  Configuration zero5(t5, BoundaryRule::zero());
  Configuration done = complete_to_mis(zero5, t5);
  CHECK(is_maximal(done, t5));
  CHECK(done.occupied() >= 5);

  CHECK(complete_to_mis(done, t5) == done);  // fixed point

  Region t3 = Region::torus(3, 3);
  Configuration seed3(t3, BoundaryRule::zero());
  seed3.set({0, 0}, 1);
  Configuration d3 = complete_to_mis(seed3, t3);
  CHECK(is_maximal(d3, t3));
  CHECK(d3.query({0, 0}) == 1);

  Configuration bad(t3, BoundaryRule::zero());
  bad.set({0, 0}, 1);
  bad.set({1, 0}, 1);
  CHECK_THROWS_AS(complete_to_mis(bad, t3), precondition_error);

  // determinism under a supplied order
  std::vector<Site> order = t5.sites();
  std::reverse(order.begin(), order.end());
  CHECK(complete_to_mis(zero5, t5, order) == complete_to_mis(zero5, t5, order));
}

TEST_CASE("repair map") {
  // zero-center error: flip to 1
  Configuration zero(Region::box(3), BoundaryRule::zero());
  long long before = error_set(zero, Region::box(3)).count;
  Configuration rep = repair_map(zero, {0, 0});
  CHECK(rep.query({0, 0}) == 1);
  CHECK(error_set(rep, Region::box(3)).count < before);

  // one-center error: center cleared, erroneous zero-neighbors raised
  Configuration two(Region::box(3), BoundaryRule::zero());
  two.set({0, 0}, 1);
  two.set({1, 0}, 1);
  REQUIRE_FALSE(recovery_ok(two, {0, 0}));
  Configuration r2 = repair_map(two, {0, 0});
  CHECK(r2.query({0, 0}) == 0);
  // changes confined to the cross
  for (Site s : Region::box(3).sites())
    if (l1(s) > 1) CHECK(r2.query(s) == two.query(s));

  Configuration even = filled(Region::box(3), BoundaryRule::even());
  CHECK_THROWS_AS(repair_map(even, {0, 0}), precondition_error);

  // error set shrinks: E(f_i(eta)) subset of E(eta) \ {i}
  std::mt19937_64 eng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Configuration cfg(Region::box(3), BoundaryRule::even());
    for (Site s : Region::box(3).sites()) cfg.set(s, eng() & 1);
    ErrorReport errs = error_set(cfg, Region::box(3));
    if (errs.count == 0) continue;
    Site i = errs.sites[eng() % errs.sites.size()];
    Configuration fixed = repair_map(cfg, i);
    std::set<Site> old_errs(errs.sites.begin(), errs.sites.end());
    for (Site e : error_set(fixed, Region::box(3)).sites) {
      CHECK(old_errs.count(e) == 1);
      CHECK(!(e == i));
    }
    for (Site s : Region::box(4).sites())
      if (l1(s, i) > 1) CHECK(fixed.query(s) == cfg.query(s));
  }

  // repairing every interior error in any order terminates with a clean interior
  for (int trial = 0; trial < 20; ++trial) {
    Configuration cfg(Region::box(4), BoundaryRule::even());
    for (Site s : Region::box(4).sites()) cfg.set(s, eng() & 1);
    for (int guard = 0; guard < 200; ++guard) {
      ErrorReport errs = error_set(cfg, Region::box(4));
      if (errs.count == 0) break;
      cfg = repair_map(cfg, errs.sites[eng() % errs.sites.size()]);
    }
    CHECK(error_set(cfg, Region::box(4)).count == 0);
  }
}

TEST_CASE("one-vertex conditional") {
  double beta = 0.3;
  // surrounded by four ones: p0 = e^{5b} / (e^{5b} + e^{-5b})
  Configuration ones(Region::box(2), BoundaryRule::zero());
  for (Site d : kDirs) ones.set(d, 1);
  VertexProb p = one_vertex_prob(ones, {0, 0}, beta);
  CHECK(p.p0 == doctest::Approx(std::exp(5 * beta) /
                                (std::exp(5 * beta) + std::exp(-5 * beta))));
  CHECK(p.p0 + p.p1 == doctest::Approx(1.0));

  // all twelve relevant sites zero: p1 takes the same extreme value
  Configuration zeros(Region::box(2), BoundaryRule::zero());
  VertexProb q = one_vertex_prob(zeros, {0, 0}, beta);
  CHECK(q.p1 == doctest::Approx(std::exp(5 * beta) /
                                (std::exp(5 * beta) + std::exp(-5 * beta))));

  // beta -> 0 gives a fair coin
  VertexProb r = one_vertex_prob(ones, {0, 0}, 1e-12);
  CHECK(r.p0 == doctest::Approx(0.5).epsilon(1e-6));

  // changing any site with l1 distance > 2 never moves the conditional
  std::mt19937_64 eng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Configuration cfg(Region::box(3), BoundaryRule::zero());
    for (Site s : Region::box(3).sites()) cfg.set(s, eng() & 1);
    double base = one_vertex_prob(cfg, {0, 0}, beta).p0;
    for (Site s : Region::box(3).sites()) {
      if (l1(s) <= 2) continue;
      Configuration far = cfg;
      far.set(s, 1 - cfg.query(s));
      CHECK(one_vertex_prob(far, {0, 0}, beta).p0 == doctest::Approx(base));
    }
  }
}

TEST_CASE("boundary rules and torus queries") {
  BoundaryRule pat = BoundaryRule::periodic(2, 2, {1, 0, 0, 0});
  Configuration cfg(Region::box(1), pat);
  CHECK(cfg.query({2, 0}) == 1);  // (2,0) maps to pattern cell (0,0)
  CHECK(cfg.query({3, 0}) == 0);
  CHECK(cfg.query({-2, -2}) == 1);
  CHECK_THROWS_AS(BoundaryRule::periodic(2, 2, {1, 0, 0}), precondition_error);

  Region t = Region::torus(4, 3);
  Configuration tc(t, BoundaryRule::zero());
  tc.set({0, 0}, 1);
  CHECK(tc.query({4, 3}) == 1);
  CHECK(tc.query({-4, -3}) == 1);
  CHECK(region_plus(tc, t).size() == 12);  // empty torus boundary
}

TEST_CASE("grid serialization round trip") {
  Configuration cfg(Region::window(-1, -2, 2, 1), BoundaryRule::odd());
  std::mt19937_64 eng(3);
  for (Site s : cfg.region().sites()) cfg.set(s, eng() & 1);
  std::string text = format_configuration(cfg);
  std::istringstream in(text);
  Configuration back = parse_configuration(in);
  CHECK(back == cfg);
  CHECK(back.boundary().kind == BoundaryRule::Kind::Odd);
  CHECK(text.substr(0, 6) == "window");
}
