#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mhc/lattice.hpp"

namespace mhc {

struct Rational {
  long long num = 0;
  long long den = 1;
  Rational() = default;
  Rational(long long n, long long d = 1);
  double to_double() const { return double(num) / double(den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return (__int128)a.num * b.den <= (__int128)b.num * a.den;
  }
  std::string str() const;
};

struct PeriodicState {
  std::string name;
  Site g1, g2;            // generating translations
  int domain = 0;         // fundamental square domain size (2 dense, 5 sparse)
  Rational density;       // occupied fraction
  bool occupied(Site s) const;
  std::vector<Site> occupied_on(const Region& torus) const;
};

// The 2 dense (density 1/2) and 10 sparse (density 1/5) periodic MIS states.
std::vector<PeriodicState> enumerate_ground_states();
Rational state_density(const PeriodicState& s);

// Exhaustive MIS enumeration on a small torus (row-mask backtracking).
std::vector<std::vector<uint32_t>> all_mis_on_torus(int w, int h);

struct Triangle {
  std::array<Site, 3> v;  // lifted coordinates (replicated plane)
  long long area2() const;                 // twice the area, integer
  std::array<long long, 3> sides2() const; // squared side lengths, sorted
  Rational circumradius2() const;
  bool regular() const;  // squared sides {5, 5, 10}
};

struct Triangulation {
  int width = 0, height = 0;
  std::vector<Triangle> triangles;
};

// Delaunay triangulation of an MIS on a torus (minimal-image lifting,
// cocircular ties fanned from the lexicographically smallest vertex).
Triangulation delaunay(const std::vector<Site>& occupied, const Region& torus);

struct TriangleRow {
  Site b;            // second vertex (first is the origin)
  Site c;            // third vertex
  long long area2;   // twice the area
  Rational ratio2;   // circumradius^2 / (5/2)
  bool regular;
  bool mis_compatible;  // pairwise squared distances >= 2
  bool feasible;        // circumradius <= sqrt(5/2)
};

// Exhaustive table of candidate triangles with one vertex at the origin and
// pairwise l1 distances <= 5.
std::vector<TriangleRow> feasible_triangle_table();
// The (1,3) vertex class rows, third vertex (u,v) with u,v >= 0, u+v <= 4.
std::vector<TriangleRow> triangle_table_13();

struct BlockLabeling {
  int bw = 0, bh = 0;      // block grid dimensions
  std::vector<uint8_t> correct;           // bw*bh, row-major
  std::vector<std::vector<int>> components;  // 8-connected incorrect blocks
};

// 5x5 block-spin labeling against the sparse ground-state patterns; torus
// dimensions must be multiples of 5. `offset` shifts the block grid.
BlockLabeling block_labeling(const std::vector<Site>& occupied,
                             const Region& torus, Site offset = {0, 0});

struct PeierlsComponent {
  long long lhs = 0;   // occupied(omega, Gamma) - occupied(eta, Gamma)
  double rhs = 0;      // max(1, |Gamma| / 270)
  int blocks = 0;
  bool pass = false;
};

std::vector<PeierlsComponent> peierls_check(const std::vector<Site>& occupied,
                                            const Region& torus,
                                            Site offset = {0, 0});

// Perturb a sparse ground state on the torus: delete (and possibly relocate)
// k cross centers, then re-complete greedily in a seeded random order.
std::vector<Site> perturb_ground_state(const PeriodicState& state,
                                       const Region& torus, int k,
                                       uint64_t seed);

}  // namespace mhc
