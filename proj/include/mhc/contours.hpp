#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mhc/lattice.hpp"

namespace mhc {

// Vertex of the diagonal dual lattice: the midpoint of a Z^2 edge, stored in
// doubled coordinates (u + v for the edge (u, v)), so x + y is odd... in
// doubled coordinates exactly one of x, y is odd times two -- the sum of the
// endpoints. Kept integral to avoid halves.
struct DualVertex {
  int x = 0, y = 0;
  friend bool operator==(DualVertex a, DualVertex b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(DualVertex a, DualVertex b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

struct Contour {
  std::vector<std::pair<Site, Site>> edges;  // (interior u in R, exterior v)
  std::vector<DualVertex> cycle;             // ccw, lex-smallest vertex first
  std::set<Site> interior;                   // Gamma_bullet: R plus its holes
  int length = 0;                            // |gamma| = |cycle|
};

// Connected component (4-adjacency) of {i : eta_i = omega^o_i} containing
// U_m; throws if eta is not m-odd in the component sense.
std::vector<Site> odd_component(const Configuration& eta, int m);

// Boundary edges of R reachable from the window frame (holes excluded),
// assembled into the dual cycle.
Contour extract_contour(const Configuration& eta, int m);

// theta_s: shift the contour interior by s, keep the exterior, occupy the
// uncovered ring I'_s. Throws logic_error if the result leaves X0 (a bug).
struct ShiftResult {
  Configuration config;
  int added = 0;  // |I'_s|
};
ShiftResult shift_configuration(const Configuration& eta, const Contour& c,
                                Site s);

// First s in E, W, N, S order whose shift is m-even.
Site choose_shift(const Configuration& eta, int m);

// phi = theta_{choose_shift}; occupied count grows by |gamma|/4.
Configuration phi_map(const Configuration& eta, int m);

// Random m-odd instances in B^e_{m,n} on the working window U_{n+2} with even
// boundary. `general` mixes arbitrary MIS content outside the odd patch.
Configuration random_m_odd(int m, int n, uint64_t seed, bool general = true);

// ASCII rendering of eta with R / contour interior marked, for debugging.
std::string render_contour(const Configuration& eta, int m);

}  // namespace mhc
