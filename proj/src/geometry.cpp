#include "mhc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace mhc {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw precondition_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num;
  if (den != 1) os << '/' << den;
  return os.str();
}

bool PeriodicState::occupied(Site s) const {
  if (name == "even") return omega_even(s) == 1;
  if (name == "odd") return omega_odd(s) == 1;
  // sparse states: cosets of 2x + y = c (L1 family) or 2x - y = c (L2)
  int c = name[1] == '1' ? (2 * s.x + s.y) : (2 * s.x - s.y);
  int shift = name.back() - '0';
  return ((c - shift) % 5 + 5) % 5 == 0;
}

std::vector<Site> PeriodicState::occupied_on(const Region& torus) const {
  std::vector<Site> out;
  for (Site s : torus.sites())
    if (occupied(s)) out.push_back(s);
  return out;
}

std::vector<PeriodicState> enumerate_ground_states() {
  std::vector<PeriodicState> out;
  out.push_back({"even", {1, 1}, {1, -1}, 2, Rational(1, 2)});
  out.push_back({"odd", {1, 1}, {1, -1}, 2, Rational(1, 2)});
  for (int c = 0; c < 5; ++c)
    out.push_back({"L1+" + std::to_string(c), {2, 1}, {-1, 2}, 5, Rational(1, 5)});
  for (int c = 0; c < 5; ++c)
    out.push_back({"L2+" + std::to_string(c), {1, 2}, {-2, 1}, 5, Rational(1, 5)});
  return out;
}

Rational state_density(const PeriodicState& s) {
  Region t = Region::torus(s.domain == 2 ? 2 : 5, s.domain == 2 ? 2 : 5);
  int occ = static_cast<int>(s.occupied_on(t).size());
  return Rational(occ, t.area());
}

std::vector<std::vector<uint32_t>> all_mis_on_torus(int w, int h) {
  if (w < 2 || w > 16 || h < 2 || h > 16)
    throw precondition_error("all_mis_on_torus: dimensions in [2,16]");
  uint32_t full = (1u << w) - 1;
  auto rot1 = [&](uint32_t m) { return ((m << 1) | (m >> (w - 1))) & full; };
  auto rotr = [&](uint32_t m) { return ((m >> 1) | (m << (w - 1))) & full; };
  std::vector<uint32_t> rows;
  for (uint32_t m = 0; m <= full; ++m)
    if ((m & rot1(m)) == 0) rows.push_back(m);
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> cur(h);
  // maximality of row i needs rows i-1, i, i+1
  auto row_max_ok = [&](uint32_t below, uint32_t r, uint32_t above) {
    uint32_t need = full & ~r;
    uint32_t has = below | above | rot1(r) | rotr(r);
    return (need & ~has) == 0;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == h) {
      if ((cur[h - 1] & cur[0]) != 0) return;
      if (!row_max_ok(cur[h - 2], cur[h - 1], cur[0])) return;
      if (!row_max_ok(cur[h - 1], cur[0], cur[1])) return;
      out.push_back(cur);
      return;
    }
    for (uint32_t r : rows) {
      if (i > 0 && (r & cur[i - 1])) continue;
      if (i >= 2 && !row_max_ok(cur[i - 2], cur[i - 1], r)) continue;
      cur[i] = r;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

long long Triangle::area2() const {
  long long ax = v[0].x, ay = v[0].y;
  long long bx = v[1].x, by = v[1].y;
  long long cx = v[2].x, cy = v[2].y;
  long long a2 = (bx - ax) * (cy - ay) - (cx - ax) * (by - ay);
  return a2 < 0 ? -a2 : a2;
}

std::array<long long, 3> Triangle::sides2() const {
  auto q = [](Site a, Site b) {
    long long dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
  };
  std::array<long long, 3> s{q(v[0], v[1]), q(v[0], v[2]), q(v[1], v[2])};
  std::sort(s.begin(), s.end());
  return s;
}

Rational Triangle::circumradius2() const {
  auto s = sides2();
  long long a2 = area2();
  if (a2 == 0) throw precondition_error("degenerate triangle");
  // R^2 = a^2 b^2 c^2 / (16 A^2) = prod(sides2) / (4 * (2A)^2)
  return Rational(s[0] * s[1] * s[2], 4 * a2 * a2);
}

bool Triangle::regular() const {
  auto s = sides2();
  return s[0] == 5 && s[1] == 5 && s[2] == 10;
}

namespace {

struct CircleKey {
  Site anchor;                 // lex-smallest cocircular point, mod torus
  std::vector<Site> offsets;   // other cocircular points relative to anchor
  friend bool operator<(const CircleKey& a, const CircleKey& b) {
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return a.offsets < b.offsets;
  }
};

// exact circumcenter as (nx/d, ny/d)
struct Circum {
  long long nx, ny, d;  // d = 2 * orientation determinant (nonzero)
};

bool circumcenter(Site a, Site b, Site c, Circum& out) {
  long long ax = a.x, ay = a.y, bx = b.x, by = b.y, cx = c.x, cy = c.y;
  long long det = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (det == 0) return false;
  long long a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  out.nx = a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by);
  out.ny = a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax);
  out.d = det;
  return true;
}

// compare |p - center|^2 against r2 = |a - center|^2 exactly; returns
// negative/zero/positive
int side_of_circle(const Circum& cc, Site ref, Site p) {
  __int128 dx = (__int128)p.x * cc.d - cc.nx;
  __int128 dy = (__int128)p.y * cc.d - cc.ny;
  __int128 rx = (__int128)ref.x * cc.d - cc.nx;
  __int128 ry = (__int128)ref.y * cc.d - cc.ny;
  __int128 lhs = dx * dx + dy * dy;
  __int128 rhs = rx * rx + ry * ry;
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

}  // namespace

Triangulation delaunay(const std::vector<Site>& occupied, const Region& torus) {
  // dims >= 4 keep triangle diameters (<= sqrt(10)) below the torus size, so
  // minimal-image shapes are unambiguous
  if (!torus.is_torus() || torus.width < 4 || torus.height < 4)
    throw precondition_error("delaunay: torus with dims >= 4 required");
  {
    Configuration cfg(torus, BoundaryRule::zero());
    for (Site s : occupied) cfg.set(s, 1);
    if (!is_maximal(cfg, torus))
      throw precondition_error("delaunay: occupied set is not an MIS on the torus");
  }
  const int W = torus.width, H = torus.height;
  std::vector<Site> pts;
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      for (Site s : occupied) pts.push_back({s.x + dx * W, s.y + dy * H});
  auto d2 = [](Site a, Site b) {
    long long dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
  };
  std::map<CircleKey, std::vector<Site>> circles;
  for (Site a : pts) {
    if (a.x < 0 || a.x >= W || a.y < 0 || a.y >= H) continue;
    std::vector<Site> near;
    for (Site p : pts)
      if (!(p == a) && d2(a, p) <= 10) near.push_back(p);
    for (size_t i = 0; i < near.size(); ++i)
      for (size_t j = i + 1; j < near.size(); ++j) {
        Site b = near[i], c = near[j];
        if (d2(b, c) > 10) continue;
        Circum cc;
        if (!circumcenter(a, b, c, cc)) continue;
        Triangle t{{a, b, c}};
        if (Rational(5, 2) < t.circumradius2()) continue;
        bool empty = true;
        std::vector<Site> onc;
        for (Site p : pts) {
          int side = side_of_circle(cc, a, p);
          if (side < 0) {
            if (!(p == a || p == b || p == c)) {
              empty = false;
              break;
            }
          } else if (side == 0) {
            onc.push_back(p);
          }
        }
        if (!empty) continue;
        std::sort(onc.begin(), onc.end());
        Site v0 = onc.front();
        CircleKey key;
        key.anchor = {((v0.x % W) + W) % W, ((v0.y % H) + H) % H};
        for (Site p : onc)
          if (!(p == v0)) key.offsets.push_back(p - v0);
        circles.emplace(std::move(key), std::move(onc));
      }
  }
  Triangulation out;
  out.width = W;
  out.height = H;
  std::map<CircleKey, Triangle> tris;
  for (const auto& [key, onc] : circles) {
    Circum cc;
    // any three of the cocircular points define the circle
    if (!circumcenter(onc[0], onc[1], onc[2], cc))
      throw std::logic_error("delaunay: cocircular points degenerate");
    std::vector<Site> ring(onc.begin(), onc.end());
    auto angle_less = [&](Site p, Site q) {
      // exact angular comparison around (nx/d, ny/d) with d sign folded in
      long long sgn = cc.d > 0 ? 1 : -1;
      __int128 px = ((__int128)p.x * cc.d - cc.nx) * sgn;
      __int128 py = ((__int128)p.y * cc.d - cc.ny) * sgn;
      __int128 qx = ((__int128)q.x * cc.d - cc.nx) * sgn;
      __int128 qy = ((__int128)q.y * cc.d - cc.ny) * sgn;
      auto half = [](__int128 x, __int128 y) { return y < 0 || (y == 0 && x < 0) ? 1 : 0; };
      int hp = half(px, py), hq = half(qx, qy);
      if (hp != hq) return hp < hq;
      __int128 cr = px * qy - py * qx;
      return cr > 0;
    };
    std::sort(ring.begin(), ring.end(), angle_less);
    // fan from a vertex whose triangles keep every defective area at most 2
    // (radius-sqrt(5/2) circles admit a skewed diagonal otherwise); pivots
    // are tried in lexicographic order, so the choice is deterministic
    std::vector<Triangle> fan;
    for (Site pivot : onc) {
      fan.clear();
      size_t k = std::find(ring.begin(), ring.end(), pivot) - ring.begin();
      std::vector<Site> rot(ring.begin() + k, ring.end());
      rot.insert(rot.end(), ring.begin(), ring.begin() + k);
      bool ok = true;
      for (size_t i = 1; i + 1 < rot.size(); ++i) {
        Triangle t{{rot[0], rot[i], rot[i + 1]}};
        if (!t.regular() && t.area2() > 4) ok = false;
        fan.push_back(t);
      }
      if (ok) break;
    }
    for (const Triangle& t : fan) {
      if (!t.regular() && t.area2() > 4)
        throw std::logic_error("delaunay: no defective-area-compliant fan");
      Site v0 = *std::min_element(t.v.begin(), t.v.end());
      CircleKey tkey;
      tkey.anchor = {((v0.x % W) + W) % W, ((v0.y % H) + H) % H};
      for (Site p : t.v)
        if (!(p == v0)) tkey.offsets.push_back(p - v0);
      std::sort(tkey.offsets.begin(), tkey.offsets.end());
      tris.emplace(std::move(tkey), t);
    }
  }
  for (auto& [k, t] : tris) out.triangles.push_back(t);
  // tessellation invariants
  long long area2_sum = 0;
  for (const Triangle& t : out.triangles) area2_sum += t.area2();
  if (area2_sum != 2LL * W * H ||
      out.triangles.size() != 2 * occupied.size())
    throw std::logic_error("delaunay: tessellation invariants violated");
  return out;
}

namespace {

TriangleRow make_row(Site b, Site c) {
  Triangle t{{Site{0, 0}, b, c}};
  TriangleRow row;
  row.b = b;
  row.c = c;
  row.area2 = t.area2();
  Rational r2 = t.circumradius2();
  row.ratio2 = Rational(r2.num * 2, r2.den * 5);
  row.regular = t.regular();
  auto s = t.sides2();
  row.mis_compatible = s[0] >= 2;
  row.feasible = r2 <= Rational(5, 2);
  return row;
}

}  // namespace

std::vector<TriangleRow> feasible_triangle_table() {
  std::vector<TriangleRow> out;
  for (int bx = -5; bx <= 5; ++bx)
    for (int by = -5; by <= 5; ++by) {
      Site b{bx, by};
      if (l1(b) == 0 || l1(b) > 5) continue;
      for (int cx = -5; cx <= 5; ++cx)
        for (int cy = -5; cy <= 5; ++cy) {
          Site c{cx, cy};
          if (l1(c) == 0 || l1(c) > 5 || !(b < c)) continue;
          if (l1(c, b) > 5) continue;
          Triangle t{{Site{0, 0}, b, c}};
          if (t.area2() == 0) continue;
          out.push_back(make_row(b, c));
        }
    }
  return out;
}

std::vector<TriangleRow> triangle_table_13() {
  std::vector<TriangleRow> out;
  const Site b{1, 3};
  for (int u = 0; u <= 4; ++u)
    for (int v = 0; v <= 4 - u; ++v) {
      Site c{u, v};
      if (l1(c) == 0 || c == b) continue;
      // third vertices farther than the circumdisk diameter sqrt(10) from
      // the origin were already ruled out by the pair analysis
      if (u * u + v * v > 10) continue;
      Triangle t{{Site{0, 0}, b, c}};
      if (t.area2() == 0) continue;
      out.push_back(make_row(b, c));
    }
  return out;
}

BlockLabeling block_labeling(const std::vector<Site>& occupied,
                             const Region& torus, Site offset) {
  if (!torus.is_torus() || torus.width % 5 || torus.height % 5)
    throw precondition_error("block_labeling: torus dims must be multiples of 5");
  const int W = torus.width, H = torus.height;
  const int BW = W / 5, BH = H / 5;
  std::set<Site> occ(occupied.begin(), occupied.end());
  // per-block 5x5 pattern as a 25-bit mask
  auto pattern = [&](int bx, int by) {
    uint32_t mask = 0;
    for (int dx = 0; dx < 5; ++dx)
      for (int dy = 0; dy < 5; ++dy) {
        int x = (((5 * bx + dx + offset.x) % W) + W) % W;
        int y = (((5 * by + dy + offset.y) % H) + H) % H;
        if (occ.count({x, y})) mask |= 1u << (5 * dy + dx);
      }
    return mask;
  };
  // the ten sparse ground-state block patterns (anchored at the block corner)
  std::set<uint32_t> qp;
  for (const PeriodicState& s : enumerate_ground_states()) {
    if (!(s.density == Rational(1, 5))) continue;
    uint32_t mask = 0;
    for (int dx = 0; dx < 5; ++dx)
      for (int dy = 0; dy < 5; ++dy)
        if (s.occupied({dx, dy})) mask |= 1u << (5 * dy + dx);
    qp.insert(mask);
  }
  std::vector<uint32_t> pat(static_cast<size_t>(BW) * BH);
  for (int bx = 0; bx < BW; ++bx)
    for (int by = 0; by < BH; ++by)
      pat[static_cast<size_t>(by) * BW + bx] = pattern(bx, by);
  BlockLabeling lab;
  lab.bw = BW;
  lab.bh = BH;
  lab.correct.assign(pat.size(), 0);
  for (int bx = 0; bx < BW; ++bx)
    for (int by = 0; by < BH; ++by) {
      uint32_t q = pat[static_cast<size_t>(by) * BW + bx];
      if (!qp.count(q)) continue;
      bool ok = true;
      for (int i = -1; i <= 1 && ok; ++i)
        for (int j = -1; j <= 1 && ok; ++j) {
          int nx = ((bx + i) % BW + BW) % BW, ny = ((by + j) % BH + BH) % BH;
          if (pat[static_cast<size_t>(ny) * BW + nx] != q) ok = false;
        }
      lab.correct[static_cast<size_t>(by) * BW + bx] = ok;
    }
  // 8-connected components of incorrect blocks
  std::vector<char> seen(pat.size(), 0);
  for (int b0 = 0; b0 < BW * BH; ++b0) {
    if (lab.correct[b0] || seen[b0]) continue;
    std::vector<int> comp, stack{b0};
    seen[b0] = 1;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      comp.push_back(b);
      int bx = b % BW, by = b / BW;
      for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
          if (!i && !j) continue;
          int nx = ((bx + i) % BW + BW) % BW, ny = ((by + j) % BH + BH) % BH;
          int nb = ny * BW + nx;
          if (!lab.correct[nb] && !seen[nb]) {
            seen[nb] = 1;
            stack.push_back(nb);
          }
        }
    }
    lab.components.push_back(std::move(comp));
  }
  return lab;
}

std::vector<PeierlsComponent> peierls_check(const std::vector<Site>& occupied,
                                            const Region& torus, Site offset) {
  BlockLabeling lab = block_labeling(occupied, torus, offset);
  std::set<Site> occ(occupied.begin(), occupied.end());
  const int W = torus.width, H = torus.height;
  std::vector<PeierlsComponent> out;
  for (const auto& comp : lab.components) {
    PeierlsComponent pc;
    pc.blocks = static_cast<int>(comp.size());
    long long cnt = 0;
    for (int b : comp) {
      int bx = b % lab.bw, by = b / lab.bw;
      for (int dx = 0; dx < 5; ++dx)
        for (int dy = 0; dy < 5; ++dy) {
          int x = (((5 * bx + dx + offset.x) % W) + W) % W;
          int y = (((5 * by + dy + offset.y) % H) + H) % H;
          if (occ.count({x, y})) ++cnt;
        }
    }
    // a sparse ground state holds exactly 5 occupied sites per 5x5 block
    pc.lhs = cnt - 5LL * pc.blocks;
    pc.rhs = std::max(1.0, pc.blocks / 270.0);
    pc.pass = static_cast<double>(pc.lhs) >= pc.rhs;
    out.push_back(pc);
  }
  return out;
}

std::vector<Site> perturb_ground_state(const PeriodicState& state,
                                       const Region& torus, int k,
                                       uint64_t seed) {
  if (k < 0) throw precondition_error("perturb_ground_state: k >= 0");
  std::mt19937_64 eng(seed);
  Configuration cfg(torus, BoundaryRule::zero());
  for (Site s : state.occupied_on(torus)) cfg.set(s, 1);
  std::vector<Site> occ = state.occupied_on(torus);
  // delete k occupied sites
  for (int i = 0; i < k && !occ.empty(); ++i) {
    size_t j = eng() % occ.size();
    cfg.set(occ[j], 0);
    occ.erase(occ.begin() + j);
  }
  // with probability 1/2 relocate: add k legal sites before completion
  if (eng() % 2 == 0) {
    std::vector<Site> sites = torus.sites();
    std::shuffle(sites.begin(), sites.end(), eng);
    int added = 0;
    for (Site s : sites) {
      if (added >= k) break;
      if (cfg.query(s) == 1) continue;
      bool free = true;
      for (Site d : kDirs)
        if (cfg.query(s + d) == 1) free = false;
      if (free) {
        cfg.set(s, 1);
        ++added;
      }
    }
  }
  std::vector<Site> order = torus.sites();
  std::shuffle(order.begin(), order.end(), eng);
  Configuration done = complete_to_mis(cfg, torus, order);
  std::vector<Site> out;
  for (Site s : torus.sites())
    if (done.query(s) == 1) out.push_back(s);
  return out;
}

}  // namespace mhc
