#include "mhc/contours.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "mhc/hardcore.hpp"

namespace mhc {

namespace {

// window must be a centered square U_w
int window_halfwidth(const Configuration& cfg) {
  const Region& r = cfg.region();
  if (r.is_torus() || r.x0 != -r.x1 || r.y0 != -r.y1 || r.x1 != r.y1)
    throw precondition_error("contour machinery expects a centered square window");
  return r.x1;
}

}  // namespace

std::vector<Site> odd_component(const Configuration& eta, int m) {
  int w = window_halfwidth(eta);
  if (m < 1 || m + 2 > w)
    throw precondition_error("odd_component: need 1 <= m <= window - 2");
  auto agree = [&](Site s) { return eta.query(s) == omega_odd(s); };
  if (!agree({0, 0}))
    throw precondition_error("odd_component: configuration is not m-odd");
  std::set<Site> comp;
  std::vector<Site> stack{{0, 0}};
  while (!stack.empty()) {
    Site s = stack.back();
    stack.pop_back();
    if (comp.count(s) || !agree(s)) continue;
    if (std::max(std::abs(s.x), std::abs(s.y)) > w) continue;  // clip at frame
    comp.insert(s);
    for (Site d : kDirs)
      if (!comp.count(s + d) && agree(s + d)) stack.push_back(s + d);
  }
  for (int x = -m; x <= m; ++x)
    for (int y = -m; y <= m; ++y)
      if (!comp.count({x, y}))
        throw precondition_error("odd_component: U_m not inside one component");
  return {comp.begin(), comp.end()};
}

Contour extract_contour(const Configuration& eta, int m) {
  int w = window_halfwidth(eta);
  for (Site s : Region::box(w + 1).sites())
    if (!recovery_ok(eta, s))
      throw precondition_error("extract_contour: configuration violates the recovery rule");
  std::vector<Site> rvec = odd_component(eta, m);
  std::set<Site> R(rvec.begin(), rvec.end());
  // flood-fill exterior detection needs two clear rings around the disagreement
  for (Site s : R)
    if (std::max(std::abs(s.x), std::abs(s.y)) > w - 2)
      throw precondition_error(
          "extract_contour: disagreement not confined to U_{w-2}");
  // flood fill from the frame over the complement of R
  std::set<Site> exterior;
  std::vector<Site> stack;
  for (int t = -w; t <= w; ++t) {
    stack.push_back({t, -w});
    stack.push_back({t, w});
    stack.push_back({-w, t});
    stack.push_back({w, t});
  }
  auto inside_window = [&](Site s) {
    return std::abs(s.x) <= w && std::abs(s.y) <= w;
  };
  while (!stack.empty()) {
    Site s = stack.back();
    stack.pop_back();
    if (!inside_window(s) || R.count(s) || exterior.count(s)) continue;
    exterior.insert(s);
    for (Site d : kDirs) stack.push_back(s + d);
  }
  Contour c;
  for (Site s : Region::box(w).sites())
    if (!exterior.count(s)) c.interior.insert(s);
  for (Site u : R)
    for (Site d : kDirs) {
      Site v = u + d;
      if (exterior.count(v)) c.edges.push_back({u, v});
    }
  // assemble the dual cycle: midpoints in doubled coordinates, neighbors are
  // perpendicular edges sharing an endpoint
  std::map<DualVertex, std::pair<Site, Site>> mid;
  for (auto& [u, v] : c.edges) mid[{u.x + v.x, u.y + v.y}] = {u, v};
  auto perpendicular_neighbors = [&](DualVertex d) {
    std::vector<DualVertex> out;
    const auto& [u, v] = mid.at(d);
    bool horizontal = (u.y == v.y);
    for (Site e : {u, v}) {
      int ex = 2 * e.x, ey = 2 * e.y;
      DualVertex a = horizontal ? DualVertex{ex, ey + 1} : DualVertex{ex + 1, ey};
      DualVertex b = horizontal ? DualVertex{ex, ey - 1} : DualVertex{ex - 1, ey};
      if (mid.count(a)) out.push_back(a);
      if (mid.count(b)) out.push_back(b);
    }
    return out;
  };
  if (!mid.empty()) {
    DualVertex start = mid.begin()->first;
    std::set<DualVertex> used{start};
    c.cycle.push_back(start);
    DualVertex cur = start;
    while (true) {
      std::vector<DualVertex> nb = perpendicular_neighbors(cur);
      if (nb.size() != 2)
        throw std::logic_error("contour: dual vertex degree != 2");
      DualVertex nxt = nb[0];
      if (used.count(nxt)) nxt = nb[1];
      if (used.count(nxt)) break;  // closed
      used.insert(nxt);
      c.cycle.push_back(nxt);
      cur = nxt;
    }
    if (used.size() != mid.size())
      throw std::logic_error("contour: dual cycle is not a single cycle");
    // counterclockwise orientation by the shoelace sign
    long long area2 = 0;
    for (size_t i = 0; i < c.cycle.size(); ++i) {
      DualVertex a = c.cycle[i], b = c.cycle[(i + 1) % c.cycle.size()];
      area2 += 1LL * a.x * b.y - 1LL * b.x * a.y;
    }
    if (area2 < 0) std::reverse(c.cycle.begin() + 1, c.cycle.end());
  }
  c.length = static_cast<int>(c.cycle.size());
  return c;
}

ShiftResult shift_configuration(const Configuration& eta, const Contour& c,
                                Site s) {
  if (l1(s) != 1) throw precondition_error("shift: s must be a unit vector");
  int w = window_halfwidth(eta);
  Configuration out(eta.region(), eta.boundary());
  for (Site p : Region::box(w).sites()) {
    if (eta.query(p) != 1) continue;
    if (c.interior.count(p))
      out.set(p + s, 1);
    else
      out.set(p, 1);
  }
  int added = 0;
  for (Site p : c.interior)
    if (!c.interior.count(p - s)) {
      out.set(p, 1);
      ++added;
    }
  // Lemma prop:shift (a): the shifted configuration stays in X0
  for (Site p : Region::box(w + 1).sites())
    if (!recovery_ok(out, p))
      throw std::logic_error("shift: result violates the recovery rule");
  return {out, added};
}

Site choose_shift(const Configuration& eta, int m) {
  Contour c = extract_contour(eta, m);
  const Site order[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};  // E, W, N, S
  for (Site s : order) {
    ShiftResult r = shift_configuration(eta, c, s);
    if (is_m_even(r.config, m)) return s;
  }
  throw std::logic_error("choose_shift: no shift yields an m-even configuration");
}

Configuration phi_map(const Configuration& eta, int m) {
  Contour c = extract_contour(eta, m);
  Site s = choose_shift(eta, m);
  return shift_configuration(eta, c, s).config;
}

Configuration random_m_odd(int m, int n, uint64_t seed, bool general) {
  if (m < 1 || n < m + 2)
    throw precondition_error("random_m_odd: need m >= 1 and n >= m + 2");
  std::mt19937_64 eng(seed);
  auto rnd = [&](int k) { return static_cast<int>(eng() % k); };
  const int w = n + 2;
  // odd seed set O covering U_{m+1}, grown within U_{n-2}
  std::set<Site> O;
  for (int x = -m - 1; x <= m + 1; ++x)
    for (int y = -m - 1; y <= m + 1; ++y)
      if (!even_site({x, y})) O.insert({x, y});
  std::vector<Site> cand;
  for (int x = -(n - 2); x <= n - 2; ++x)
    for (int y = -(n - 2); y <= n - 2; ++y)
      if (!even_site({x, y})) cand.push_back({x, y});
  std::shuffle(cand.begin(), cand.end(), eng);
  int grow = cand.empty() ? 0 : rnd(static_cast<int>(cand.size()));
  for (int k = 0; k < grow; ++k) {
    Site s = cand[k];
    for (Site o : O)
      if (l1(s, o) == 2) {
        O.insert(s);
        break;
      }
  }
  // plug single-site holes: an odd site with all four even neighbors adjacent
  // to O must belong to O
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Site> NO;
    for (Site o : O)
      for (Site d : kDirs) NO.insert(o + d);
    for (int x = -(n - 1); x <= n - 1; ++x)
      for (int y = -(n - 1); y <= n - 1; ++y) {
        Site s{x, y};
        if (even_site(s) || O.count(s)) continue;
        bool all = true;
        for (Site d : kDirs)
          if (!NO.count(s + d)) all = false;
        if (all) {
          O.insert(s);
          changed = true;
        }
      }
  }
  std::set<Site> D = O;
  for (Site o : O)
    for (Site d : kDirs) D.insert(o + d);

  Configuration cfg(Region::box(w), BoundaryRule::even());
  if (!general) {
    for (Site o : O) cfg.set(o, 1);
    for (Site s : Region::box(w).sites())
      if (!D.count(s) && omega_even(s)) cfg.set(s, 1);
    return cfg;
  }
  // omega^e beyond U_n, odd patch on D, random MIS content elsewhere
  for (Site s : Region::box(w).sites())
    if (std::max(std::abs(s.x), std::abs(s.y)) > n && omega_even(s))
      cfg.set(s, 1);
  for (Site o : O) cfg.set(o, 1);
  std::set<Site> ring;
  for (Site p : D)
    for (Site d : kDirs) {
      Site q = p + d;
      if (!D.count(q) && !even_site(q)) ring.insert(q);
    }
  std::vector<Site> free;
  for (int x = -n; x <= n; ++x)
    for (int y = -n; y <= n; ++y) {
      Site s{x, y};
      if (!D.count(s) && !ring.count(s)) free.push_back(s);
    }
  std::shuffle(free.begin(), free.end(), eng);
  for (Site s : free) {
    bool ok = true;
    for (Site d : kDirs)
      if (cfg.query(s + d) == 1) ok = false;
    if (ok) cfg.set(s, 1);
  }
  // repair remaining all-zero crosses at free or ring sites (letting the
  // agreement component grow is fine for a general instance)
  std::set<Site> repairable(free.begin(), free.end());
  repairable.insert(ring.begin(), ring.end());
  changed = true;
  while (changed) {
    changed = false;
    for (Site s : Region::box(w + 1).sites()) {
      if (cfg.query(s) != 0) continue;
      bool allzero = true;
      for (Site d : kDirs)
        if (cfg.query(s + d) == 1) allzero = false;
      if (allzero && repairable.count(s)) {
        cfg.set(s, 1);
        changed = true;
      }
    }
  }
  return cfg;
}

std::string render_contour(const Configuration& eta, int m) {
  int w = window_halfwidth(eta);
  Contour c = extract_contour(eta, m);
  std::vector<Site> rvec = odd_component(eta, m);
  std::set<Site> R(rvec.begin(), rvec.end());
  std::ostringstream os;
  os << "contour length " << c.length << ", interior " << c.interior.size()
     << " sites; legend: # occupied in R, o occupied, . empty, , empty in R\n";
  for (int y = w; y >= -w; --y) {
    for (int x = -w; x <= w; ++x) {
      Site s{x, y};
      bool occ = eta.query(s) == 1;
      bool inR = R.count(s) != 0;
      os << (occ ? (inR ? '#' : 'o') : (inR ? ',' : '.'));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mhc
