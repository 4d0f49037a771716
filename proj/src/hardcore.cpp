#include "mhc/hardcore.hpp"

#include <cmath>
#include <unordered_map>

#include "mhc/dynamics.hpp"

namespace mhc {

namespace {

int dist_to_region(Site s, const Region& r) {
  int dx = std::max({r.x0 - s.x, 0, s.x - r.x1});
  int dy = std::max({r.y0 - s.y, 0, s.y - r.y1});
  return dx + dy;
}

}  // namespace

McConditional mhc_conditional(const Region& lambda, const Configuration& omega,
                              double activity) {
  if (activity <= 0)
    throw precondition_error("mhc_conditional: activity must be > 0");
  if (lambda.is_torus())
    throw precondition_error("mhc_conditional: window regions only");
  if (lambda.area() > 49)
    throw precondition_error("mhc_conditional: region too large to enumerate");
  // the boundary configuration must satisfy the recovery rule wherever the
  // region cannot influence it
  for (int x = lambda.x0 - 3; x <= lambda.x1 + 3; ++x)
    for (int y = lambda.y0 - 3; y <= lambda.y1 + 3; ++y) {
      Site c{x, y};
      if (dist_to_region(c, lambda) == 2 && !recovery_ok(omega, c))
        throw precondition_error("mhc_conditional: omega violates X0 near the region");
    }
  McConditional out;
  out.sites = lambda.sites();
  const size_t n = out.sites.size();
  Configuration work = omega;
  std::vector<Site> centers = region_plus(work, lambda);

  // DFS over the region's sites with adjacency pruning against decided bits
  std::vector<int> decided(n, 0);
  auto neighbor_conflict = [&](size_t k) {
    Site s = out.sites[k];
    for (Site d : kDirs) {
      Site t = s + d;
      if (!lambda.contains(t)) {
        if (work.query(t) == 1) return true;
        continue;
      }
      // decided region sites precede k in row-major order
      size_t j = static_cast<size_t>(t.y - lambda.y0) * (lambda.x1 - lambda.x0 + 1) +
                 (t.x - lambda.x0);
      if (j < k && work.query(t) == 1) return true;
    }
    return false;
  };
  // maximality pruning: once (x, y) is assigned, the cross centered one row
  // below at (x, y-1) is fully decided and must satisfy the recovery rule
  auto decided_center_bad = [&](size_t k) {
    Site s = out.sites[k];
    if (s.y == lambda.y0) return false;
    return !recovery_ok(work, {s.x, s.y - 1});
  };
  uint64_t pattern = 0;
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == n) {
      for (Site c : centers)
        if (!recovery_ok(work, c)) return;
      out.patterns.push_back(pattern);
      int ones = __builtin_popcountll(pattern);
      double w = std::pow(activity, ones);
      out.weights.push_back(w);
      out.z += w;
      return;
    }
    work.set(out.sites[k], 0);
    if (!decided_center_bad(k)) self(self, k + 1);
    if (!neighbor_conflict(k)) {
      work.set(out.sites[k], 1);
      if (!decided_center_bad(k)) {
        pattern |= uint64_t{1} << k;
        self(self, k + 1);
        pattern &= ~(uint64_t{1} << k);
      }
      work.set(out.sites[k], 0);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<ParityRect> parity_rects(int m) {
  return {{-m - 1, m, -m, m},
          {-m, m + 1, -m, m},
          {-m, m, -m - 1, m},
          {-m, m, -m, m + 1}};
}

namespace {

bool agrees(const Configuration& cfg, const ParityRect& r, bool odd) {
  for (int x = r.x0; x <= r.x1; ++x)
    for (int y = r.y0; y <= r.y1; ++y) {
      int want = odd ? omega_odd({x, y}) : omega_even({x, y});
      if (cfg.query({x, y}) != want) return false;
    }
  return true;
}

}  // namespace

bool is_m_odd(const Configuration& cfg, int m) {
  for (const ParityRect& r : parity_rects(m))
    if (agrees(cfg, r, true)) return true;
  return false;
}

bool is_m_even(const Configuration& cfg, int m) {
  for (const ParityRect& r : parity_rects(m))
    if (agrees(cfg, r, false)) return true;
  return false;
}

// ---- exact column DP over the window U_n ----

namespace {

struct DpCtx {
  int n, m;
  double lambda;
  int bnd_parity;  // 0: even boundary, 1: odd
  int H;           // 2n+1 rows
  std::vector<uint32_t> masks;
  std::vector<ParityRect> rects;  // 4 odd then 4 even

  int bnd(int x, int y) const {
    return ((x + y) & 1) == bnd_parity ? 1 : 0;
  }
  int colbit(uint32_t mask, int y) const { return (mask >> (y + n)) & 1; }
  uint32_t bnd_colmask(int x) const {
    uint32_t mk = 0;
    for (int y = -n; y <= n; ++y)
      if (bnd(x, y)) mk |= 1u << (y + n);
    return mk;
  }
  bool vert_ok(int x, uint32_t mask) const {
    if (mask & (mask >> 1)) return false;
    if (colbit(mask, n) && bnd(x, n + 1)) return false;
    if (colbit(mask, -n) && bnd(x, -n - 1)) return false;
    return true;
  }
  int value(int x, int y, int xq, uint32_t cm1, uint32_t c0, uint32_t cp1) const {
    // value at (xq-1, xq, xq+1) columns cm1/c0/cp1; boundary elsewhere
    if (y < -n || y > n || x < -n || x > n) return bnd(x, y);
    if (x == xq - 1) return colbit(cm1, y);
    if (x == xq) return colbit(c0, y);
    return colbit(cp1, y);
  }
  bool centers_ok(int xq, uint32_t cm1, uint32_t c0, uint32_t cp1) const {
    for (int y = -n - 1; y <= n + 1; ++y) {
      int c = value(xq, y, xq, cm1, c0, cp1);
      int ones = value(xq + 1, y, xq, cm1, c0, cp1) +
                 value(xq - 1, y, xq, cm1, c0, cp1) +
                 value(xq, y + 1, xq, cm1, c0, cp1) +
                 value(xq, y - 1, xq, cm1, c0, cp1);
      if (c == 1 ? ones != 0 : ones == 0) return false;
    }
    return true;
  }
  bool rect_agrees_col(int x, uint32_t mask, int r) const {
    const ParityRect& rc = rects[r];
    if (x < rc.x0 || x > rc.x1) return true;
    bool odd = r < 4;
    for (int y = rc.y0; y <= rc.y1; ++y) {
      int want = odd ? (((x + y) & 1) ? 1 : 0) : (((x + y) & 1) ? 0 : 1);
      if (colbit(mask, y) != want) return false;
    }
    return true;
  }
};

}  // namespace

ParityWeights parity_weights_exact(int n, int m, double activity,
                                   Parity boundary) {
  if (m < 1 || m >= n)
    throw precondition_error("parity events need 1 <= m < n");
  if (n > kParityExactCap)
    throw precondition_error("exact parity enumeration capped at n <= 4");
  DpCtx ctx;
  ctx.n = n;
  ctx.m = m;
  ctx.lambda = activity;
  ctx.bnd_parity = boundary == Parity::Even ? 0 : 1;
  ctx.H = 2 * n + 1;
  for (uint32_t mk = 0; mk < (1u << ctx.H); ++mk)
    if ((mk & (mk >> 1)) == 0) ctx.masks.push_back(mk);
  ctx.rects = parity_rects(m);
  auto evens = parity_rects(m);
  ctx.rects.insert(ctx.rects.end(), evens.begin(), evens.end());

  // key: prev mask | cur mask | 8 agreement flags
  auto key = [&](uint32_t pm, uint32_t cm, uint32_t fl) {
    return (uint64_t(pm) << 40) | (uint64_t(cm) << 8) | fl;
  };
  std::unordered_map<uint64_t, double> dp;
  uint32_t BL = ctx.bnd_colmask(-n - 1);
  uint32_t BLL = ctx.bnd_colmask(-n - 2);
  for (uint32_t c : ctx.masks) {
    if (!ctx.vert_ok(-n, c) || (c & BL)) continue;
    if (!ctx.centers_ok(-n - 1, BLL, BL, c)) continue;
    uint32_t fl = 0;
    for (int r = 0; r < 8; ++r)
      if (ctx.rect_agrees_col(-n, c, r)) fl |= 1u << r;
    dp[key(BL, c, fl)] += std::pow(activity, __builtin_popcount(c));
  }
  for (int x = -n + 1; x <= n; ++x) {
    std::unordered_map<uint64_t, double> next;
    next.reserve(dp.size() * 2);
    for (const auto& [k, w] : dp) {
      uint32_t pm = static_cast<uint32_t>(k >> 40);
      uint32_t cm = static_cast<uint32_t>((k >> 8) & 0xffffffffu);
      uint32_t fl = static_cast<uint32_t>(k & 0xffu);
      for (uint32_t c : ctx.masks) {
        if (!ctx.vert_ok(x, c) || (c & cm)) continue;
        if (!ctx.centers_ok(x - 1, pm, cm, c)) continue;
        uint32_t nfl = fl;
        for (int r = 0; r < 8; ++r)
          if ((nfl >> r) & 1)
            if (!ctx.rect_agrees_col(x, c, r)) nfl &= ~(1u << r);
        next[key(cm, c, nfl)] += w * std::pow(activity, __builtin_popcount(c));
      }
    }
    dp = std::move(next);
  }
  uint32_t BR = ctx.bnd_colmask(n + 1);
  uint32_t BRR = ctx.bnd_colmask(n + 2);
  ParityWeights out;
  for (const auto& [k, w] : dp) {
    uint32_t pm = static_cast<uint32_t>(k >> 40);
    uint32_t cm = static_cast<uint32_t>((k >> 8) & 0xffffffffu);
    uint32_t fl = static_cast<uint32_t>(k & 0xffu);
    if (cm & BR) continue;
    if (!ctx.centers_ok(n, pm, cm, BR)) continue;
    if (!ctx.centers_ok(n + 1, cm, BR, BRR)) continue;
    out.total += w;
    if (fl & 0x0f) out.odd += w;
    if (fl & 0xf0) out.even += w;
  }
  return out;
}

ParityProbability parity_probability(int n, int m, double activity,
                                     Parity boundary, uint64_t seed,
                                     long long samples, ParityMethod method) {
  ParityProbability out;
  if (method == ParityMethod::Exact && n > kParityExactCap)
    throw precondition_error("exact parity enumeration capped at n <= 4");
  bool exact = method == ParityMethod::Exact ||
               (method == ParityMethod::Auto && n <= kParityExactCap);
  if (exact) {
    ParityWeights w = parity_weights_exact(n, m, activity, boundary);
    out.method = "exact";
    out.weight_odd = w.odd;
    out.weight_even = w.even;
    out.weight_total = w.total;
    double hom = w.odd + w.even;
    out.hom_has_mass = hom > 0;
    if (out.hom_has_mass) out.p_odd_given_hom = w.odd / hom;
    return out;
  }
  if (m < 1 || m >= n)
    throw precondition_error("parity events need 1 <= m < n");
  // Empirical: heat-bath proposal chain at large beta, projected to X0 by
  // greedy completion; samples reweighted by activity^{occupied}.
  out.method = "mcmc";
  Region window = Region::box(n);
  BoundaryRule bnd = boundary == Parity::Even ? BoundaryRule::even()
                                              : BoundaryRule::odd();
  Configuration chain = Configuration::from_rule(window, bnd);
  TokenStream stream(window, seed);
  const double beta = 2.0;
  const long long sweep = window.area();
  double w_odd = 0, w_even = 0, w_total = 0;
  for (long long s = 0; s < samples; ++s) {
    for (long long t = 0; t < sweep; ++t)
      glauber_step(chain, stream.next(), beta);
    // project: keep an independent subset, then complete greedily
    Configuration proj(window, bnd);
    for (Site site : window.sites()) {
      if (chain.query(site) != 1) continue;
      bool free = true;
      for (Site d : kDirs)
        if (proj.query(site + d) == 1) free = false;
      if (free) proj.set(site, 1);
    }
    proj = complete_to_mis(proj, window);
    double w = std::pow(activity, proj.occupied());
    w_total += w;
    bool odd = is_m_odd(proj, m), even = is_m_even(proj, m);
    if (odd) w_odd += w;
    if (even) w_even += w;
  }
  out.samples = samples;
  out.weight_odd = w_odd;
  out.weight_even = w_even;
  out.weight_total = w_total;
  out.hom_has_mass = (w_odd + w_even) > 0;
  if (out.hom_has_mass) out.p_odd_given_hom = w_odd / (w_odd + w_even);
  return out;
}

}  // namespace mhc
