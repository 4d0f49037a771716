#include "mhc/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace mhc {

namespace {

std::vector<uint32_t> column_masks(int m) {
  std::vector<uint32_t> out;
  for (uint32_t x = 0; x < (1u << m); ++x)
    if ((x & (x >> 1)) == 0) out.push_back(x);
  return out;
}

// zeros of col with no vertical 1-neighbor inside col
uint32_t lonely_zeros(uint32_t col, int m) {
  uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
  uint32_t up = (col << 1) & full;
  uint32_t dn = col >> 1;
  return full & ~col & ~up & ~dn;
}

int popcount(uint32_t x) { return __builtin_popcount(x); }

}  // namespace

std::vector<TransferState> build_states(int m) {
  if (m < 1 || m > kMaxStripWidth)
    throw precondition_error("build_states: m out of range [1,20]");
  std::vector<TransferState> out;
  auto cols = column_masks(m);
  for (uint32_t L : cols)
    for (uint32_t R : cols)
      if ((L & R) == 0) out.push_back({L, R});
  // cols is ascending, so the double loop is already lexicographic on (L,R)
  return out;
}

std::vector<std::vector<int>> StripTransfer::dense() const {
  std::vector<std::vector<int>> a(dimension(), std::vector<int>(dimension(), 0));
  for (size_t i = 0; i < dimension(); ++i)
    for (uint32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      a[i][col_idx[k]] = 1;
  return a;
}

StripTransfer build_transfer(int m, std::optional<double> lambda) {
  if (lambda && *lambda <= 0)
    throw precondition_error("build_transfer: lambda must be > 0");
  StripTransfer t;
  t.m = m;
  t.lambda = lambda;
  t.states = build_states(m);
  auto cols = column_masks(m);
  t.is_left.resize(t.states.size());
  t.is_right.resize(t.states.size());
  for (size_t i = 0; i < t.states.size(); ++i) {
    auto [L, R] = t.states[i];
    t.is_left[i] = (lonely_zeros(L, m) & ~R) == 0;
    t.is_right[i] = (lonely_zeros(R, m) & ~L) == 0;
  }
  // index of (L,R) for successor lookup
  std::unordered_map<uint64_t, uint32_t> index;
  index.reserve(t.states.size() * 2);
  for (size_t i = 0; i < t.states.size(); ++i)
    index[(uint64_t(t.states[i].left) << 32) | t.states[i].right] =
        static_cast<uint32_t>(i);
  t.row_ptr.assign(t.states.size() + 1, 0);
  for (size_t i = 0; i < t.states.size(); ++i) {
    auto [L, R] = t.states[i];
    uint32_t need = lonely_zeros(R, m);  // middle column zeros needing L or C
    t.row_ptr[i + 1] = t.row_ptr[i];
    for (uint32_t C : cols) {
      if (C & R) continue;
      if (need & ~(L | C)) continue;
      t.col_idx.push_back(index[(uint64_t(R) << 32) | C]);
      if (lambda) t.weight.push_back(std::pow(*lambda, popcount(C)));
      ++t.row_ptr[i + 1];
    }
  }
  return t;
}

mpz_class count_mis(int m, int n) {
  if (n < 2) throw precondition_error("count_mis: n must be >= 2");
  StripTransfer t = build_transfer(m);
  std::vector<mpz_class> v(t.dimension());
  for (size_t i = 0; i < t.dimension(); ++i) v[i] = t.is_left[i] ? 1 : 0;
  std::vector<mpz_class> w(t.dimension());
  for (int step = 0; step < n - 2; ++step) {
    for (auto& x : w) x = 0;
    for (size_t i = 0; i < t.dimension(); ++i) {
      if (v[i] == 0) continue;
      for (uint32_t k = t.row_ptr[i]; k < t.row_ptr[i + 1]; ++k)
        w[t.col_idx[k]] += v[i];
    }
    std::swap(v, w);
  }
  mpz_class total = 0;
  for (size_t i = 0; i < t.dimension(); ++i)
    if (t.is_right[i]) total += v[i];
  return total;
}

double log2_mpz(const mpz_class& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return static_cast<double>(exp) + std::log2(d);
}

double h0_lower_from_count(const mpz_class& count, int m, int n) {
  return log2_mpz(count) / (static_cast<double>(m + 1) * (n + 1));
}

double h0_lower(int m, int n) {
  return h0_lower_from_count(count_mis(m, n), m, n);
}

namespace {

// 2-row strips of width n with no adjacent 1s
std::vector<SeamStrip> seam_strips(int n) {
  std::vector<SeamStrip> out;
  auto rows = column_masks(n);  // same predicate, horizontal direction
  for (uint32_t a : rows)
    for (uint32_t b : rows)
      if ((a & b) == 0) out.push_back({a, b});
  return out;
}

uint32_t seam_key(uint32_t mask, int n) {
  // two leftmost and two rightmost columns
  uint32_t lo = mask & 3u;
  uint32_t hi = (mask >> (n - 2)) & 3u;
  return lo | (hi << 2);
}

}  // namespace

bool seam_strip_extends(SeamStrip s, SeamStrip t, int n) {
  if (s.top != t.bottom) return false;
  uint32_t full = (1u << n) - 1;
  uint32_t interior = full & ~1u & ~(1u << (n - 1));
  uint32_t mid = s.top;
  uint32_t ok = s.bottom | t.top | ((mid << 1) & full) | (mid >> 1);
  return (interior & ~mid & ~ok) == 0;
}

SeamTransfer build_two_seam(int p) {
  if (p < 2 || p > kMaxSeamHalfWidth)
    throw precondition_error("build_two_seam: p out of range [2,8]");
  const int n = p + 2;
  SeamTransfer t;
  t.p = p;
  auto strips = seam_strips(n);
  // states: pairs of strips agreeing on the four seam columns; at p = 2 the
  // seam covers the whole strip, so u == v.
  std::vector<SeamState> raw;
  for (const SeamStrip& u : strips)
    for (const SeamStrip& v : strips) {
      if (seam_key(u.top, n) != seam_key(v.top, n)) continue;
      if (seam_key(u.bottom, n) != seam_key(v.bottom, n)) continue;
      raw.push_back({u, v});
    }
  // successor candidates grouped by the bottom row pair
  auto key = [&](const SeamState& s) {
    return (uint64_t(s.u.bottom) << 32) | s.v.bottom;
  };
  std::unordered_map<uint64_t, std::vector<uint32_t>> by_bottom;
  for (uint32_t i = 0; i < raw.size(); ++i)
    by_bottom[key(raw[i])].push_back(i);

  std::vector<uint32_t> row_ptr(raw.size() + 1, 0), col_idx;
  for (uint32_t i = 0; i < raw.size(); ++i) {
    row_ptr[i + 1] = row_ptr[i];
    auto it = by_bottom.find((uint64_t(raw[i].u.top) << 32) | raw[i].v.top);
    if (it == by_bottom.end()) continue;
    for (uint32_t j : it->second) {
      if (!seam_strip_extends(raw[i].u, raw[j].u, n)) continue;
      if (!seam_strip_extends(raw[i].v, raw[j].v, n)) continue;
      col_idx.push_back(j);
      ++row_ptr[i + 1];
    }
  }
  // trim states that cannot occur in a tall configuration (no successors or
  // no predecessors, iterated); the all-zero pair is removed here.
  std::vector<char> alive(raw.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> indeg(raw.size(), 0), outdeg(raw.size(), 0);
    for (uint32_t i = 0; i < raw.size(); ++i) {
      if (!alive[i]) continue;
      for (uint32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        if (!alive[col_idx[k]]) continue;
        ++outdeg[i];
        ++indeg[col_idx[k]];
      }
    }
    for (uint32_t i = 0; i < raw.size(); ++i)
      if (alive[i] && (indeg[i] == 0 || outdeg[i] == 0)) {
        alive[i] = 0;
        changed = true;
      }
  }
  std::vector<uint32_t> remap(raw.size(), UINT32_MAX);
  for (uint32_t i = 0; i < raw.size(); ++i)
    if (alive[i]) {
      remap[i] = static_cast<uint32_t>(t.states.size());
      t.states.push_back(raw[i]);
    }
  t.row_ptr.assign(t.states.size() + 1, 0);
  for (uint32_t i = 0; i < raw.size(); ++i) {
    if (!alive[i]) continue;
    uint32_t ni = remap[i];
    t.row_ptr[ni + 1] = t.row_ptr[ni];
    for (uint32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      if (alive[col_idx[k]]) {
        t.col_idx.push_back(remap[col_idx[k]]);
        ++t.row_ptr[ni + 1];
      }
  }
  return t;
}

namespace {

struct CsrView {
  const std::vector<uint32_t>& row_ptr;
  const std::vector<uint32_t>& col_idx;
  const std::vector<double>* weight;  // null => unit weights
};

void matvec(const CsrView& a, const std::vector<double>& x,
            std::vector<double>& y) {
  std::fill(y.begin(), y.end(), 0.0);
  size_t nrows = a.row_ptr.size() - 1;
  for (size_t i = 0; i < nrows; ++i) {
    double xi = x[i];
    if (xi == 0) continue;
    for (uint32_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      y[a.col_idx[k]] += a.weight ? xi * (*a.weight)[k] : xi;
  }
}

PowerResult power_iterate(const CsrView& a, size_t dim, double tol,
                          int max_iters, const std::vector<double>* start) {
  PowerResult res;
  std::vector<double> v(dim, 1.0), w(dim);
  if (start) {
    if (start->size() != dim)
      throw precondition_error("power iteration: start vector dimension");
    v = *start;
  }
  double prev_ratio = 0, prev_est = 0;
  for (int it = 1; it <= max_iters; ++it) {
    matvec(a, v, w);
    double n2 = 0;
    for (double x : w) n2 += x * x;
    double norm = std::sqrt(n2);
    if (norm == 0) {
      res.iterations = it;
      return res;  // nilpotent; lambda_max = 0
    }
    for (double& x : w) x /= norm;
    double ratio = norm;  // ||A v|| with ||v|| = 1
    // geometric mean of consecutive ratios guards against period-2 behavior
    double est = prev_ratio > 0 ? std::sqrt(ratio * prev_ratio) : ratio;
    res.iterations = it;
    if (prev_est > 0 && std::abs(est - prev_est) <= tol * std::max(1.0, est)) {
      res.lambda_max = est;
      res.converged = true;
      return res;
    }
    prev_est = est;
    prev_ratio = ratio;
    std::swap(v, w);
  }
  res.lambda_max = prev_est;
  res.converged = false;
  return res;
}

}  // namespace

PowerResult power_iteration_csr(const std::vector<uint32_t>& row_ptr,
                                const std::vector<uint32_t>& col_idx,
                                const std::vector<double>* weights, double tol,
                                int max_iters,
                                const std::vector<double>* start) {
  CsrView view{row_ptr, col_idx, weights};
  return power_iterate(view, row_ptr.size() - 1, tol, max_iters, start);
}

PowerResult h0_upper(int p, double tol, int max_iters,
                     const std::vector<double>* start) {
  if (tol <= 0) throw precondition_error("h0_upper: tol must be > 0");
  SeamTransfer t = build_two_seam(p);
  CsrView view{t.row_ptr, t.col_idx, nullptr};
  PowerResult res = power_iterate(view, t.dimension(), tol, max_iters, start);
  res.value = std::log2(res.lambda_max) / (2.0 * p);
  return res;
}

DensityResult cylinder_density(int m, double lambda, double h, double tol) {
  if (lambda <= 0) throw precondition_error("cylinder_density: lambda > 0");
  if (h <= 0 || h > 1e-2)
    throw precondition_error("cylinder_density: relative step in (0, 1e-2]");
  auto lam_max = [&](double l) {
    StripTransfer t = build_transfer(m, l);
    CsrView view{t.row_ptr, t.col_idx, &t.weight};
    return power_iterate(view, t.dimension(), tol, 100000, nullptr);
  };
  DensityResult out;
  PowerResult plus = lam_max(lambda * std::exp(h));
  PowerResult minus = lam_max(lambda * std::exp(-h));
  out.lambda_max_plus = plus.lambda_max;
  out.lambda_max_minus = minus.lambda_max;
  out.ill_conditioned = !plus.converged || !minus.converged ||
                        plus.lambda_max <= 0 || minus.lambda_max <= 0;
  if (!out.ill_conditioned)
    out.density =
        (std::log(plus.lambda_max) - std::log(minus.lambda_max)) / (2 * h) / m;
  return out;
}

}  // namespace mhc
