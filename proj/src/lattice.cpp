#include "mhc/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace mhc {

Region Region::window(int x0, int y0, int x1, int y1) {
  if (x1 < x0 || y1 < y0) throw precondition_error("empty window region");
  Region r;
  r.kind = Kind::Window;
  r.x0 = x0;
  r.y0 = y0;
  r.x1 = x1;
  r.y1 = y1;
  return r;
}

Region Region::torus(int w, int h) {
  if (w < 2 || h < 2) throw precondition_error("torus dimensions must be >= 2");
  Region r;
  r.kind = Kind::Torus;
  r.width = w;
  r.height = h;
  r.x0 = 0;
  r.y0 = 0;
  r.x1 = w - 1;
  r.y1 = h - 1;
  return r;
}

long long Region::area() const {
  if (kind == Kind::Torus) return 1LL * width * height;
  return 1LL * (x1 - x0 + 1) * (y1 - y0 + 1);
}

bool Region::contains(Site s) const {
  if (kind == Kind::Torus) return true;
  return s.x >= x0 && s.x <= x1 && s.y >= y0 && s.y <= y1;
}

std::vector<Site> Region::sites() const {
  std::vector<Site> out;
  out.reserve(static_cast<size_t>(area()));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) out.push_back({x, y});
  return out;
}

BoundaryRule BoundaryRule::periodic(int pw, int ph, std::vector<uint8_t> bits,
                                    std::string file) {
  if (pw < 1 || ph < 1 || bits.size() != static_cast<size_t>(pw) * ph)
    throw precondition_error("periodic pattern dimensions mismatch");
  BoundaryRule r;
  r.kind = Kind::Periodic;
  r.pw = pw;
  r.ph = ph;
  r.pattern = std::move(bits);
  r.pattern_file = std::move(file);
  return r;
}

int BoundaryRule::value(Site s) const {
  switch (kind) {
    case Kind::Even:
      return omega_even(s);
    case Kind::Odd:
      return omega_odd(s);
    case Kind::Zero:
      return 0;
    case Kind::Periodic: {
      int px = ((s.x % pw) + pw) % pw;
      int py = ((s.y % ph) + ph) % ph;
      return pattern[static_cast<size_t>(py) * pw + px];
    }
  }
  return 0;
}

std::string BoundaryRule::describe() const {
  switch (kind) {
    case Kind::Even:
      return "even";
    case Kind::Odd:
      return "odd";
    case Kind::Zero:
      return "zero";
    case Kind::Periodic:
      return "periodic:" + (pattern_file.empty() ? std::string("<inline>")
                                                 : pattern_file);
  }
  return "?";
}

Configuration::Configuration(Region region, BoundaryRule boundary)
    : region_(region), boundary_(std::move(boundary)) {
  bits_.assign(static_cast<size_t>(region_.area()), 0);
}

Configuration Configuration::from_rule(Region region, BoundaryRule rule) {
  Configuration c(region, rule);
  for (Site s : region.sites()) c.set(s, rule.value(s));
  return c;
}

Site Configuration::canon(Site s) const {
  if (!region_.is_torus()) return s;
  int w = region_.width, h = region_.height;
  return {((s.x % w) + w) % w, ((s.y % h) + h) % h};
}

size_t Configuration::index(Site s) const {
  return static_cast<size_t>(s.y - region_.y0) * (region_.x1 - region_.x0 + 1) +
         (s.x - region_.x0);
}

int Configuration::query(Site s) const {
  s = canon(s);
  if (region_.is_torus()) return bits_[index(s)];
  if (region_.contains(s)) return bits_[index(s)];
  return boundary_.value(s);
}

void Configuration::set(Site s, int v) {
  s = canon(s);
  if (!region_.contains(s))
    throw precondition_error("set() outside configuration window");
  bits_[index(s)] = static_cast<uint8_t>(v != 0);
}

int Configuration::occupied(const Region& sub) const {
  int n = 0;
  for (Site s : sub.sites()) n += query(s);
  return n;
}

bool operator==(const Configuration& a, const Configuration& b) {
  return a.region_.kind == b.region_.kind && a.region_.x0 == b.region_.x0 &&
         a.region_.y0 == b.region_.y0 && a.region_.x1 == b.region_.x1 &&
         a.region_.y1 == b.region_.y1 && a.bits_ == b.bits_;
}

bool recovery_ok(const Configuration& cfg, Site i) {
  int c = cfg.query(i);
  int ones = 0;
  for (Site d : kDirs) ones += cfg.query(i + d);
  return c == 1 ? ones == 0 : ones > 0;
}

ErrorReport error_set(const Configuration& cfg, const Region& region) {
  ErrorReport rep;
  for (Site s : region.sites())
    if (!recovery_ok(cfg, s)) rep.sites.push_back(s);
  rep.count = static_cast<long long>(rep.sites.size());
  return rep;
}

std::vector<Site> region_plus(const Configuration& cfg, const Region& lambda) {
  std::vector<Site> out = lambda.sites();
  if (lambda.is_torus()) return out;  // boundary of the whole torus is empty
  for (int x = lambda.x0; x <= lambda.x1; ++x) {
    out.push_back({x, lambda.y0 - 1});
    out.push_back({x, lambda.y1 + 1});
  }
  for (int y = lambda.y0; y <= lambda.y1; ++y) {
    out.push_back({lambda.x0 - 1, y});
    out.push_back({lambda.x1 + 1, y});
  }
  (void)cfg;
  return out;
}

double hamiltonian(const Configuration& cfg, const Region& lambda,
                   double beta) {
  if (beta <= 0) throw precondition_error("hamiltonian: beta must be > 0");
  std::vector<Site> plus = region_plus(cfg, lambda);
  long long errs = 0;
  for (Site s : plus) errs += recovery_ok(cfg, s) ? 0 : 1;
  return -beta * static_cast<double>(plus.size()) + 2.0 * beta * errs;
}

bool is_independent(const Configuration& cfg, const Region& region) {
  for (Site s : region.sites()) {
    if (cfg.query(s) != 1) continue;
    for (Site d : kDirs)
      if (cfg.query(s + d) == 1) return false;
  }
  return true;
}

bool is_maximal(const Configuration& cfg, const Region& region) {
  return is_independent(cfg, region) && error_set(cfg, region).count == 0;
}

Configuration complete_to_mis(const Configuration& cfg, const Region& region,
                              const std::vector<Site>& order) {
  if (!is_independent(cfg, region))
    throw precondition_error("complete_to_mis: input is not independent");
  Configuration out = cfg;
  const std::vector<Site> seq = order.empty() ? region.sites() : order;
  for (Site s : seq) {
    if (out.query(s) != 0) continue;
    bool free = true;
    for (Site d : kDirs)
      if (out.query(s + d) == 1) {
        free = false;
        break;
      }
    if (free) out.set(s, 1);
  }
  return out;
}

Configuration repair_map(const Configuration& cfg, Site i) {
  if (recovery_ok(cfg, i))
    throw precondition_error("repair_map: site is not in the error set");
  Configuration out = cfg;
  if (out.query(i) == 0) {
    out.set(i, 1);
    return out;
  }
  out.set(i, 0);
  // step (3b), neighbors in fixed order N, E, S, W
  const Site nesw[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
  for (Site d : nesw) {
    Site j = i + d;
    if (out.query(j) == 0 && !recovery_ok(out, j)) out.set(j, 1);
  }
  return out;
}

VertexProb one_vertex_prob(const Configuration& cfg, Site i, double beta) {
  if (beta <= 0) throw precondition_error("one_vertex_prob: beta must be > 0");
  // energy of the five crosses containing i, with the bit at i forced
  auto cross_energy = [&](int bit_at_i) {
    auto val = [&](Site s) { return s == cfg.canon(i) ? bit_at_i : cfg.query(s); };
    double e = 0;
    Site centers[5] = {i, i + kDirs[0], i + kDirs[1], i + kDirs[2], i + kDirs[3]};
    for (Site c : centers) {
      int cv = val(cfg.canon(c));
      int ones = 0;
      for (Site d : kDirs) ones += val(cfg.canon(c + d));
      bool ok = cv == 1 ? ones == 0 : ones > 0;
      e += ok ? -beta : beta;
    }
    return e;
  };
  double e0 = cross_energy(0), e1 = cross_energy(1);
  // p0 = e^{-e0} / (e^{-e0} + e^{-e1})
  double p0 = 1.0 / (1.0 + std::exp(e0 - e1));
  return {p0, 1.0 - p0};
}

std::string format_configuration(const Configuration& cfg) {
  const Region& r = cfg.region();
  if (r.is_torus())
    throw precondition_error("text grid format covers window configurations");
  std::ostringstream os;
  os << "window " << r.x0 << ' ' << r.y0 << ' ' << r.x1 << ' ' << r.y1
     << " boundary=" << cfg.boundary().describe() << '\n';
  for (int y = r.y1; y >= r.y0; --y) {
    for (int x = r.x0; x <= r.x1; ++x) os << (cfg.query({x, y}) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

static BoundaryRule parse_boundary(const std::string& spec) {
  if (spec == "even") return BoundaryRule::even();
  if (spec == "odd") return BoundaryRule::odd();
  if (spec == "zero") return BoundaryRule::zero();
  if (spec.rfind("periodic:", 0) == 0) {
    std::string path = spec.substr(9);
    std::ifstream in(path);
    if (!in) throw precondition_error("cannot open boundary pattern " + path);
    std::string kw;
    int pw, ph;
    if (!(in >> kw >> pw >> ph) || kw != "periodic")
      throw precondition_error("bad periodic pattern header in " + path);
    std::vector<uint8_t> bits(static_cast<size_t>(pw) * ph, 0);
    for (int y = ph - 1; y >= 0; --y) {
      std::string row;
      if (!(in >> row) || row.size() != static_cast<size_t>(pw))
        throw precondition_error("bad periodic pattern row in " + path);
      for (int x = 0; x < pw; ++x)
        bits[static_cast<size_t>(y) * pw + x] = row[x] == '1';
    }
    return BoundaryRule::periodic(pw, ph, std::move(bits), path);
  }
  throw precondition_error("unknown boundary rule: " + spec);
}

Configuration parse_configuration(std::istream& in) {
  std::string kw;
  int x0, y0, x1, y1;
  std::string bnd;
  if (!(in >> kw >> x0 >> y0 >> x1 >> y1 >> bnd) || kw != "window" ||
      bnd.rfind("boundary=", 0) != 0)
    throw precondition_error("bad configuration header");
  Configuration cfg(Region::window(x0, y0, x1, y1),
                    parse_boundary(bnd.substr(9)));
  for (int y = y1; y >= y0; --y) {
    std::string row;
    if (!(in >> row) || row.size() != static_cast<size_t>(x1 - x0 + 1))
      throw precondition_error("bad configuration row");
    for (int x = x0; x <= x1; ++x)
      cfg.set({x, y}, row[static_cast<size_t>(x - x0)] == '1');
  }
  return cfg;
}

Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open " + path);
  return parse_configuration(in);
}

}  // namespace mhc
