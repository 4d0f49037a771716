#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhc {

// Thrown on violated user-facing preconditions (CLI maps these to exit 2).
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Site {
  int x = 0;
  int y = 0;
  friend bool operator==(Site a, Site b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Site a, Site b) { return !(a == b); }
  friend bool operator<(Site a, Site b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
  Site operator+(Site o) const { return {x + o.x, y + o.y}; }
  Site operator-(Site o) const { return {x - o.x, y - o.y}; }
};

inline int l1(Site a, Site b = {0, 0}) {
  int dx = a.x - b.x, dy = a.y - b.y;
  return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

inline constexpr Site kDirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

// The five-site plus shape centered at a site: the interaction support of
// the recovery rule.
struct Cross {
  Site center;
  std::array<Site, 5> sites() const {
    return {center, center + kDirs[0], center + kDirs[1], center + kDirs[2],
            center + kDirs[3]};
  }
  bool contains(Site s) const { return s == center || l1(s, center) == 1; }
};

// Checkerboard parities: even sites are those with x+y even.
inline bool even_site(Site s) { return ((s.x + s.y) & 1) == 0; }
inline int omega_even(Site s) { return even_site(s) ? 1 : 0; }
inline int omega_odd(Site s) { return even_site(s) ? 0 : 1; }

struct Region {
  enum class Kind { Window, Torus };
  Kind kind = Kind::Window;
  // window bounds, inclusive
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  // torus dimensions
  int width = 0, height = 0;

  static Region window(int x0, int y0, int x1, int y1);
  // centered square window {-n..n}^2
  static Region box(int n) { return window(-n, -n, n, n); }
  static Region torus(int w, int h);

  bool is_torus() const { return kind == Kind::Torus; }
  long long area() const;
  bool contains(Site s) const;
  std::vector<Site> sites() const;  // row-major: y outer (ascending), x inner
};

struct BoundaryRule {
  enum class Kind { Even, Odd, Zero, Periodic };
  Kind kind = Kind::Even;
  // periodic pattern, row-major pw x ph, anchored at (0,0)
  int pw = 0, ph = 0;
  std::vector<uint8_t> pattern;
  std::string pattern_file;  // remembered for serialization

  static BoundaryRule even() { return {}; }
  static BoundaryRule odd() { return {Kind::Odd, 0, 0, {}, {}}; }
  static BoundaryRule zero() { return {Kind::Zero, 0, 0, {}, {}}; }
  static BoundaryRule periodic(int pw, int ph, std::vector<uint8_t> bits,
                               std::string file = {});

  int value(Site s) const;
  std::string describe() const;
};

// A finite bit window (or torus) with a total query: inside the window the
// stored bit, outside the boundary rule's value. Torus queries wrap.
class Configuration {
 public:
  Configuration() : Configuration(Region::box(0), BoundaryRule::zero()) {}
  Configuration(Region region, BoundaryRule boundary);

  // window filled with the boundary rule's own pattern
  static Configuration from_rule(Region region, BoundaryRule rule);

  const Region& region() const { return region_; }
  const BoundaryRule& boundary() const { return boundary_; }

  bool inside(Site s) const { return region_.contains(s); }
  // wraps torus coordinates; identity on windows
  Site canon(Site s) const;
  int query(Site s) const;
  void set(Site s, int v);

  int occupied(const Region& sub) const;  // # of 1s among sub's sites
  int occupied() const { return occupied(region_); }

  friend bool operator==(const Configuration& a, const Configuration& b);

 private:
  Region region_;
  BoundaryRule boundary_;
  std::vector<uint8_t> bits_;
  size_t index(Site s) const;
};

struct ErrorReport {
  std::vector<Site> sites;
  long long count = 0;
};

// Recovery rule at the cross of i: a 1 must have four 0 neighbors, a 0 must
// have at least one 1 neighbor.
bool recovery_ok(const Configuration& cfg, Site i);

// Sites of `region` violating the recovery rule.
ErrorReport error_set(const Configuration& cfg, const Region& region);

// Lambda u Lambda^c-boundary; on tori the boundary is empty.
std::vector<Site> region_plus(const Configuration& cfg, const Region& lambda);

// -beta |Lambda^+| + 2 beta eps(Lambda^+); rejects beta <= 0.
double hamiltonian(const Configuration& cfg, const Region& lambda, double beta);

bool is_independent(const Configuration& cfg, const Region& region);
bool is_maximal(const Configuration& cfg, const Region& region);

// Greedy completion in `order` (default row-major); input must be independent.
Configuration complete_to_mis(const Configuration& cfg, const Region& region,
                              const std::vector<Site>& order = {});

// One application of the local repair map f_i; i must be in error.
Configuration repair_map(const Configuration& cfg, Site i);

struct VertexProb {
  double p0 = 0.5;
  double p1 = 0.5;
};

// Heat-bath conditional at site i from the five crosses containing i.
VertexProb one_vertex_prob(const Configuration& cfg, Site i, double beta);

// Text grid serialization.
//   window x0 y0 x1 y1 boundary=<even|odd|zero|periodic:file>
// followed by rows of 0/1 characters, top row (y = y1) first.
std::string format_configuration(const Configuration& cfg);
Configuration parse_configuration(std::istream& in);
Configuration load_configuration(const std::string& path);

}  // namespace mhc
