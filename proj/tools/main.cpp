#include <unistd.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mhc/contours.hpp"
#include "mhc/dobrushin.hpp"
#include "mhc/dynamics.hpp"
#include "mhc/geometry.hpp"
#include "mhc/hardcore.hpp"
#include "mhc/lattice.hpp"
#include "mhc/transfer.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "mhc 0.1.0";

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Emitter {
  std::string out_path;       // empty -> stdout
  std::string manifest_path;  // empty -> stderr
  std::string subcommand;
  json params = json::object();
  uint64_t seed = 0;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void write(const std::string& payload) const {
    if (out_path.empty()) {
      std::cout << payload;
      if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    } else {
      std::ofstream f(out_path);
      if (!f) throw mhc::precondition_error("cannot open --out " + out_path);
      f << payload;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    json manifest = {{"subcommand", subcommand},
                     {"params", params},
                     {"seed", seed},
                     {"version", kVersion},
                     {"wall_ms", ms},
                     {"output_digest", fnv1a(payload)}};
    if (manifest_path.empty())
      std::cerr << manifest.dump() << '\n';
    else {
      std::ofstream f(manifest_path);
      f << manifest.dump() << '\n';
    }
  }

  void emit(const json& j) const {
    bool tty = out_path.empty() && isatty(1);
    write(j.dump(tty ? 2 : -1));
  }
};

mhc::BoundaryRule boundary_from_name(const std::string& name) {
  if (name == "even") return mhc::BoundaryRule::even();
  if (name == "odd") return mhc::BoundaryRule::odd();
  if (name == "zero") return mhc::BoundaryRule::zero();
  throw mhc::precondition_error("unknown boundary: " + name);
}

struct Grid {
  double lo = 0, hi = 0, step = 0;
};

Grid parse_grid(const std::string& spec) {
  Grid g;
  char c1, c2;
  std::istringstream is(spec);
  if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' ||
      g.step <= 0)
    throw mhc::precondition_error("bad grid spec (want lo:hi:step): " + spec);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal hard-core / recoverable-system lattice toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value defaults file");

  Emitter em;
  uint64_t seed = 1;
  int threads = 1;
  app.add_option("--seed", seed, "global RNG seed")->envname("MHC_SEED");
  app.add_option("--threads", threads,
                 "worker threads (affects wall time only)")
      ->envname("MHC_THREADS");
  (void)threads;  // current implementation is single-threaded throughout
  app.add_option("--out", em.out_path, "write payload to file instead of stdout");
  app.add_option("--manifest", em.manifest_path,
                 "write the run manifest to a file instead of stderr");

  // ---- transfer ----
  auto* transfer = app.add_subcommand("transfer", "transfer-matrix computations");
  transfer->require_subcommand(1);
  int t_m = 2, t_n = 7, t_p = 7;
  double t_tol = 1e-10, t_lambda = 1.0, t_h = 1e-4;
  int t_maxit = 100000;
  auto* t_count = transfer->add_subcommand("count", "exact MIS count on a grid");
  t_count->add_option("--m", t_m)->required();
  t_count->add_option("--n", t_n)->required();
  auto* t_lower = transfer->add_subcommand("h0-lower", "entropy lower bound");
  t_lower->add_option("--m", t_m)->required();
  t_lower->add_option("--n", t_n)->required();
  auto* t_upper = transfer->add_subcommand("h0-upper", "two-seam upper bound");
  t_upper->add_option("--p", t_p)->required();
  t_upper->add_option("--tol", t_tol);
  t_upper->add_option("--max-iters", t_maxit);
  auto* t_dens = transfer->add_subcommand("density", "strip density at activity");
  t_dens->add_option("--m", t_m)->required();
  t_dens->add_option("--lambda", t_lambda)->required();
  t_dens->add_option("--step", t_h, "relative central-difference step");

  // ---- dobrushin ----
  auto* dob = app.add_subcommand("dobrushin", "uniqueness-criterion constants");
  dob->require_subcommand(1);
  double d_beta = 0.049, d_lo = 0.04, d_hi = 0.06, d_tol = 1e-6;
  auto* d_alpha = dob->add_subcommand("alpha", "influence sum at beta");
  d_alpha->add_option("--beta", d_beta)->required();
  auto* d_b0 = dob->add_subcommand("beta0", "bisection root of alpha = 1");
  d_b0->add_option("--lo", d_lo);
  d_b0->add_option("--hi", d_hi);
  d_b0->add_option("--tol", d_tol);

  // ---- dynamics ----
  auto* dyn = app.add_subcommand("dynamics", "Glauber dynamics and exact Gibbs");
  dyn->require_subcommand(1);
  int y_w = 8, y_h = 8, y_seeds = 100;
  double y_beta = 0.01, y_eps = 0.05, y_h0 = 0.3012;
  long long y_tmax = 0;
  std::string y_grid = "0:0.5:0.005", y_bnd = "even";
  auto* y_mix = dyn->add_subcommand("mix", "empirical grand-coupling coalescence");
  y_mix->add_option("--width", y_w);
  y_mix->add_option("--height", y_h);
  y_mix->add_option("--beta", y_beta)->required();
  y_mix->add_option("--eps", y_eps);
  y_mix->add_option("--seeds", y_seeds);
  y_mix->add_option("--t-max", y_tmax, "0 = 4x the mixing bound");
  y_mix->add_option("--boundary", y_bnd);
  auto* y_err = dyn->add_subcommand("error-prob", "exact error-probability sandwich");
  y_err->add_option("--beta", y_beta)->required();
  y_err->add_option("--width", y_w)->default_val(4);
  y_err->add_option("--height", y_h)->default_val(4);
  y_err->add_option("--boundary", y_bnd);
  auto* y_ent = dyn->add_subcommand("entropy-bound", "positive-temperature bound curve");
  y_ent->add_option("--beta-grid", y_grid);
  y_ent->add_option("--h0", y_h0);

  // ---- hardcore ----
  auto* hc = app.add_subcommand("hardcore", "maximal hard-core measure");
  hc->require_subcommand(1);
  double h_lambda = 1.0;
  int h_n = 4, h_m = 2;
  long long h_samples = 20000;
  std::string h_bnd = "even", h_cfg;
  bool h_mcmc = false;
  std::vector<int> h_window{-1, -1, 1, 1};
  auto* h_cond = hc->add_subcommand("conditional", "exact finite-volume conditional");
  h_cond->add_option("--lambda", h_lambda)->required();
  h_cond->add_option("--window", h_window, "x0 y0 x1 y1")->expected(4);
  h_cond->add_option("--boundary", h_bnd);
  h_cond->add_option("--cfg", h_cfg, "configuration file for the exterior");
  auto* h_par = hc->add_subcommand("parity", "P(O_m | O_m u E_m)");
  h_par->add_option("--n", h_n)->required();
  h_par->add_option("--m", h_m)->required();
  h_par->add_option("--lambda", h_lambda)->required();
  h_par->add_option("--boundary", h_bnd)->required();
  h_par->add_flag("--mcmc", h_mcmc, "force the empirical sampler");
  h_par->add_option("--samples", h_samples);

  // ---- contours ----
  auto* con = app.add_subcommand("contours", "contour and shift verification");
  con->require_subcommand(1);
  int c_n = 5, c_m = 2, c_samples = 100;
  bool c_patch_only = false;
  auto* c_verify = con->add_subcommand("verify", "property campaign on random m-odd instances");
  c_verify->add_option("--n", c_n)->required();
  c_verify->add_option("--m", c_m)->required();
  c_verify->add_option("--samples", c_samples);
  c_verify->add_flag("--patch-only", c_patch_only);
  std::string c_cfg;
  auto* c_show = con->add_subcommand("show", "render one instance");
  c_show->add_option("--n", c_n);
  c_show->add_option("--m", c_m)->required();
  c_show->add_option("--cfg", c_cfg, "render a configuration from a grid file");

  // ---- geometry ----
  auto* geo = app.add_subcommand("geometry", "ground states, Delaunay, Peierls");
  geo->require_subcommand(1);
  int g_samples = 200;
  bool g_csv = false;
  auto* g_gs = geo->add_subcommand("ground-states", "periodic ground states");
  auto* g_tab = geo->add_subcommand("triangle-table", "candidate triangle exhaustion");
  g_tab->add_flag("--csv", g_csv);
  auto* g_pei = geo->add_subcommand("peierls", "perturbation campaign");
  std::vector<int> g_torus{30, 30};
  std::vector<int> g_offset{0, 0};
  g_pei->add_option("--samples", g_samples);
  g_pei->add_option("--torus", g_torus, "width height")->expected(2);
  g_pei->add_option("--block-offset", g_offset, "block grid alignment")->expected(2);

  // ---- report ----
  auto* rep = app.add_subcommand("report", "bundled result files");
  rep->require_subcommand(1);
  std::string r_bgrid = "0:0.5:0.005", r_lgrid = "0.05:8:25";
  int r_m = 12, r_n = 130, r_p = 7, r_samples = 200, r_dm = 12;
  bool r_log = true;
  auto* r_fig3 = rep->add_subcommand("fig3", "entropy bound curve CSV");
  r_fig3->add_option("--beta-grid", r_bgrid);
  auto* r_h0 = rep->add_subcommand("h0", "both entropy bounds");
  r_h0->add_option("--m", r_m);
  r_h0->add_option("--n", r_n);
  r_h0->add_option("--p", r_p);
  auto* r_dc = rep->add_subcommand("density-curve", "density vs activity CSV");
  r_dc->add_option("--lambda-grid", r_lgrid, "lo:hi:steps (log-spaced)");
  r_dc->add_option("--m", r_dm);
  r_dc->add_flag("--log,!--linear", r_log);
  auto* r_ps = rep->add_subcommand("peierls-summary", "campaign pass rate");
  r_ps->add_option("--samples", r_samples);

  // let global flags (--seed, --out, ...) appear after any subcommand
  auto enable_fallthrough = [](auto&& self, CLI::App* a) -> void {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough();
      self(self, sub);
    }
  };
  enable_fallthrough(enable_fallthrough, &app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  em.seed = seed;
  em.params["seed"] = seed;

  try {
    using namespace mhc;
    if (t_count->parsed()) {
      em.subcommand = "transfer count";
      em.params.update({{"m", t_m}, {"n", t_n}});
      mpz_class c = count_mis(t_m, t_n);
      em.emit({{"value", c.get_str()},
               {"m", t_m},
               {"n", t_n},
               {"exact", true},
               {"method", "exact"},
               {"tolerance", 0.0}});
    } else if (t_lower->parsed()) {
      em.subcommand = "transfer h0-lower";
      em.params.update({{"m", t_m}, {"n", t_n}});
      mpz_class c = count_mis(t_m, t_n);
      em.emit({{"value", h0_lower_from_count(c, t_m, t_n)},
               {"log2_count", log2_mpz(c)},
               {"m", t_m},
               {"n", t_n},
               {"exact", true},
               {"method", "exact"},
               {"tolerance", 0.0}});
    } else if (t_upper->parsed()) {
      em.subcommand = "transfer h0-upper";
      em.params.update({{"p", t_p}, {"tol", t_tol}, {"max_iters", t_maxit}});
      PowerResult r = h0_upper(t_p, t_tol, t_maxit);
      json j = {{"value", r.value},          {"lambda_max", r.lambda_max},
                {"p", t_p},                  {"iterations", r.iterations},
                {"converged", r.converged},  {"exact", false},
                {"method", "iterative"},     {"tolerance", t_tol}};
      if (!r.converged) j["warning"] = "iteration limit reached; last estimate reported";
      em.emit(j);
    } else if (t_dens->parsed()) {
      em.subcommand = "transfer density";
      em.params.update({{"m", t_m}, {"lambda", t_lambda}, {"step", t_h}});
      DensityResult r = cylinder_density(t_m, t_lambda, t_h);
      if (r.ill_conditioned)
        throw std::logic_error("density: eigenvalue estimates failed tolerance");
      em.emit({{"value", r.density},
               {"m", t_m},
               {"lambda", t_lambda},
               {"exact", false},
               {"method", "iterative"},
               {"tolerance", t_h}});
    } else if (d_alpha->parsed()) {
      em.subcommand = "dobrushin alpha";
      em.params.update({{"beta", d_beta}});
      InfluenceTable t = compute_influences(d_beta);
      json per = json::array();
      const auto& offs = influence_offsets();
      for (int k = 0; k < 12; ++k)
        per.push_back({{"dx", offs[k].x}, {"dy", offs[k].y}, {"influence", t.entries[k]}});
      em.emit({{"value", t.alpha},
               {"beta", d_beta},
               {"per_offset", per},
               {"exact", true},
               {"method", "exact"},
               {"tolerance", 0.0}});
    } else if (d_b0->parsed()) {
      em.subcommand = "dobrushin beta0";
      em.params.update({{"lo", d_lo}, {"hi", d_hi}, {"tol", d_tol}});
      double b0 = find_beta0(d_lo, d_hi, d_tol);
      em.emit({{"value", b0},
               {"lo", d_lo},
               {"hi", d_hi},
               {"alpha_at_root", dobrushin_alpha(b0)},
               {"exact", false},
               {"method", "iterative"},
               {"tolerance", d_tol}});
    } else if (y_mix->parsed()) {
      em.subcommand = "dynamics mix";
      em.params.update({{"width", y_w}, {"height", y_h}, {"beta", y_beta},
                        {"eps", y_eps}, {"seeds", y_seeds}, {"boundary", y_bnd}});
      Region lam = Region::window(0, 0, y_w - 1, y_h - 1);
      BoundaryRule b = boundary_from_name(y_bnd);
      long long bound = mixing_bound(lam.area(), y_beta, y_eps);
      long long tmax = y_tmax > 0 ? y_tmax : 4 * bound;
      Configuration x = extreme_start_even(lam, b), y = extreme_start_odd(lam, b);
      std::vector<long long> times;
      int timeouts = 0;
      for (int s = 0; s < y_seeds; ++s) {
        auto t = coalescence_time(x, y, lam, y_beta, seed + s, tmax);
        if (t)
          times.push_back(*t);
        else
          ++timeouts;
      }
      std::sort(times.begin(), times.end());
      json j = {{"mixing_bound", bound},
                {"seeds", y_seeds},
                {"timeouts", timeouts},
                {"t_max", tmax},
                {"times", times},
                {"method", "empirical"},
                {"exact", false},
                {"tolerance", nullptr}};
      if (!times.empty()) {
        j["median"] = times[times.size() / 2];
        j["value"] = times[times.size() / 2];
        j["max"] = times.back();
      }
      em.emit(j);
    } else if (y_err->parsed()) {
      em.subcommand = "dynamics error-prob";
      em.params.update({{"beta", y_beta}, {"width", y_w}, {"height", y_h},
                        {"boundary", y_bnd}});
      Region lam = Region::window(0, 0, y_w - 1, y_h - 1);
      Site center{(y_w - 1) / 2, (y_h - 1) / 2};
      ErrorProbBounds r =
          error_prob_bounds(lam, y_beta, center, boundary_from_name(y_bnd));
      em.emit({{"value", r.exact},
               {"lower", r.lower},
               {"upper", r.upper},
               {"site", {center.x, center.y}},
               {"beta", y_beta},
               {"exact", true},
               {"method", "exact"},
               {"tolerance", 0.0}});
    } else if (y_ent->parsed()) {
      em.subcommand = "dynamics entropy-bound";
      em.params.update({{"beta_grid", y_grid}, {"h0", y_h0}});
      Grid g = parse_grid(y_grid);
      std::ostringstream csv;
      csv << "beta,bound,branch\n";
      for (double b = g.lo; b <= g.hi + 1e-12; b += g.step) {
        EntropyBound e = entropy_lower_bound(b, y_h0);
        csv << b << ',' << e.value << ',' << e.branch << '\n';
      }
      em.write(csv.str());
    } else if (h_cond->parsed()) {
      em.subcommand = "hardcore conditional";
      em.params.update({{"lambda", h_lambda},
                        {"window", h_window},
                        {"boundary", h_bnd}});
      Region lam = Region::window(h_window[0], h_window[1], h_window[2], h_window[3]);
      Configuration omega =
          h_cfg.empty()
              ? Configuration::from_rule(
                    Region::window(h_window[0] - 3, h_window[1] - 3,
                                   h_window[2] + 3, h_window[3] + 3),
                    boundary_from_name(h_bnd))
              : load_configuration(h_cfg);
      McConditional mc = mhc_conditional(lam, omega, h_lambda);
      json pats = json::array();
      for (size_t k = 0; k < mc.patterns.size(); ++k) {
        json sites = json::array();
        for (size_t b = 0; b < mc.sites.size(); ++b)
          if ((mc.patterns[k] >> b) & 1)
            sites.push_back({mc.sites[b].x, mc.sites[b].y});
        pats.push_back({{"occupied", sites}, {"probability", mc.probability(k)}});
      }
      em.emit({{"z", mc.z},
               {"support_size", mc.patterns.size()},
               {"patterns", pats},
               {"lambda", h_lambda},
               {"exact", true},
               {"method", "exact"},
               {"tolerance", 0.0}});
    } else if (h_par->parsed()) {
      em.subcommand = "hardcore parity";
      em.params.update({{"n", h_n}, {"m", h_m}, {"lambda", h_lambda},
                        {"boundary", h_bnd}, {"samples", h_samples}});
      Parity par = h_bnd == "odd" ? Parity::Odd : Parity::Even;
      if (h_bnd != "odd" && h_bnd != "even")
        throw precondition_error("parity: boundary must be even or odd");
      ParityProbability r = parity_probability(
          h_n, h_m, h_lambda, par, seed, h_samples,
          h_mcmc ? ParityMethod::Mcmc : ParityMethod::Auto);
      em.emit({{"value", r.p_odd_given_hom},
               {"defined", r.hom_has_mass},
               {"weight_odd", r.weight_odd},
               {"weight_even", r.weight_even},
               {"weight_total", r.weight_total},
               {"n", h_n},
               {"m", h_m},
               {"lambda", h_lambda},
               {"boundary", h_bnd},
               {"exact", r.method == "exact"},
               {"method", r.method},
               {"tolerance", nullptr}});
    } else if (c_verify->parsed()) {
      em.subcommand = "contours verify";
      em.params.update({{"n", c_n}, {"m", c_m}, {"samples", c_samples}});
      json inst = json::array();
      int failures = 0;
      for (int k = 0; k < c_samples; ++k) {
        bool general = !c_patch_only && (k % 2 == 1);
        Configuration eta = random_m_odd(c_m, c_n, seed + k, general);
        Contour c = extract_contour(eta, c_m);
        Region un = Region::box(c_n);
        int base = eta.occupied(un);
        bool all_valid = true;
        json inc = json::array();
        for (Site s : {Site{1, 0}, Site{-1, 0}, Site{0, 1}, Site{0, -1}}) {
          try {
            ShiftResult r = shift_configuration(eta, c, s);
            if (r.added * 4 != c.length) all_valid = false;
            if (r.config.occupied(un) - base != r.added) all_valid = false;
            inc.push_back(r.added);
          } catch (const std::logic_error&) {
            all_valid = false;
          }
        }
        Site chosen{0, 0};
        bool even_ok = false;
        try {
          chosen = choose_shift(eta, c_m);
          Configuration img = phi_map(eta, c_m);
          even_ok = is_m_even(img, c_m) && !is_m_odd(img, c_m);
        } catch (const std::logic_error&) {
        }
        bool ok = all_valid && even_ok && c.length % 4 == 0 &&
                  c.length >= 2 * std::sqrt(2.0) * c_m;
        if (!ok) ++failures;
        inst.push_back({{"length", c.length},
                        {"increase", inc},
                        {"all_shifts_valid", all_valid},
                        {"chosen_shift", {chosen.x, chosen.y}},
                        {"m_even_after", even_ok},
                        {"general", general},
                        {"pass", ok}});
      }
      em.emit({{"samples", c_samples},
               {"failures", failures},
               {"instances", inst},
               {"method", "exact"},
               {"exact", true},
               {"tolerance", 0.0}});
      if (failures) return 3;
    } else if (c_show->parsed()) {
      em.subcommand = "contours show";
      em.params.update({{"n", c_n}, {"m", c_m}});
      Configuration eta = c_cfg.empty() ? random_m_odd(c_m, c_n, seed, true)
                                        : load_configuration(c_cfg);
      em.write(render_contour(eta, c_m));
    } else if (g_gs->parsed()) {
      em.subcommand = "geometry ground-states";
      json states = json::array();
      for (const PeriodicState& s : enumerate_ground_states())
        states.push_back({{"name", s.name},
                          {"generators", {{s.g1.x, s.g1.y}, {s.g2.x, s.g2.y}}},
                          {"density", s.density.str()}});
      em.emit({{"states", states},
               {"dense_count", 2},
               {"sparse_count", 10},
               {"exact", true},
               {"method", "exact"},
               {"tolerance", 0.0}});
    } else if (g_tab->parsed()) {
      em.subcommand = "geometry triangle-table";
      auto rows = feasible_triangle_table();
      if (g_csv) {
        std::ostringstream csv;
        csv << "bx,by,cx,cy,area,circumradius_ratio2,regular,mis_compatible,feasible\n";
        for (const auto& r : rows)
          csv << r.b.x << ',' << r.b.y << ',' << r.c.x << ',' << r.c.y << ','
              << (r.area2 / 2.0) << ',' << r.ratio2.str() << ',' << r.regular
              << ',' << r.mis_compatible << ',' << r.feasible << '\n';
        em.write(csv.str());
      } else {
        json jr = json::array();
        for (const auto& r : rows)
          jr.push_back({{"b", {r.b.x, r.b.y}},
                        {"c", {r.c.x, r.c.y}},
                        {"area", r.area2 / 2.0},
                        {"ratio2", r.ratio2.str()},
                        {"regular", r.regular},
                        {"mis_compatible", r.mis_compatible},
                        {"feasible", r.feasible}});
        em.emit({{"rows", jr}, {"exact", true}, {"method", "exact"}, {"tolerance", 0.0}});
      }
    } else if (g_pei->parsed()) {
      em.subcommand = "geometry peierls";
      em.params.update({{"samples", g_samples}, {"torus", g_torus}});
      Region torus = Region::torus(g_torus[0], g_torus[1]);
      PeriodicState l1 = enumerate_ground_states()[2];
      int fails = 0, components = 0, vacuous = 0;
      long long min_lhs = 1 << 30;
      for (int k = 0; k < g_samples; ++k) {
        int kk = 1 + static_cast<int>((seed + k) % 3);
        auto occ = perturb_ground_state(l1, torus, kk, seed + k);
        auto res = peierls_check(occ, torus, {g_offset[0], g_offset[1]});
        if (res.empty()) ++vacuous;
        for (const auto& pc : res) {
          ++components;
          min_lhs = std::min(min_lhs, pc.lhs);
          if (!pc.pass) ++fails;
        }
      }
      em.emit({{"samples", g_samples},
               {"components", components},
               {"vacuous", vacuous},
               {"failures", fails},
               {"min_lhs", min_lhs},
               {"pass_rate", components ? 1.0 - double(fails) / components : 1.0},
               {"method", "exact"},
               {"exact", true},
               {"tolerance", 0.0}});
      if (fails) return 3;
    } else if (r_fig3->parsed()) {
      em.subcommand = "report fig3";
      em.params.update({{"beta_grid", r_bgrid}});
      Grid g = parse_grid(r_bgrid);
      std::ostringstream csv;
      csv << "beta,bound,branch\n";
      for (double b = g.lo; b <= g.hi + 1e-12; b += g.step) {
        auto e = entropy_lower_bound(b, 0.3012);
        csv << b << ',' << e.value << ',' << e.branch << '\n';
      }
      em.write(csv.str());
    } else if (r_h0->parsed()) {
      em.subcommand = "report h0";
      em.params.update({{"m", r_m}, {"n", r_n}, {"p", r_p}});
      mpz_class c = count_mis(r_m, r_n);
      PowerResult up = h0_upper(r_p, 1e-10);
      em.emit({{"lower", h0_lower_from_count(c, r_m, r_n)},
               {"upper", up.value},
               {"count", c.get_str()},
               {"lambda_max", up.lambda_max},
               {"m", r_m},
               {"n", r_n},
               {"p", r_p},
               {"method", "exact+iterative"},
               {"exact", false},
               {"tolerance", 1e-10}});
    } else if (r_dc->parsed()) {
      em.subcommand = "report density-curve";
      em.params.update({{"lambda_grid", r_lgrid}, {"m", r_dm}});
      double lo, hi;
      int steps;
      {
        char c1, c2;
        std::istringstream is(r_lgrid);
        if (!(is >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' ||
            steps < 2 || lo <= 0 || hi <= lo)
          throw precondition_error("bad lambda grid (want lo:hi:steps): " + r_lgrid);
      }
      std::ostringstream csv;
      csv << "lambda,density\n";
      for (int i = 0; i < steps; ++i) {
        double f = double(i) / (steps - 1);
        double lam = r_log ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
        DensityResult r = cylinder_density(r_dm, lam);
        csv << lam << ',' << r.density << '\n';
      }
      em.write(csv.str());
    } else if (r_ps->parsed()) {
      em.subcommand = "report peierls-summary";
      em.params.update({{"samples", r_samples}});
      Region torus = Region::torus(30, 30);
      PeriodicState l1 = enumerate_ground_states()[2];
      int fails = 0, components = 0;
      for (int k = 0; k < r_samples; ++k) {
        auto occ = perturb_ground_state(l1, torus, 1 + (k % 3), seed + k);
        for (const auto& pc : peierls_check(occ, torus)) {
          ++components;
          if (!pc.pass) ++fails;
        }
      }
      em.emit({{"samples", r_samples},
               {"components", components},
               {"pass_rate", components ? 1.0 - double(fails) / components : 1.0},
               {"method", "exact"},
               {"exact", true},
               {"tolerance", 0.0}});
      if (fails) return 3;
    }
  } catch (const mhc::precondition_error& e) {
    json err = {{"error", "precondition"}, {"detail", e.what()}};
    std::cout << err.dump() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    json err = {{"error", "assertion"}, {"detail", e.what()}};
    std::cout << err.dump() << '\n';
    return 3;
  }
  return 0;
}
