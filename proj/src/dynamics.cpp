#include "mhc/dynamics.hpp"

#include <cmath>

namespace mhc {

void glauber_step(Configuration& cfg, const UpdateToken& token, double beta) {
  VertexProb p = one_vertex_prob(cfg, token.w, beta);
  cfg.set(token.w, token.u <= p.p0 ? 0 : 1);
}

double contraction_constant(double beta) {
  return 13.0 - 24.0 / (1.0 + std::exp(-10.0 * beta));
}

long long mixing_bound(long long n, double beta, double eps) {
  if (n < 1) throw precondition_error("mixing_bound: n must be >= 1");
  if (eps <= 0 || eps >= 1)
    throw precondition_error("mixing_bound: eps must be in (0,1)");
  double c = contraction_constant(beta);
  if (c <= 0)
    throw precondition_error(
        "mixing_bound: beta too large, c_beta <= 0 (needs beta < ln(13/11)/10)");
  double t = (static_cast<double>(n) / c) * (std::log((double)n) + std::log(1.0 / eps));
  return static_cast<long long>(std::ceil(t));
}

ChainEnsemble::ChainEnsemble(std::vector<Configuration> chains,
                             const Region& lambda, double beta, uint64_t seed)
    : chains_(std::move(chains)),
      lambda_(lambda),
      beta_(beta),
      stream_(lambda, seed) {
  if (chains_.empty())
    throw precondition_error("ChainEnsemble: needs at least one chain");
}

void ChainEnsemble::step() {
  UpdateToken tok = stream_.next();
  for (Configuration& c : chains_) glauber_step(c, tok, beta_);
  ++t_;
}

bool ChainEnsemble::coalesced() const {
  for (size_t k = 1; k < chains_.size(); ++k)
    for (Site s : lambda_.sites())
      if (chains_[k].query(s) != chains_[0].query(s)) return false;
  return true;
}

std::optional<long long> coalescence_time(const Configuration& x,
                                          const Configuration& y,
                                          const Region& lambda, double beta,
                                          uint64_t seed, long long t_max) {
  ChainEnsemble ens({x, y}, lambda, beta, seed);
  if (ens.coalesced()) return 0;
  while (ens.time() < t_max) {
    ens.step();
    if (ens.coalesced()) return ens.time();
  }
  return std::nullopt;
}

Configuration ExactGibbs::materialize(uint32_t index) const {
  Configuration cfg(region, boundary);
  for (size_t k = 0; k < sites.size(); ++k)
    cfg.set(sites[k], (index >> k) & 1);
  return cfg;
}

ExactGibbs exact_gibbs(const Region& lambda, double beta,
                       const BoundaryRule& boundary) {
  if (beta <= 0) throw precondition_error("exact_gibbs: beta must be > 0");
  if (lambda.area() > kExactEnumerationCap)
    throw precondition_error("exact_gibbs: region exceeds the 2^20 cap");
  ExactGibbs g;
  g.region = lambda;
  g.beta = beta;
  g.boundary = boundary;
  g.sites = lambda.sites();
  size_t n = g.sites.size();
  size_t total = size_t{1} << n;
  g.prob.resize(total);
  g.errors.resize(total);
  Configuration cfg(lambda, boundary);
  std::vector<Site> plus = region_plus(cfg, lambda);
  double zsum = 0;
  for (size_t idx = 0; idx < total; ++idx) {
    for (size_t k = 0; k < n; ++k) cfg.set(g.sites[k], (idx >> k) & 1);
    int errs = 0;
    for (Site s : plus) errs += recovery_ok(cfg, s) ? 0 : 1;
    g.errors[idx] = errs;
    g.prob[idx] = std::exp(-2.0 * beta * errs);
    zsum += g.prob[idx];
  }
  for (double& p : g.prob) p /= zsum;
  return g;
}

ErrorProbBounds error_prob_bounds(const Region& lambda, double beta, Site i,
                                  const BoundaryRule& boundary) {
  if (!lambda.contains(i))
    throw precondition_error("error_prob_bounds: site outside the region");
  ExactGibbs g = exact_gibbs(lambda, beta, boundary);
  ErrorProbBounds out;
  out.upper = 16.0 * std::exp(-2.0 * beta);
  out.lower = 1.0 / (1.0 + std::exp(10.0 * beta));
  Configuration cfg(lambda, boundary);
  size_t n = g.sites.size();
  for (size_t idx = 0; idx < g.prob.size(); ++idx) {
    for (size_t k = 0; k < n; ++k) cfg.set(g.sites[k], (idx >> k) & 1);
    if (!recovery_ok(cfg, i)) out.exact += g.prob[idx];
  }
  if (!(out.lower <= out.exact && out.exact <= out.upper + 1e-15))
    throw std::logic_error("error_prob_bounds: sandwich violated");
  return out;
}

double entropy_exact(const ExactGibbs& table) {
  double h = 0;
  for (double p : table.prob)
    if (p > 0) h -= p * std::log2(p);
  return h / static_cast<double>(table.sites.size());
}

EntropyBound entropy_lower_bound(double beta, double h0) {
  if (beta < 0) throw precondition_error("entropy_lower_bound: beta >= 0");
  double log2e = 1.4426950408889634;
  double common = 2.0 * beta * log2e / (1.0 + std::exp(10.0 * beta));
  double b0 = common + h0;
  double b1 = 1.0 + common - 2.0 * beta * log2e;
  return b0 >= b1 ? EntropyBound{b0, 0} : EntropyBound{b1, 1};
}

double entropy_bound_crossover(double h0) {
  return (1.0 - h0) / (2.0 * 1.4426950408889634);
}

Configuration extreme_start_even(const Region& lambda, const BoundaryRule& b) {
  Configuration cfg(lambda, b);
  for (Site s : lambda.sites()) cfg.set(s, omega_even(s));
  return cfg;
}

Configuration extreme_start_odd(const Region& lambda, const BoundaryRule& b) {
  Configuration cfg(lambda, b);
  for (Site s : lambda.sites()) cfg.set(s, omega_odd(s));
  return cfg;
}

}  // namespace mhc
