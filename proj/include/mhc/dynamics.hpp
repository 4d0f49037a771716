#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mhc/lattice.hpp"

namespace mhc {

struct UpdateToken {
  Site w;
  double u = 0;  // in [0, 1)
};

// Shared replayable randomness for grand coupling: mt19937_64 with an
// explicit seed; (w, u) pairs drawn in a fixed, documented way.
class TokenStream {
 public:
  TokenStream(const Region& lambda, uint64_t seed)
      : sites_(lambda.sites()), eng_(seed) {}
  UpdateToken next() {
    uint64_t r = eng_();
    Site w = sites_[r % sites_.size()];
    double u = (eng_() >> 11) * 0x1.0p-53;
    return {w, u};
  }
  const std::vector<Site>& sites() const { return sites_; }

 private:
  std::vector<Site> sites_;
  std::mt19937_64 eng_;
};

// Heat-bath update at token.w; all other sites unchanged.
void glauber_step(Configuration& cfg, const UpdateToken& token, double beta);

// Several chains driven by one token stream (the grand coupling): chains
// with equal states stay equal forever.
class ChainEnsemble {
 public:
  ChainEnsemble(std::vector<Configuration> chains, const Region& lambda,
                double beta, uint64_t seed);
  void step();                       // one shared token applied to every chain
  long long time() const { return t_; }
  const Configuration& chain(size_t k) const { return chains_[k]; }
  size_t size() const { return chains_.size(); }
  bool coalesced() const;            // all chains equal on lambda

 private:
  std::vector<Configuration> chains_;
  Region lambda_;
  double beta_;
  TokenStream stream_;
  long long t_ = 0;
};

// c_beta = 13 - 24 / (1 + e^{-10 beta}); positive for beta < ln(13/11)/10.
double contraction_constant(double beta);

// ceil((n / c_beta) (ln n + ln 1/eps)); rejects beta with c_beta <= 0.
long long mixing_bound(long long n, double beta, double eps);

// First step at which the two grand-coupled chains agree on lambda;
// nullopt on timeout.
std::optional<long long> coalescence_time(const Configuration& x,
                                          const Configuration& y,
                                          const Region& lambda, double beta,
                                          uint64_t seed, long long t_max);

struct ExactGibbs {
  Region region;
  double beta = 0;
  BoundaryRule boundary;
  std::vector<Site> sites;    // bit k of an index corresponds to sites[k]
  std::vector<double> prob;   // 2^{|region|} entries, sums to 1
  std::vector<int> errors;    // eps_omega(Lambda^+) per configuration

  Configuration materialize(uint32_t index) const;
};

inline constexpr int kExactEnumerationCap = 20;

// Full table of mu^bnd_{Lambda;beta} via Eq-style weights e^{-2 beta eps}.
ExactGibbs exact_gibbs(const Region& lambda, double beta,
                       const BoundaryRule& boundary);

struct ErrorProbBounds {
  double exact = 0;
  double upper = 0;  // 16 e^{-2 beta}
  double lower = 0;  // 1 / (1 + e^{10 beta})
};

ErrorProbBounds error_prob_bounds(const Region& lambda, double beta, Site i,
                                  const BoundaryRule& boundary);

// Shannon entropy per site of the exact table (bits).
double entropy_exact(const ExactGibbs& table);

struct EntropyBound {
  double value = 0;
  int branch = 0;  // 0: H0 branch, 1: 1 - 2 beta log2 e branch
};

// max{2b log2e/(1+e^{10b}) + H0, 1 + 2b log2e/(1+e^{10b}) - 2b log2e}
EntropyBound entropy_lower_bound(double beta, double h0);

// beta where the two branches cross: (1 - H0) / (2 log2 e)
double entropy_bound_crossover(double h0);

// Extreme starts used by the empirical mixing experiment: the window filled
// with the even (resp. odd) checkerboard.
Configuration extreme_start_even(const Region& lambda, const BoundaryRule& b);
Configuration extreme_start_odd(const Region& lambda, const BoundaryRule& b);

}  // namespace mhc
