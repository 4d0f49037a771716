#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhc/lattice.hpp"

namespace mhc {

// Conditional of the maximal hard-core measure on a small region: support and
// lambda-weights of every eta in X0 agreeing with omega off lambda.
struct McConditional {
  std::vector<Site> sites;            // bit k of a pattern <-> sites[k]
  std::vector<uint64_t> patterns;     // admissible fillings of lambda
  std::vector<double> weights;        // lambda^{|eta_Lambda|}
  double z = 0;                       // partition function
  double probability(size_t k) const { return weights[k] / z; }
};

McConditional mhc_conditional(const Region& lambda, const Configuration& omega,
                              double activity);

// Agreement events of Section-5 type: the four rectangles around the origin.
struct ParityRect {
  int x0, x1, y0, y1;
};
std::vector<ParityRect> parity_rects(int m);  // order W, E, S, N

bool is_m_odd(const Configuration& cfg, int m);
bool is_m_even(const Configuration& cfg, int m);

enum class Parity { Even, Odd };

struct ParityProbability {
  double p_odd_given_hom = 0;
  double weight_odd = 0, weight_even = 0, weight_total = 0;
  bool hom_has_mass = false;
  std::string method;  // "exact" | "mcmc"
  long long samples = 0;
};

inline constexpr int kParityExactCap = 4;

enum class ParityMethod { Auto, Exact, Mcmc };

// mu_n^bnd(O_m | O_m u E_m) at activity lambda. Exact (column DP over the
// window U_n) for n <= 4; MCMC with projection to X0 otherwise (labeled
// "empirical" by method = "mcmc").
ParityProbability parity_probability(int n, int m, double activity,
                                     Parity boundary, uint64_t seed = 1,
                                     long long samples = 20000,
                                     ParityMethod method = ParityMethod::Auto);

// Exact weighted sums over J_n^bnd grouped by event class (exposed for
// tests): returns {odd weight, even weight, total weight}.
struct ParityWeights {
  double odd = 0, even = 0, total = 0;
};
ParityWeights parity_weights_exact(int n, int m, double activity,
                                   Parity boundary);

}  // namespace mhc
