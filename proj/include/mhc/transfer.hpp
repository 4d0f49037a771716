#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "mhc/lattice.hpp"

namespace mhc {

// Column-pair state of the width-m strip transfer matrix. Bit k of a mask is
// row k; masks carry no two adjacent 1s vertically and left & right = 0.
struct TransferState {
  uint32_t left = 0;
  uint32_t right = 0;
  friend bool operator==(TransferState a, TransferState b) {
    return a.left == b.left && a.right == b.right;
  }
};

struct StripTransfer {
  int m = 0;
  std::optional<double> lambda;  // weighted variant when set
  std::vector<TransferState> states;  // lexicographic on (left, right)
  std::vector<char> is_left, is_right;
  // CSR successor structure; weight[k] = lambda^{popcount(appended column)}
  std::vector<uint32_t> row_ptr, col_idx;
  std::vector<double> weight;  // empty when unweighted

  size_t dimension() const { return states.size(); }
  std::vector<std::vector<int>> dense() const;  // 0/1 matrix, small m only
};

inline constexpr int kMaxStripWidth = 20;

std::vector<TransferState> build_states(int m);
StripTransfer build_transfer(int m, std::optional<double> lambda = {});

// Exact MIS count of the m x n grid graph (zero boundary), 1_L T^{n-2} 1_R.
mpz_class count_mis(int m, int n);

double log2_mpz(const mpz_class& v);

// log2(count) / ((m+1)(n+1))
double h0_lower(int m, int n);
double h0_lower_from_count(const mpz_class& count, int m, int n);

// Two-seam cylinder machinery (upper bound). A state is a pair of 2-row
// strips of width p+2 that agree on their two leftmost and two rightmost
// columns; together they carry 2p distinct columns.
struct SeamStrip {
  uint32_t top = 0;
  uint32_t bottom = 0;
  friend bool operator==(SeamStrip a, SeamStrip b) {
    return a.top == b.top && a.bottom == b.bottom;
  }
};

struct SeamState {
  SeamStrip u, v;
};

struct SeamTransfer {
  int p = 0;
  std::vector<SeamState> states;
  std::vector<uint32_t> row_ptr, col_idx;
  size_t dimension() const { return states.size(); }
  long long transition_count() const { return (long long)col_idx.size(); }
};

inline constexpr int kMaxSeamHalfWidth = 8;

SeamTransfer build_two_seam(int p);

// One-row vertical extension of a 2-row strip, t stacked on top of s: the
// shared row's zeros at interior columns must see a 1.
bool seam_strip_extends(SeamStrip s, SeamStrip t, int width);

struct PowerResult {
  double lambda_max = 0;
  double value = 0;  // log2(lambda_max) / (2p) for seam use
  int iterations = 0;
  bool converged = false;
};

// Largest eigenvalue of the seam matrix by power iteration (all-ones start
// unless a start vector is supplied), then log2(lambda)/2p.
PowerResult h0_upper(int p, double tol = 1e-10, int max_iters = 100000,
                     const std::vector<double>* start = nullptr);

// Power iteration on an arbitrary CSR matrix (weights may be null for 0/1).
PowerResult power_iteration_csr(const std::vector<uint32_t>& row_ptr,
                                const std::vector<uint32_t>& col_idx,
                                const std::vector<double>* weights, double tol,
                                int max_iters,
                                const std::vector<double>* start = nullptr);

struct DensityResult {
  double density = 0;
  double lambda_max_plus = 0, lambda_max_minus = 0;
  bool ill_conditioned = false;
};

// lambda d/dlambda ln lambda_max(lambda) / m by central difference with
// relative step h on the weighted strip transfer matrix.
DensityResult cylinder_density(int m, double lambda, double h = 1e-4,
                               double tol = 1e-12);

}  // namespace mhc
