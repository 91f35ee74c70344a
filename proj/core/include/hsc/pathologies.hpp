#pragma once

// Explicit constructions behind the half-Lie phenomena: a bump train whose
// derivative is not integrable, the divergent second-order term of left
// translation, and the asymptotic sequence mu_k.

#include <vector>

#include "hsc/weights.hpp"

namespace hsc {

struct NormTableRow {
  int k = 0;
  double p = 0.0;
  double series = 0.0;      // ||chi^(k)||_p^p sum_n log(n)^(kp-1) / n^p over the train
  double quadrature = 0.0;  // int |phi^(k)|^p over the window
  double rel_gap = 0.0;
  bool convergent = false;  // the infinite series converges
};

struct Lemma157Report {
  int n_min = 3, n_max = 0;
  std::vector<NormTableRow> rows;
  bool nonnegative = true;
  double chi_prime_l1 = 0.0;
  // Windowed L^1 norms of phi' and phi over [-1, 2N + 1] for N in the schedule.
  std::vector<int> schedule;
  std::vector<double> l1_prime;
  std::vector<double> train_harmonic;  // ||chi'||_1 sum_{n_min <= n <= N} 1/n
  std::vector<double> full_harmonic;   // ||chi'||_1 H_N
  std::vector<double> l1_phi;
};

// phi = sum_{n_min <= n <= n_max} (1/n) chi(log(n) (x - 2n)). Each summand
// is integrated over its support by composite Simpson with `cell_intervals`.
Lemma157Report lemma157_profile(const std::vector<double>& ps, int n_max, int k_max,
                                std::vector<int> schedule = {100, 1000, 10000}, int n_min = 3,
                                int cell_intervals = 256);

struct DivergenceRow {
  int N = 0;
  double window_right_edge = 0.0;  // 2N + 1
  int selected = 0;                // indices n = ceil(e^k) <= N
  double term1_mass = 0.0;         // int |phi_b' theta_a|^p
  double term2_mass = 0.0;         // int |phi_b phi_a|^p
};

struct DivergenceReport {
  double p = 2.0;
  std::vector<DivergenceRow> rows;
  bool term1_increasing = false;
  double term1_growth = 0.0;       // last / first
  double fitted_c = 0.0;           // slope of term1 mass against the selected count
  double term2_increment = 0.0;    // max |term2(N) - term2(1000)| over N > 1000
  double theta_max_rel_error = 0.0;  // prefix quadrature against ||chi||_1 H_n
  double lower_bound_min_ratio = 0.0;  // min b_n theta(2n-1) / (||chi||_1 b_n log n)
};

// theta_a with a_n = 1/n and phi_b with b_n = 1/k at n = ceil(e^k), both with
// unit dilations, on windows [-1, 2N + 1].
DivergenceReport halflie_divergence(double p, int n_max, std::vector<int> schedule = {100, 1000, 10000},
                                    int cell_intervals = 512);

struct MuReport {
  int k_max = 0;
  std::vector<double> log_mu;   // k = 0..k_max
  std::vector<double> log_r;    // k = 1..k_max at index k; index 0 unused
  std::vector<double> log_kr;
  bool r_decreasing = false;
  bool kr_increasing = false;
  bool spacing_ok = false;      // mu_{k+1} - mu_k >= 1
  double r4 = 0.0;
};

// mu_k = 2^k sqrt(k!) M_k in log form; r_k = (mu_k / (k! M_k))^(1/k).
// M must satisfy the hypothesis bundle (normalized, log-convex, moderate growth).
MuReport gevrey_mu_sequence(const WeightSequence& M, int k_max);

}  // namespace hsc
