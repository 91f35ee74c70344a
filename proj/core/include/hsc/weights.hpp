#pragma once

// Weight sequences M = (M_0, ..., M_K) stored as log M_k, and diagnostics for
// the structural conditions used on Denjoy-Carleman classes.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsc {

struct Generator {
  enum class Kind { explicit_log, gevrey, constant_one, custom };
  Kind kind = Kind::constant_one;
  double s = 1.0;               // gevrey order, s >= 1
  std::vector<double> values;   // custom: M_k; explicit_log: log M_k

  static Generator gevrey(double s) { return {Kind::gevrey, s, {}}; }
  static Generator constant_one() { return {Kind::constant_one, 1.0, {}}; }
  static Generator custom(std::vector<double> m) { return {Kind::custom, 1.0, std::move(m)}; }
  static Generator explicit_log(std::vector<double> log_m) {
    return {Kind::explicit_log, 1.0, std::move(log_m)};
  }
};

std::string to_string(Generator::Kind kind);

class WeightSequence {
 public:
  WeightSequence(Generator generator, std::vector<double> log_values);

  int kmax() const noexcept { return static_cast<int>(log_values_.size()) - 1; }
  double log_value(int k) const { return log_values_.at(static_cast<std::size_t>(k)); }
  double value(int k) const;
  std::span<const double> log_values() const noexcept { return log_values_; }
  const Generator& generator() const noexcept { return generator_; }

 private:
  Generator generator_;
  std::vector<double> log_values_;
};

// Builds M_0..M_kmax. Gevrey(s) uses M_k = (k!)^(s-1) in log form.
WeightSequence make_sequence(const Generator& generator, int kmax);

enum class Confidence { exact, truncation_based };
std::string to_string(Confidence c);

struct RunningSupDiagnostic {
  std::vector<double> running_sup;  // index n holds the sup over orders <= n + first_order
  int first_order = 1;
  double sup = 0.0;
  double tail_slope = 0.0;  // slope of log(running sup) against log(order), last half
  bool bounded = false;
  Confidence confidence = Confidence::truncation_based;
};

struct ConditionReport {
  int kmax = 0;
  bool log_convex = false;                  // exact over k <= K-1
  std::optional<bool> weakly_log_convex;     // (k! M_k) log-convex
  std::optional<bool> root_nondecreasing;    // M_k^(1/k) nondecreasing
  std::optional<bool> superadditive;         // M_j M_k <= M_{j+k}
  std::optional<bool> composition_bound;     // M_1^j M_k >= M_j M_a1...M_aj, k <= 10
  std::optional<bool> partition_bound;       // M_1^k M_n >= M_k M_1^k1...M_n^kn, n <= 10
  bool normalized = false;                   // 1 = M_0 <= M_k <= M_{k+1}
  RunningSupDiagnostic derivation_closed;    // sup (M_{k+1}/M_k)^(1/k)
  RunningSupDiagnostic moderate_growth;      // sup (M_{j+k}/(M_j M_k))^(1/(j+k))
  // Smallest C >= 1 with (k+j)! M_{k+j} <= C^(j(k+j)) k! M_k over j,k <= K/4.
  double derivation_constant = 1.0;
  bool beurling_eligible = false;            // M_k^(1/k) -> infinity
  double beurling_slope = 0.0;
  bool hypothesis_bundle = false;            // normalized, log-convex, moderate growth
};

ConditionReport check_conditions(const WeightSequence& m);

struct QuasianalyticReport {
  std::vector<double> partial_sums;  // S_K for K = 1..kmax
  double total = 0.0;
  double tail_slope = 0.0;           // log(term) vs log(k) over the last half
  bool quasianalytic = false;        // divergent verdict
  double log_fit_coefficient = 0.0;  // c in S_K ~ c ln K + b over the last half
  std::vector<double> strong_nqa_running_sup;  // running sup of (M_{k+1}/M_k) sum_{l >= k} M_l / ((l+1) M_{l+1})
  double strong_nqa_sup = 0.0;
  Confidence confidence = Confidence::truncation_based;
};

// Tolerance for the tail-trend slope: convergent when slope <= -1 - delta.
inline constexpr double kTrendDelta = 0.05;

QuasianalyticReport quasianalytic_diagnostic(const WeightSequence& m);

}  // namespace hsc
