#pragma once

// Functions sampled on a uniform window of the real line.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hsc {

// Decay class claimed for a sampled function. Outside the window, W/S/D
// functions extend by zero and B/none functions by their edge value.
enum class DecayClass { none, B, W, S, D };

std::string to_string(DecayClass c);
DecayClass decay_class_from_string(const std::string& s);

class UniformGrid {
 public:
  UniformGrid(double x_min, double x_max, double h);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double step() const noexcept { return h_; }
  std::size_t size() const noexcept { return n_; }
  double x(std::size_t i) const noexcept {
    return i + 1 == n_ ? x_max_ : x_min_ + static_cast<double>(i) * h_;
  }
  std::vector<double> nodes() const;
  // Index of the cell [x_i, x_{i+1}] containing x, clamped to the grid.
  std::size_t cell(double x) const noexcept;

  bool operator==(const UniformGrid& o) const noexcept {
    return x_min_ == o.x_min_ && x_max_ == o.x_max_ && h_ == o.h_;
  }

 private:
  double x_min_, x_max_, h_;
  std::size_t n_;
};

// oracle(k, x) returns the k-th derivative at x.
using DerivativeOracle = std::function<double(int, double)>;

class GridFunction {
 public:
  GridFunction(UniformGrid grid, std::vector<double> values, DecayClass claim = DecayClass::none);

  // Attach exact nodal first derivatives (used for interpolation slopes).
  GridFunction& with_slopes(std::vector<double> slopes);
  GridFunction& with_oracle(DerivativeOracle oracle, int max_order);
  // Accuracy order of the centered finite-difference stencils (even, >= 4).
  GridFunction& with_fd_order(int order);

  const UniformGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double value(std::size_t i) const { return values_.at(i); }
  std::size_t size() const noexcept { return values_.size(); }
  DecayClass claim() const noexcept { return claim_; }
  void set_claim(DecayClass c) noexcept { claim_ = c; }
  bool has_oracle() const noexcept { return static_cast<bool>(oracle_); }
  int oracle_order() const noexcept { return oracle_order_; }
  const DerivativeOracle& oracle() const noexcept { return oracle_; }
  bool has_exact_slopes() const noexcept { return !slopes_.empty(); }

  // Nodal first derivatives: exact slopes, oracle, or finite differences.
  const std::vector<double>& slopes() const;

  // k-th derivative at every node. Uses the oracle when it covers order k,
  // otherwise finite differences; throws a precision error when the round-off
  // amplification eps * h^-k exceeds 1e-6.
  std::vector<double> derivative_samples(int k) const;
  double fd_noise_ratio(int k) const;

  // Off-grid evaluation by cubic Hermite interpolation with a Fritsch-Carlson
  // limiter applied to Id + f, so monotone maps stay monotone between nodes.
  double eval(double x) const;
  double eval_slope(double x) const;

  // Smallest interval [a, b] outside of which every sample is exactly zero.
  std::optional<std::pair<double, double>> support() const;

  double sup_abs() const;
  double boundary_magnitude() const;

  GridFunction scaled(double lambda) const;

 private:
  void limited_slopes(std::size_t i, double& d0, double& d1) const;
  // Node index when x coincides with a node up to round-off.
  std::optional<std::size_t> snap(double x) const;

  UniformGrid grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  mutable std::vector<double> fd_slopes_;
  DecayClass claim_;
  DerivativeOracle oracle_;
  int oracle_order_ = 0;
  int fd_order_ = 4;
};

// Centered finite-difference derivative of order k with the given accuracy
// order; stencils near the ends shift inward and gain one node.
std::vector<double> finite_difference(const std::vector<double>& values, double h, int k, int accuracy);

// L^p norm over the window by composite Simpson; p <= 0 means sup norm.
double lp_norm(const std::vector<double>& values, double h, double p);

}  // namespace hsc
