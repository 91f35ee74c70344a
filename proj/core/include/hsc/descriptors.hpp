#pragma once

// Function descriptors: closed-form families that can be sampled onto a grid
// together with an exact derivative oracle.

#include <optional>
#include <string>
#include <vector>

#include "hsc/grid.hpp"

namespace hsc {

// Compact template chi(u) = e * exp(-1/(1 - u^2)) on (-1, 1), zero elsewhere.
// Peak value chi(0) = 1.
namespace bump {
double value(double u);
double derivative(int k, double u);
// int_{-1}^{u} chi
double primitive(double u);
double l1_norm();
// || chi^(k) ||_{L^p}
double lp_norm(int k, double p);
}  // namespace bump

// Sum over n of a_n chi(lambda_n (x - 2n)) with pairwise disjoint supports.
class BumpTrain {
 public:
  BumpTrain(int n_min, std::vector<double> amplitudes, std::vector<double> dilations);

  // a_n = 1/n, lambda_n = log n for n_min <= n <= n_max. Needs log n_min >= 1.
  static BumpTrain logarithmic(int n_min, int n_max);
  // a_n given, lambda_n = 1.
  static BumpTrain unit(int n_min, std::vector<double> amplitudes);

  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_min_ + static_cast<int>(amp_.size()) - 1; }
  double amplitude(int n) const;
  double dilation(int n) const;
  double derivative(int k, double x) const;
  double value(double x) const { return derivative(0, x); }

  // Primitive from -infinity: sum_{m < n} a_m ||chi||_1 / lambda_m plus
  // a_n primitive(lambda_n (x - 2n)) / lambda_n on cell n.
  double primitive(double x) const;

 private:
  int n_min_;
  std::vector<double> amp_, lambda_;
  std::vector<double> prefix_;  // ||chi||_1 * sum of a_m for m < n
};

// b_n = 1/k when n = ceil(e^k) for some k >= 1, zero otherwise.
std::vector<double> halflie_coefficients(int n_max);

struct FunctionDescriptor {
  enum class Kind { zero, gaussian_bump, compact_bump, sine, custom, lemma157, theta_series, sum, antiderivative };

  Kind kind = Kind::zero;
  double amp = 1.0;
  double center = 0.0;
  double width = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
  std::vector<double> sample_x, sample_y;  // custom
  int n_min = 3;                            // lemma157 / theta_series
  int n_max = 100;
  std::string rule = "harmonic";            // theta_series: harmonic | halflie
  std::vector<FunctionDescriptor> terms;    // sum, antiderivative (terms[0])
  std::optional<DecayClass> claim;

  static FunctionDescriptor zero();
  static FunctionDescriptor gaussian(double amp, double center, double width);
  static FunctionDescriptor compact(double amp, double center, double width);
  static FunctionDescriptor sine(double amp, double frequency, double phase = 0.0);
  static FunctionDescriptor samples(std::vector<double> x, std::vector<double> y);
  static FunctionDescriptor lemma157(int n_min, int n_max);
  static FunctionDescriptor theta(const std::string& rule, int n_max);
  static FunctionDescriptor sum(std::vector<FunctionDescriptor> terms);
  static FunctionDescriptor antiderivative(FunctionDescriptor integrand);
};

std::string to_string(FunctionDescriptor::Kind kind);
FunctionDescriptor::Kind descriptor_kind_from_string(const std::string& s);

DecayClass natural_claim(const FunctionDescriptor& d);
bool is_analytic(const FunctionDescriptor& d);

// Exact k-th derivative at x; requires is_analytic(d). Antiderivatives are
// taken from -infinity and are analytic only for integrable integrands.
double evaluate(const FunctionDescriptor& d, int k, double x);

// Samples d on the grid. Analytic descriptors register a derivative oracle
// up to kmax. A W/S/D claim whose boundary samples exceed 1e-8 of the peak
// (any nonzero boundary sample for D) raises a domain error.
GridFunction grid_function(const FunctionDescriptor& d, const UniformGrid& grid, int kmax = 12);

}  // namespace hsc
