#pragma once

// Small numerical kernels shared by every module: log-factorials, trend fits,
// finite-difference weights, uniform-grid quadrature and interpolation.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace hsc {

// log(k!) for k = 0..n, accumulated as a running sum of log(j).
std::vector<double> log_factorials(std::size_t n);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};

// Ordinary least squares y ~ intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Fornberg's recursion: weights w_j such that sum_j w_j f(x_j) approximates
// f^(order)(x0).
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order);

// Composite Simpson on uniformly spaced samples. An even sample count uses
// Simpson's 3/8 rule on the last three intervals.
double simpson(std::span<const double> values, double h);

struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;  // Richardson estimate |S_h - S_2h| / 15
};

QuadratureEstimate simpson_with_error(std::span<const double> values, double h);

// Prefix integrals I_i = int_{x_0}^{x_i} f at every node. Even nodes use
// Simpson pairs; odd nodes add one interval by the four-point cubic rule
// (quadratic at the ends).
std::vector<double> cumulative_simpson(std::span<const double> values, double h);

// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
  static const std::array<double, 16>& nodes();
  static const std::array<double, 16>& weights();
};

// int_a^b f with `panels` composite 16-point Gauss-Legendre panels.
template <class F>
double gauss_legendre(F&& f, double a, double b, int panels = 1) {
  const auto& xs = GaussLegendre16::nodes();
  const auto& ws = GaussLegendre16::weights();
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += ws[i] * f(mid + 0.5 * width * xs[i]);
    total += 0.5 * width * s;
  }
  return total;
}

// Cubic Hermite value on [x0, x0 + h] from endpoint values and slopes.
inline double hermite_cubic(double t, double h, double y0, double y1, double d0, double d1) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * d1;
}

inline double hermite_cubic_slope(double t, double h, double y0, double y1, double d0, double d1) {
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (-6 * t2 + 6 * t) * y1) / h + (3 * t2 - 4 * t + 1) * d0 +
         (3 * t2 - 2 * t) * d1;
}

// Fritsch-Carlson limiter: adjusts endpoint slopes so the Hermite cubic on
// an interval with secant `delta` stays monotone.
void fritsch_carlson_limit(double delta, double& d0, double& d1);

// Four-point cubic Lagrange interpolation of uniform samples starting at
// x_min with spacing h. The stencil is clamped at the ends, so points outside
// the sample range are extrapolated; callers clamp x when that matters.
double lagrange_cubic(std::span<const double> values, double x_min, double h, double x);

double sup_abs(std::span<const double> values);
double sup_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace hsc
