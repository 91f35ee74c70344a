#pragma once

// Truncated univariate Taylor series ("jets") with Faa di Bruno composition,
// compositional inversion, and the majorant series used to certify inverse
// derivative bounds. Every algorithm is templated on the scalar so that the
// same code path runs in floating point and in exact rational arithmetic.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hsc/error.hpp"
#include "hsc/weights.hpp"

namespace hsc {

using Rational = boost::multiprecision::cpp_rational;

enum class NumericMode { floating, rational };

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return static_cast<double>(v); }

// Parses "p/q", "p" or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& v);

// Partition enumeration is used up to this degree; above it composition
// switches to accumulated powers of the inner series.
inline constexpr int kPartitionDegreeCap = 20;

template <class T>
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::vector<T> coeffs, double base_point = 0.0)
      : coeffs_(std::move(coeffs)), base_point_(base_point) {
    if (coeffs_.size() < 2) fail(ErrorKind::domain, "jet degree must be >= 1");
    if constexpr (std::is_floating_point_v<T>) {
      for (const T& c : coeffs_)
        if (!std::isfinite(c)) fail(ErrorKind::domain, "jet coefficients must be finite");
    }
  }

  static Jet identity(int degree, double base_point = 0.0) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c[0] = T(base_point);
    c[1] = T(1);
    return Jet(std::move(c), base_point);
  }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double base_point() const noexcept { return base_point_; }
  const T& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  std::span<const T> coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<T> coeffs_;
  double base_point_ = 0.0;
};

namespace detail {

// c = a * b truncated at `degree`.
template <class T>
std::vector<T> multiply(std::span<const T> a, std::span<const T> b, int degree) {
  std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
  for (int i = 0; i <= degree && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == T(0)) continue;
    for (int j = 0; i + j <= degree && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit);

// sum_j outer[j] * inner^j truncated at `degree`, where inner has zero
// constant term. Uses Faa di Bruno partitions when degree is small.
template <class T>
std::vector<T> substitute(std::span<const T> outer, std::span<const T> inner, int degree) {
  std::vector<T> out(static_cast<std::size_t>(degree) + 1, T(0));
  out[0] = outer[0];
  const int outer_deg = static_cast<int>(outer.size()) - 1;
  auto g = [&](int i) { return i < static_cast<int>(inner.size()) ? inner[i] : T(0); };
  if (degree <= kPartitionDegreeCap) {
    std::vector<T> fact(static_cast<std::size_t>(degree) + 1, T(1));
    for (int i = 1; i <= degree; ++i) fact[i] = fact[i - 1] * T(i);
    for (int n = 1; n <= degree; ++n) {
      T acc(0);
      for_each_partition(n, [&](const std::vector<int>& mult) {
        int parts = 0;
        for (int i = 1; i <= n; ++i) parts += mult[i];
        if (parts > outer_deg || outer[parts] == T(0)) return;
        T term = outer[parts] * fact[parts];
        for (int i = 1; i <= n; ++i) {
          if (mult[i] == 0) continue;
          term /= fact[mult[i]];
          for (int r = 0; r < mult[i]; ++r) term *= g(i);
        }
        acc += term;
      });
      out[n] = acc;
    }
    return out;
  }
  std::vector<T> base(static_cast<std::size_t>(degree) + 1, T(0));
  for (int i = 1; i <= degree; ++i) base[i] = g(i);
  std::vector<T> power = base;
  for (int j = 1; j <= std::min(outer_deg, degree); ++j) {
    if (j > 1) power = multiply<T>(power, base, degree);
    if (outer[j] == T(0)) continue;
    for (int n = j; n <= degree; ++n) out[n] += outer[j] * power[n];
  }
  return out;
}

template <class T>
bool aligned(const T& value, double base) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::abs(value - base) <= 1e-12 * std::max(1.0, std::abs(base));
  } else {
    return value == Rational(base);
  }
}

}  // namespace detail

// Coefficients of f o g to the common degree. g's value at its base point must
// equal f's base point; the caller aligns them.
template <class T>
Jet<T> compose_jets(const Jet<T>& f, const Jet<T>& g) {
  if (f.degree() != g.degree()) fail(ErrorKind::domain, "compose_jets: degree mismatch");
  if (!detail::aligned(g[0], f.base_point()))
    fail(ErrorKind::domain, "compose_jets: inner value does not match the outer base point");
  std::vector<T> inner(g.coeffs().begin(), g.coeffs().end());
  inner[0] = T(0);
  auto out = detail::substitute<T>(f.coeffs(), inner, f.degree());
  return Jet<T>(std::move(out), g.base_point());
}

// Compositional inverse by the fixed point G = T e + phi(G), phi = Id - T F.
// Coefficient i is final after i sweeps, so sweep m only carries degree m.
template <class T>
Jet<T> invert_jet(const Jet<T>& f) {
  const int n = f.degree();
  if (f[1] == T(0)) fail(ErrorKind::singular, "invert_jet: singular germ (a1 = 0)");
  const T t = T(1) / f[1];
  std::vector<T> phi(static_cast<std::size_t>(n) + 1, T(0));
  for (int k = 2; k <= n; ++k) phi[k] = -t * f[k];
  std::vector<T> g(static_cast<std::size_t>(n) + 1, T(0));
  g[1] = t;
  for (int m = 2; m <= n; ++m) {
    auto next = detail::substitute<T>(std::span<const T>(phi).first(m + 1),
                                      std::span<const T>(g).first(m + 1), m);
    for (int k = 2; k <= m; ++k) g[k] = next[k];
  }
  g[0] = T(f.base_point());
  return Jet<T>(std::move(g), to_double(f[0]));
}

// Truncated power-series helpers (floating point) used by derivative oracles.
namespace series {
std::vector<double> multiply(std::span<const double> a, std::span<const double> b);
std::vector<double> reciprocal(std::span<const double> a);
std::vector<double> exp(std::span<const double> a);
}  // namespace series

// Taylor coefficients at u0 of the compact template exp(1) * exp(-1/(1-u^2)),
// zero outside (-1, 1). Derivative k is k! times coefficient k.
std::vector<double> bump_taylor(double u0, int degree);

template <class T>
struct MajorantSeries {
  T A, C, rho;
  int N = 0;
  std::vector<T> psi_coeffs;  // psi_N, index = power
  std::vector<T> g_coeffs;    // c_0 = 0, c_1 = A, ...
  std::vector<double> bound_ratio;  // i c_i / bound_i for i = 2..N (index i)
  bool bound_holds = false;
};

// Solves g = A s + psi_N(g) to degree N and checks the coefficient bound
// 0 < i c_i < A (4A(CA+1) rho)^(i-1) M_{i-1}. Violations throw an invariant error.
template <class T>
MajorantSeries<T> majorant_series(const T& A, const T& C, const T& rho, std::span<const T> m, int N) {
  if (!(A > T(0)) || !(C > T(0)) || !(rho > T(0))) fail(ErrorKind::domain, "majorant_series: A, C, rho must be > 0");
  if (N < 2) fail(ErrorKind::domain, "majorant_series: N must be >= 2");
  if (static_cast<int>(m.size()) < N) fail(ErrorKind::domain, "majorant_series: weight sequence too short");
  MajorantSeries<T> out{A, C, rho, N, {}, {}, {}, false};
  out.psi_coeffs.assign(static_cast<std::size_t>(N) + 1, T(0));
  T rho_pow = rho;  // rho^(j-1)
  for (int j = 2; j <= N; ++j) {
    out.psi_coeffs[j] = C * A * rho_pow * m[j - 1] / T(j);
    rho_pow *= rho;
  }
  std::vector<T> g(static_cast<std::size_t>(N) + 1, T(0));
  g[1] = A;
  for (int d = 2; d <= N; ++d) {
    auto next = detail::substitute<T>(std::span<const T>(out.psi_coeffs).first(d + 1),
                                      std::span<const T>(g).first(d + 1), d);
    for (int k = 2; k <= d; ++k) g[k] = next[k];
  }
  out.g_coeffs = g;

  out.bound_ratio.assign(static_cast<std::size_t>(N) + 1, 0.0);
  const T q = T(4) * A * (C * A + T(1)) * rho;
  bool ok = g[1] == A;
  for (int i = 2; i <= N; ++i) {
    const T lhs = T(i) * g[i];
    bool holds = false;
    if constexpr (std::is_floating_point_v<T>) {
      const double log_bound = std::log(A) + (i - 1) * std::log(q) + std::log(m[i - 1]);
      out.bound_ratio[i] = std::exp(std::log(lhs) - log_bound);
      holds = lhs > 0.0 && std::log(lhs) < log_bound;
    } else {
      T bound = A * m[i - 1];
      for (int r = 0; r < i - 1; ++r) bound *= q;
      out.bound_ratio[i] = to_double(lhs / bound);
      holds = lhs > T(0) && lhs < bound;
    }
    ok = ok && holds;
    if (!holds)
      fail_invariant("majorant_coefficient_bound",
                     "majorant coefficient bound violated at i = " + std::to_string(i));
  }
  out.bound_holds = ok;
  return out;
}

MajorantSeries<double> majorant_series(double A, double C, double rho, const WeightSequence& m, int N);

// Exact M_k for sequences that are integer-valued: constant-one, gevrey with
// integer s, and custom sequences with integer entries.
std::vector<Rational> exact_weights(const WeightSequence& m);

struct FdbBoundReport {
  double A = 0.0;
  std::vector<double> lhs;         // sum over partitions of gamma, gamma = 0..gamma_max
  std::vector<double> normalized;  // lhs / M_gamma
  double fitted_B = 0.0;
  double fitted_C = 0.0;
  // Fitted C for A, A/10, A/100, A/1000.
  std::vector<double> scan_A;
  std::vector<double> scan_C;
  bool c_decreases = false;
};

// Left-hand side of the univariate Faa di Bruno weight bound:
// sum alpha!/(k_1!...k_l!) A^alpha M_alpha prod M_{delta_i}^{k_i}.
std::vector<double> fdb_bound_lhs(double A, const WeightSequence& m, int gamma_max);

FdbBoundReport fdb_bound_check(double A, const WeightSequence& m, int gamma_max);

}  // namespace hsc
