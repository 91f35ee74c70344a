#include "hsc/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "hsc/error.hpp"

namespace hsc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::singular: return "singular";
    case ErrorKind::precision: return "precision";
    case ErrorKind::not_diffeomorphism: return "not_diffeomorphism";
    case ErrorKind::refinement: return "refinement";
    case ErrorKind::constraint: return "constraint";
    case ErrorKind::window: return "window";
    case ErrorKind::stiffness: return "stiffness";
    case ErrorKind::step: return "step";
    case ErrorKind::construction: return "construction";
    case ErrorKind::invariant: return "invariant";
  }
  return "unknown";
}

std::vector<double> log_factorials(std::size_t n) {
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t k = 2; k <= n; ++k) out[k] = out[k - 1] + std::log(static_cast<double>(k));
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) fail(ErrorKind::domain, "fit_line needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorKind::domain, "fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  if (order < 0 || order >= n) fail(ErrorKind::domain, "fornberg_weights: order must be < node count");
  // c[i][k]: weight of node i for derivative k
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

namespace {

double simpson_strided(std::span<const double> v, double h, std::size_t stride) {
  const std::size_t n = (v.size() - 1) / stride + 1;  // samples used
  auto at = [&](std::size_t i) { return v[i * stride]; };
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (at(0) + at(1));
  if (n == 3) return h / 3.0 * (at(0) + 4 * at(1) + at(2));
  const std::size_t intervals = n - 1;
  std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
  double s = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) s += at(i) + 4 * at(i + 1) + at(i + 2);
  s *= h / 3.0;
  if (simpson_end != intervals) {
    const std::size_t i = simpson_end;
    s += 3.0 * h / 8.0 * (at(i) + 3 * at(i + 1) + 3 * at(i + 2) + at(i + 3));
  }
  return s;
}

}  // namespace

double simpson(std::span<const double> values, double h) { return simpson_strided(values, h, 1); }

QuadratureEstimate simpson_with_error(std::span<const double> values, double h) {
  QuadratureEstimate q;
  q.value = simpson_strided(values, h, 1);
  if (values.size() >= 5 && (values.size() - 1) % 2 == 0) {
    const double coarse = simpson_strided(values, 2 * h, 2);
    q.error = std::abs(q.value - coarse) / 15.0;
  } else {
    q.error = 0.0;
  }
  return q;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * h * (f[0] + f[1]);
    return out;
  }
  for (std::size_t i = 2; i < n; i += 2) out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4 * f[i - 1] + f[i]);
  for (std::size_t i = 1; i < n; i += 2) {
    if (i >= 2 && i + 1 < n) {
      out[i] = out[i - 1] + h / 24.0 * (-f[i - 2] + 13 * f[i - 1] + 13 * f[i] - f[i + 1]);
    } else if (i + 1 < n) {
      out[i] = out[i - 1] + h / 12.0 * (5 * f[i - 1] + 8 * f[i] - f[i + 1]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8 * f[i - 1] + 5 * f[i]);
    }
  }
  return out;
}

const std::array<double, 16>& GaussLegendre16::nodes() {
  static const std::array<double, 16> x = {
      -0.98940093499164994, -0.9445750230732326,   -0.86563120238783176, -0.755404408355003,
      -0.61787624440264377, -0.45801677765722737,  -0.28160355077925892, -0.095012509837637454,
      0.095012509837637454, 0.28160355077925892,   0.45801677765722737,  0.61787624440264377,
      0.755404408355003,    0.86563120238783176,   0.9445750230732326,   0.98940093499164994};
  return x;
}

const std::array<double, 16>& GaussLegendre16::weights() {
  static const std::array<double, 16> w = {
      0.027152459411754037, 0.062253523938647706, 0.095158511682492591, 0.12462897125553403,
      0.14959598881657676,  0.16915651939500262,  0.18260341504492361,  0.18945061045506859,
      0.18945061045506859,  0.18260341504492361,  0.16915651939500262,  0.14959598881657676,
      0.12462897125553403,  0.095158511682492591, 0.062253523938647706, 0.027152459411754037};
  return w;
}

void fritsch_carlson_limit(double delta, double& d0, double& d1) {
  if (delta == 0.0) {
    d0 = 0.0;
    d1 = 0.0;
    return;
  }
  double a = d0 / delta;
  double b = d1 / delta;
  if (a < 0.0) {
    d0 = 0.0;
    a = 0.0;
  }
  if (b < 0.0) {
    d1 = 0.0;
    b = 0.0;
  }
  const double r2 = a * a + b * b;
  if (r2 > 9.0) {
    const double tau = 3.0 / std::sqrt(r2);
    d0 = tau * a * delta;
    d1 = tau * b * delta;
  }
}

double lagrange_cubic(std::span<const double> v, double x_min, double h, double x) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n < 4) {
    // linear fallback on tiny grids
    const double s = std::clamp((x - x_min) / h, 0.0, static_cast<double>(n - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(s), n > 1 ? n - 2 : 0);
    if (n == 1) return v[0];
    const double t = s - static_cast<double>(i);
    return (1 - t) * v[i] + t * v[i + 1];
  }
  const double s = (x - x_min) / h;
  long i = static_cast<long>(std::floor(s));
  long start = std::clamp(i - 1, 0L, static_cast<long>(n) - 4);
  const double t = s - static_cast<double>(start);  // position relative to node `start`
  const double y0 = v[start], y1 = v[start + 1], y2 = v[start + 2], y3 = v[start + 3];
  const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  const double l1 = t * (t - 2) * (t - 3) / 2.0;
  const double l2 = -t * (t - 1) * (t - 3) / 2.0;
  const double l3 = t * (t - 1) * (t - 2) / 6.0;
  return l0 * y0 + l1 * y1 + l2 * y2 + l3 * y3;
}

double sup_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double sup_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorKind::domain, "sup_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace hsc
