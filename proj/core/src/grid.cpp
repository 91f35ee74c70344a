#include "hsc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "hsc/error.hpp"
#include "hsc/numerics.hpp"

namespace hsc {

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::none: return "none";
    case DecayClass::B: return "B";
    case DecayClass::W: return "W";
    case DecayClass::S: return "S";
    case DecayClass::D: return "D";
  }
  return "none";
}

DecayClass decay_class_from_string(const std::string& s) {
  if (s == "none" || s.empty()) return DecayClass::none;
  if (s == "B") return DecayClass::B;
  if (s == "W" || s == "W^p") return DecayClass::W;
  if (s == "S") return DecayClass::S;
  if (s == "D") return DecayClass::D;
  fail(ErrorKind::domain, "unknown decay class: " + s);
}

UniformGrid::UniformGrid(double x_min, double x_max, double h) : x_min_(x_min), x_max_(x_max), h_(h) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    fail(ErrorKind::domain, "grid window must be finite and non-degenerate");
  if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::domain, "grid step must be > 0");
  const double cells = (x_max - x_min) / h;
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
    fail(ErrorKind::domain, "window length is not an integer multiple of the step");
  n_ = static_cast<std::size_t>(rounded) + 1;
  h_ = (x_max - x_min) / rounded;
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = x(i);
  return out;
}

std::size_t UniformGrid::cell(double x) const noexcept {
  const double s = (x - x_min_) / h_;
  if (!(s > 0.0)) return 0;
  const auto i = static_cast<std::size_t>(s);
  return std::min(i, n_ - 2);
}

namespace {

struct Stencil {
  int start;                  // offset of the first node relative to the target
  std::vector<double> weights;  // for unit spacing
};

// Stencils for derivative k and accuracy a, keyed by the node's distance to
// the nearest end (capped at the half width).
const std::vector<Stencil>& stencils(int k, int accuracy) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Stencil>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = cache[{k, accuracy}];
  if (!entry.empty()) return entry;
  const int m = (k + 1) / 2 + accuracy / 2 - 1;
  for (int d = 0; d <= m; ++d) {
    Stencil s;
    std::vector<double> nodes;
    if (d == m) {
      s.start = -m;
      for (int j = -m; j <= m; ++j) nodes.push_back(j);
    } else {
      // d nodes available on the near side; one extra node keeps the order.
      s.start = -d;
      for (int j = -d; j <= 2 * m + 1 - d; ++j) nodes.push_back(j);
    }
    s.weights = fornberg_weights(0.0, nodes, k);
    entry.push_back(std::move(s));
  }
  return entry;
}

}  // namespace

std::vector<double> finite_difference(const std::vector<double>& v, double h, int k, int accuracy) {
  const auto n = static_cast<long>(v.size());
  if (k == 0) return v;
  const auto& st = stencils(k, accuracy);
  const int m = static_cast<int>(st.size()) - 1;
  if (n < 2 * m + 2) fail(ErrorKind::domain, "grid too short for the finite-difference stencil");
  const double scale = std::pow(h, -k);
  std::vector<double> out(v.size(), 0.0);
  for (long i = 0; i < n; ++i) {
    const long near = std::min(i, n - 1 - i);
    const auto& s = st[static_cast<std::size_t>(std::min<long>(near, m))];
    const bool mirrored = i > n - 1 - i && near < m;
    double acc = 0.0;
    const long len = static_cast<long>(s.weights.size());
    for (long j = 0; j < len; ++j) {
      // Right-end stencils are the left ones reflected; odd k flips sign.
      const long idx = mirrored ? i - (s.start + j) : i + s.start + j;
      acc += s.weights[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(idx)];
    }
    if (mirrored && (k % 2 == 1)) acc = -acc;
    out[static_cast<std::size_t>(i)] = acc * scale;
  }
  return out;
}

double lp_norm(const std::vector<double>& values, double h, double p) {
  if (p <= 0.0 || std::isinf(p)) return sup_abs(values);
  std::vector<double> w(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) w[i] = std::pow(std::abs(values[i]), p);
  const double s = simpson(w, h);
  return s > 0.0 ? std::pow(s, 1.0 / p) : 0.0;
}

GridFunction::GridFunction(UniformGrid grid, std::vector<double> values, DecayClass claim)
    : grid_(grid), values_(std::move(values)), claim_(claim) {
  if (values_.size() != grid_.size()) fail(ErrorKind::domain, "sample count does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) fail(ErrorKind::domain, "samples must be finite");
}

GridFunction& GridFunction::with_slopes(std::vector<double> slopes) {
  if (slopes.size() != values_.size()) fail(ErrorKind::domain, "slope count does not match the grid");
  slopes_ = std::move(slopes);
  return *this;
}

GridFunction& GridFunction::with_oracle(DerivativeOracle oracle, int max_order) {
  oracle_ = std::move(oracle);
  oracle_order_ = max_order;
  return *this;
}

GridFunction& GridFunction::with_fd_order(int order) {
  if (order < 4 || order % 2 != 0) fail(ErrorKind::domain, "finite-difference order must be even and >= 4");
  fd_order_ = order;
  return *this;
}

const std::vector<double>& GridFunction::slopes() const {
  if (!slopes_.empty()) return slopes_;
  if (fd_slopes_.empty()) {
    if (oracle_ && oracle_order_ >= 1) {
      std::vector<double> d(values_.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = oracle_(1, grid_.x(i));
      fd_slopes_ = std::move(d);
    } else {
      fd_slopes_ = finite_difference(values_, grid_.step(), 1, fd_order_);
    }
  }
  return fd_slopes_;
}

double GridFunction::fd_noise_ratio(int k) const {
  return std::numeric_limits<double>::epsilon() * std::pow(grid_.step(), -k);
}

std::vector<double> GridFunction::derivative_samples(int k) const {
  if (k < 0) fail(ErrorKind::domain, "derivative order must be >= 0");
  if (k == 0) return values_;
  if (oracle_ && k <= oracle_order_) {
    std::vector<double> d(values_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = oracle_(k, grid_.x(i));
    return d;
  }
  if (k == 1 && !slopes_.empty()) return slopes_;
  if (fd_noise_ratio(k) > 1e-6)
    fail(ErrorKind::precision, "finite-difference derivative of order " + std::to_string(k) +
                                   " is dominated by round-off at this step");
  return finite_difference(values_, grid_.step(), k, fd_order_);
}

void GridFunction::limited_slopes(std::size_t i, double& d0, double& d1) const {
  const auto& s = slopes();
  d0 = s[i];
  d1 = s[i + 1];
  const double delta = 1.0 + (values_[i + 1] - values_[i]) / grid_.step();
  if (delta <= 0.0) return;
  double p0 = 1.0 + d0, p1 = 1.0 + d1;
  const double a = p0 / delta, b = p1 / delta;
  if (a >= 0.0 && b >= 0.0 && a * a + b * b <= 9.0) return;
  fritsch_carlson_limit(delta, p0, p1);
  d0 = p0 - 1.0;
  d1 = p1 - 1.0;
}

std::optional<std::size_t> GridFunction::snap(double x) const {
  const double s = (x - grid_.x_min()) / grid_.step();
  const double r = std::round(s);
  if (std::abs(s - r) > 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s)) || r < 0.0 || r > static_cast<double>(grid_.size() - 1))
    return std::nullopt;
  return static_cast<std::size_t>(r);
}

double GridFunction::eval(double x) const {
  if (x < grid_.x_min() || x > grid_.x_max()) {
    if (claim_ == DecayClass::W || claim_ == DecayClass::S || claim_ == DecayClass::D) return 0.0;
    return x < grid_.x_min() ? values_.front() : values_.back();
  }
  if (auto node = snap(x)) return values_[*node];
  const std::size_t i = grid_.cell(x);
  const double h = grid_.step();
  const double t = (x - grid_.x(i)) / h;
  double d0, d1;
  limited_slopes(i, d0, d1);
  return hermite_cubic(t, h, values_[i], values_[i + 1], d0, d1);
}

double GridFunction::eval_slope(double x) const {
  if (x < grid_.x_min() || x > grid_.x_max()) return 0.0;
  if (auto node = snap(x)) return slopes()[*node];
  const std::size_t i = grid_.cell(x);
  const double h = grid_.step();
  const double t = (x - grid_.x(i)) / h;
  double d0, d1;
  limited_slopes(i, d0, d1);
  return hermite_cubic_slope(t, h, values_[i], values_[i + 1], d0, d1);
}

std::optional<std::pair<double, double>> GridFunction::support() const {
  std::size_t lo = values_.size(), hi = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) {
      lo = std::min(lo, i);
      hi = i;
    }
  }
  if (lo == values_.size()) return std::nullopt;
  return std::make_pair(grid_.x(lo), grid_.x(hi));
}

double GridFunction::sup_abs() const { return hsc::sup_abs(values_); }

double GridFunction::boundary_magnitude() const {
  return std::max(std::abs(values_.front()), std::abs(values_.back()));
}

GridFunction GridFunction::scaled(double lambda) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = lambda * values_[i];
  GridFunction out(grid_, std::move(v), claim_);
  out.fd_order_ = fd_order_;
  if (!slopes_.empty()) {
    std::vector<double> s(slopes_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = lambda * slopes_[i];
    out.slopes_ = std::move(s);
  }
  if (oracle_) {
    auto inner = oracle_;
    out.with_oracle([inner, lambda](int k, double x) { return lambda * inner(k, x); }, oracle_order_);
  }
  return out;
}

}  // namespace hsc
