#include "hsc/descriptors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hsc/error.hpp"
#include "hsc/jets.hpp"
#include "hsc/numerics.hpp"

namespace hsc {

namespace bump {

double value(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double derivative(int k, double u) {
  if (k == 0) return value(u);
  if (!(std::abs(u) < 1.0)) return 0.0;
  if (k > 15) {
    const auto c = bump_taylor(u, k);
    return std::tgamma(k + 1.0) * c[static_cast<std::size_t>(k)];
  }
  // Same series as bump_taylor on the stack: r = -1/(1 - u^2), chi = e exp(r).
  std::array<double, 16> q{}, r{}, b{};
  q[0] = 1.0 - u * u;
  q[1] = -2.0 * u;
  if (k >= 2) q[2] = -1.0;
  r[0] = 1.0 / q[0];
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= std::min(n, 2); ++j) acc += q[j] * r[n - j];
    r[n] = -acc * r[0];
  }
  for (int n = 0; n <= k; ++n) r[n] = -r[n];
  b[0] = std::exp(1.0 + r[0]);
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += j * r[j] * b[n - j];
    b[n] = acc / n;
  }
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return fact * b[k];
}

double primitive(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return l1_norm();
  const int panels = std::max(1, static_cast<int>(std::ceil(8.0 * (u + 1.0))));
  return gauss_legendre([](double s) { return value(s); }, -1.0, u, panels);
}

double l1_norm() {
  static const double norm = gauss_legendre([](double s) { return value(s); }, -1.0, 1.0, 64);
  return norm;
}

double lp_norm(int k, double p) {
  const double integral =
      gauss_legendre([&](double s) { return std::pow(std::abs(derivative(k, s)), p); }, -1.0, 1.0, 400);
  return std::pow(integral, 1.0 / p);
}

}  // namespace bump

BumpTrain::BumpTrain(int n_min, std::vector<double> amplitudes, std::vector<double> dilations)
    : n_min_(n_min), amp_(std::move(amplitudes)), lambda_(std::move(dilations)) {
  if (n_min < 1) fail(ErrorKind::construction, "bump train indices start at n >= 1");
  if (amp_.empty() || amp_.size() != lambda_.size())
    fail(ErrorKind::construction, "bump train needs matching amplitudes and dilations");
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    // Support of summand n is [2n - 1/lambda, 2n + 1/lambda]; centers are 2 apart.
    if (!(lambda_[i] >= 1.0))
      fail(ErrorKind::construction, "bump train summand n = " + std::to_string(n_min + static_cast<int>(i)) +
                                        " has dilation < 1 and overlaps its neighbours");
  }
  prefix_.assign(amp_.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    prefix_[i] = acc;
    acc += amp_[i] * bump::l1_norm() / lambda_[i];
  }
}

BumpTrain BumpTrain::logarithmic(int n_min, int n_max) {
  if (n_max < n_min) fail(ErrorKind::construction, "bump train needs n_max >= n_min");
  std::vector<double> a, l;
  for (int n = n_min; n <= n_max; ++n) {
    a.push_back(1.0 / n);
    l.push_back(std::log(static_cast<double>(n)));
  }
  return BumpTrain(n_min, std::move(a), std::move(l));
}

BumpTrain BumpTrain::unit(int n_min, std::vector<double> amplitudes) {
  std::vector<double> l(amplitudes.size(), 1.0);
  return BumpTrain(n_min, std::move(amplitudes), std::move(l));
}

double BumpTrain::amplitude(int n) const {
  if (n < n_min_ || n > n_max()) return 0.0;
  return amp_[static_cast<std::size_t>(n - n_min_)];
}

double BumpTrain::dilation(int n) const {
  if (n < n_min_ || n > n_max()) return 1.0;
  return lambda_[static_cast<std::size_t>(n - n_min_)];
}

double BumpTrain::derivative(int k, double x) const {
  const long n = std::lround(x / 2.0);
  if (n < n_min_ || n > n_max()) return 0.0;
  const auto i = static_cast<std::size_t>(n - n_min_);
  if (amp_[i] == 0.0) return 0.0;
  const double l = lambda_[i];
  return amp_[i] * std::pow(l, k) * bump::derivative(k, l * (x - 2.0 * static_cast<double>(n)));
}

double BumpTrain::primitive(double x) const {
  long n = std::lround(x / 2.0);
  if (n < n_min_) return 0.0;
  if (n > n_max()) {
    const auto last = amp_.size() - 1;
    return prefix_[last] + amp_[last] * bump::l1_norm() / lambda_[last];
  }
  const auto i = static_cast<std::size_t>(n - n_min_);
  const double l = lambda_[i];
  return prefix_[i] + amp_[i] * bump::primitive(l * (x - 2.0 * static_cast<double>(n))) / l;
}

std::vector<double> halflie_coefficients(int n_max) {
  std::vector<double> b(static_cast<std::size_t>(std::max(n_max, 0)) + 1, 0.0);
  for (int k = 1;; ++k) {
    const double n = std::ceil(std::exp(static_cast<double>(k)));
    if (n > n_max) break;
    b[static_cast<std::size_t>(n)] = 1.0 / k;
  }
  return b;
}

FunctionDescriptor FunctionDescriptor::zero() { return {}; }

FunctionDescriptor FunctionDescriptor::gaussian(double amp, double center, double width) {
  FunctionDescriptor d;
  d.kind = Kind::gaussian_bump;
  d.amp = amp;
  d.center = center;
  d.width = width;
  return d;
}

FunctionDescriptor FunctionDescriptor::compact(double amp, double center, double width) {
  auto d = gaussian(amp, center, width);
  d.kind = Kind::compact_bump;
  return d;
}

FunctionDescriptor FunctionDescriptor::sine(double amp, double frequency, double phase) {
  FunctionDescriptor d;
  d.kind = Kind::sine;
  d.amp = amp;
  d.frequency = frequency;
  d.phase = phase;
  return d;
}

FunctionDescriptor FunctionDescriptor::samples(std::vector<double> x, std::vector<double> y) {
  FunctionDescriptor d;
  d.kind = Kind::custom;
  d.sample_x = std::move(x);
  d.sample_y = std::move(y);
  return d;
}

FunctionDescriptor FunctionDescriptor::lemma157(int n_min, int n_max) {
  FunctionDescriptor d;
  d.kind = Kind::lemma157;
  d.n_min = n_min;
  d.n_max = n_max;
  return d;
}

FunctionDescriptor FunctionDescriptor::theta(const std::string& rule, int n_max) {
  FunctionDescriptor d;
  d.kind = Kind::theta_series;
  d.rule = rule;
  d.n_min = 1;
  d.n_max = n_max;
  return d;
}

FunctionDescriptor FunctionDescriptor::sum(std::vector<FunctionDescriptor> terms) {
  FunctionDescriptor d;
  d.kind = Kind::sum;
  d.terms = std::move(terms);
  return d;
}

FunctionDescriptor FunctionDescriptor::antiderivative(FunctionDescriptor integrand) {
  FunctionDescriptor d;
  d.kind = Kind::antiderivative;
  d.terms.push_back(std::move(integrand));
  return d;
}

std::string to_string(FunctionDescriptor::Kind kind) {
  using K = FunctionDescriptor::Kind;
  switch (kind) {
    case K::zero: return "zero";
    case K::gaussian_bump: return "gaussian_bump";
    case K::compact_bump: return "compact_bump";
    case K::sine: return "sine";
    case K::custom: return "custom";
    case K::lemma157: return "lemma157";
    case K::theta_series: return "theta_series";
    case K::sum: return "sum";
    case K::antiderivative: return "antiderivative";
  }
  return "zero";
}

FunctionDescriptor::Kind descriptor_kind_from_string(const std::string& s) {
  using K = FunctionDescriptor::Kind;
  for (K k : {K::zero, K::gaussian_bump, K::compact_bump, K::sine, K::custom, K::lemma157, K::theta_series,
              K::sum, K::antiderivative})
    if (to_string(k) == s) return k;
  if (s == "gaussian") return K::gaussian_bump;
  if (s == "samples") return K::custom;
  if (s == "compact") return K::compact_bump;
  if (s == "theta") return K::theta_series;
  fail(ErrorKind::domain, "unknown function descriptor kind: " + s);
}

DecayClass natural_claim(const FunctionDescriptor& d) {
  using K = FunctionDescriptor::Kind;
  if (d.claim) return *d.claim;
  switch (d.kind) {
    case K::zero:
    case K::compact_bump: return DecayClass::D;
    case K::gaussian_bump: return DecayClass::S;
    case K::lemma157: return DecayClass::W;
    case K::sine:
    case K::theta_series:
    case K::antiderivative: return DecayClass::B;
    case K::custom: return DecayClass::none;
    case K::sum: {
      DecayClass weakest = DecayClass::D;
      // Enumerators are ordered from weakest (none) to strongest (D).
      for (const auto& t : d.terms) weakest = std::min(weakest, natural_claim(t));
      return weakest;
    }
  }
  return DecayClass::none;
}

namespace {

bool integrable(const FunctionDescriptor& d) {
  using K = FunctionDescriptor::Kind;
  switch (d.kind) {
    case K::zero:
    case K::gaussian_bump:
    case K::compact_bump:
    case K::lemma157: return true;
    case K::sum: return std::all_of(d.terms.begin(), d.terms.end(), integrable);
    default: return false;
  }
}

BumpTrain make_train(const FunctionDescriptor& d) {
  using K = FunctionDescriptor::Kind;
  if (d.kind == K::lemma157) return BumpTrain::logarithmic(d.n_min, d.n_max);
  if (d.rule == "harmonic") {
    std::vector<double> a;
    for (int n = d.n_min; n <= d.n_max; ++n) a.push_back(1.0 / n);
    return BumpTrain::unit(d.n_min, std::move(a));
  }
  if (d.rule == "halflie") {
    auto b = halflie_coefficients(d.n_max);
    return BumpTrain::unit(1, std::vector<double>(b.begin() + 1, b.end()));
  }
  fail(ErrorKind::domain, "unknown theta_series rule: " + d.rule);
}

// Physicists' Hermite polynomial H_k(u).
double hermite(int k, double u) {
  double h0 = 1.0, h1 = 2.0 * u;
  if (k == 0) return h0;
  for (int j = 1; j < k; ++j) {
    const double h2 = 2.0 * u * h1 - 2.0 * j * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double primitive_of(const FunctionDescriptor& d, double x) {
  using K = FunctionDescriptor::Kind;
  switch (d.kind) {
    case K::zero: return 0.0;
    case K::gaussian_bump: {
      const double u = (x - d.center) / d.width;
      return d.amp * d.width * 0.5 * std::sqrt(std::numbers::pi) * std::erfc(-u);
    }
    case K::compact_bump: return d.amp * d.width * bump::primitive((x - d.center) / d.width);
    case K::lemma157: return make_train(d).primitive(x);
    case K::sum: {
      double s = 0.0;
      for (const auto& t : d.terms) s += primitive_of(t, x);
      return s;
    }
    default: break;
  }
  fail(ErrorKind::domain, "antiderivative from -infinity needs an integrable integrand");
}

}  // namespace

bool is_analytic(const FunctionDescriptor& d) {
  using K = FunctionDescriptor::Kind;
  switch (d.kind) {
    case K::custom: return false;
    case K::sum: return std::all_of(d.terms.begin(), d.terms.end(), is_analytic);
    case K::antiderivative: return d.terms.size() == 1 && integrable(d.terms[0]);
    default: return true;
  }
}

double evaluate(const FunctionDescriptor& d, int k, double x) {
  using K = FunctionDescriptor::Kind;
  switch (d.kind) {
    case K::zero: return 0.0;
    case K::gaussian_bump: {
      const double u = (x - d.center) / d.width;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      return d.amp * sign * std::pow(d.width, -k) * hermite(k, u) * std::exp(-u * u);
    }
    case K::compact_bump:
      return d.amp * std::pow(d.width, -k) * bump::derivative(k, (x - d.center) / d.width);
    case K::sine:
      return d.amp * std::pow(d.frequency, k) * std::sin(d.frequency * x + d.phase + k * std::numbers::pi / 2);
    case K::lemma157: return make_train(d).derivative(k, x);
    case K::theta_series: {
      const auto train = make_train(d);
      return k == 0 ? train.primitive(x) : train.derivative(k - 1, x);
    }
    case K::sum: {
      double s = 0.0;
      for (const auto& t : d.terms) s += evaluate(t, k, x);
      return s;
    }
    case K::antiderivative:
      if (d.terms.size() != 1) fail(ErrorKind::domain, "antiderivative takes exactly one integrand");
      return k == 0 ? primitive_of(d.terms[0], x) : evaluate(d.terms[0], k - 1, x);
    case K::custom: break;
  }
  fail(ErrorKind::domain, "descriptor has no closed form: " + to_string(d.kind));
}

namespace {

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> resample(const FunctionDescriptor& d, const UniformGrid& grid) {
  const auto& xs = d.sample_x;
  const auto& ys = d.sample_y;
  if (xs.size() != ys.size() || xs.size() < 2) fail(ErrorKind::domain, "custom samples need matching x and f columns");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(h > 0.0)) fail(ErrorKind::domain, "custom sample abscissae must increase");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - (xs.front() + static_cast<double>(i) * h)) > 1e-9 * std::max(1.0, std::abs(xs[i])))
      fail(ErrorKind::domain, "custom samples must be uniformly spaced");
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    if (x < xs.front() - 1e-12 || x > xs.back() + 1e-12) continue;
    const double s = (x - xs.front()) / h;
    const double r = std::round(s);
    out[i] = std::abs(s - r) < 1e-9 ? ys[static_cast<std::size_t>(r)] : lagrange_cubic(ys, xs.front(), h, x);
  }
  return out;
}

}  // namespace

GridFunction grid_function(const FunctionDescriptor& d, const UniformGrid& grid, int kmax) {
  using K = FunctionDescriptor::Kind;
  const DecayClass claim = natural_claim(d);
  std::vector<double> values(grid.size(), 0.0);
  const bool analytic = is_analytic(d);
  std::optional<BumpTrain> train;
  if (d.kind == K::lemma157 || d.kind == K::theta_series) train = make_train(d);

  if (analytic && train && d.kind == K::theta_series) {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = train->primitive(grid.x(i));
  } else if (analytic && train) {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = train->value(grid.x(i));
  } else if (analytic) {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = evaluate(d, 0, grid.x(i));
  } else if (d.kind == K::custom) {
    values = resample(d, grid);
  } else if (d.kind == K::antiderivative && d.terms.size() == 1) {
    const auto integrand = grid_function(d.terms[0], grid, kmax);
    values = cumulative_simpson(integrand.values(), grid.step());
    GridFunction out(grid, std::move(values), claim);
    out.with_slopes(integrand.values());
    return out;
  } else if (d.kind == K::sum) {
    for (const auto& t : d.terms) {
      const auto part = grid_function(t, grid, kmax);
      for (std::size_t i = 0; i < values.size(); ++i) values[i] += part.value(i);
    }
  } else {
    fail(ErrorKind::domain, "cannot sample descriptor: " + to_string(d.kind));
  }

  GridFunction out(grid, std::move(values), claim);
  if (analytic) {
    if (train) {
      const bool theta = d.kind == K::theta_series;
      out.with_oracle([tr = *train, theta](int k, double x) {
        if (theta) return k == 0 ? tr.primitive(x) : tr.derivative(k - 1, x);
        return tr.derivative(k, x);
      }, kmax);
    } else {
      out.with_oracle([d](int k, double x) { return evaluate(d, k, x); }, kmax);
    }
  }

  if (claim == DecayClass::W || claim == DecayClass::S || claim == DecayClass::D) {
    const double peak = out.sup_abs();
    const double edge = out.boundary_magnitude();
    const bool too_small = claim == DecayClass::D ? edge != 0.0 : edge > 1e-8 * peak;
    if (too_small)
      fail(ErrorKind::domain, "window too small for the claimed decay class " + to_string(claim) +
                                  ": boundary magnitude " + format_g(edge));
  }
  return out;
}

}  // namespace hsc
