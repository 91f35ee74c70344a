#include "hsc/jets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "hsc/numerics.hpp"

namespace hsc {

namespace {

// Decimal integer with optional sign. cpp_int's string constructor treats a
// leading 0 as octal, so the digits are normalized first.
boost::multiprecision::cpp_int decimal_integer(std::string s, const std::string& text) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(ErrorKind::domain, "malformed rational literal: " + text);
  const auto first = s.find_first_not_of('0');
  s = first == std::string::npos ? "0" : s.substr(first);
  boost::multiprecision::cpp_int v(s);
  return negative ? boost::multiprecision::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorKind::domain, "empty rational literal");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      const cpp_int p = decimal_integer(s.substr(0, slash), text);
      const cpp_int q = decimal_integer(s.substr(slash + 1), text);
      if (q == 0) fail(ErrorKind::domain, "rational literal with zero denominator");
      return Rational(p, q);
    }
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      exponent = std::stoi(s.substr(e + 1));
      s = s.substr(0, e);
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      s = s.substr(1);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      exponent -= static_cast<int>(s.size() - dot - 1);
    } else {
      digits = s;
    }
    if (digits.empty() || digits[0] == '-' || digits[0] == '+') fail(ErrorKind::domain, "malformed rational literal: " + text);
    Rational v{decimal_integer(digits, text)};
    const cpp_int ten_pow = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::abs(exponent)));
    v = exponent >= 0 ? v * Rational(ten_pow) : v / Rational(ten_pow);
    return negative ? Rational(-v) : v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::domain, "malformed rational literal: " + text);
  }
}

std::string to_string(const Rational& v) { return v.str(); }

namespace detail {

namespace {
void partitions_rec(int remaining, int max_part, std::vector<int>& mult,
                    const std::function<void(const std::vector<int>&)>& visit) {
  if (remaining == 0) {
    visit(mult);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++mult[part];
    partitions_rec(remaining - part, part, mult, visit);
    --mult[part];
  }
}
}  // namespace

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> mult(static_cast<std::size_t>(n) + 1, 0);
  partitions_rec(n, n, mult, visit);
}

}  // namespace detail

namespace series {

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  const int degree = static_cast<int>(std::min(a.size(), b.size())) - 1;
  return detail::multiply<double>(a, b, degree);
}

std::vector<double> reciprocal(std::span<const double> a) {
  if (a.empty() || a[0] == 0.0) fail(ErrorKind::singular, "series reciprocal of a zero constant term");
  std::vector<double> r(a.size(), 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += a[k] * r[n - k];
    r[n] = -acc * r[0];
  }
  return r;
}

std::vector<double> exp(std::span<const double> a) {
  std::vector<double> b(a.size(), 0.0);
  if (a.empty()) return b;
  b[0] = std::exp(a[0]);
  for (std::size_t n = 1; n < a.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * a[k] * b[n - k];
    b[n] = acc / static_cast<double>(n);
  }
  return b;
}

}  // namespace series

std::vector<double> bump_taylor(double u0, int degree) {
  std::vector<double> out(static_cast<std::size_t>(degree) + 1, 0.0);
  if (std::abs(u0) >= 1.0) return out;
  std::vector<double> q(out.size(), 0.0);  // 1 - u^2 around u0
  q[0] = 1.0 - u0 * u0;
  if (degree >= 1) q[1] = -2.0 * u0;
  if (degree >= 2) q[2] = -1.0;
  auto r = series::reciprocal(q);
  for (double& v : r) v = -v;
  auto e = series::exp(r);
  for (std::size_t k = 0; k < e.size(); ++k) out[k] = std::exp(1.0) * e[k];
  return out;
}

MajorantSeries<double> majorant_series(double A, double C, double rho, const WeightSequence& m, int N) {
  if (m.kmax() < N - 1) fail(ErrorKind::domain, "majorant_series: weight sequence too short");
  std::vector<double> values(static_cast<std::size_t>(m.kmax()) + 1);
  for (int k = 0; k <= m.kmax(); ++k) values[k] = m.value(k);
  return majorant_series<double>(A, C, rho, values, N);
}

std::vector<Rational> exact_weights(const WeightSequence& m) {
  using boost::multiprecision::cpp_int;
  const auto& gen = m.generator();
  std::vector<Rational> out(static_cast<std::size_t>(m.kmax()) + 1, Rational(1));
  switch (gen.kind) {
    case Generator::Kind::constant_one:
      return out;
    case Generator::Kind::gevrey: {
      const double s = gen.s;
      if (s != std::floor(s)) fail(ErrorKind::domain, "exact weights need an integer gevrey order");
      const unsigned e = static_cast<unsigned>(s - 1.0);
      cpp_int fact = 1;
      for (int k = 0; k <= m.kmax(); ++k) {
        if (k > 0) fact *= k;
        out[k] = Rational(boost::multiprecision::pow(fact, e));
      }
      return out;
    }
    case Generator::Kind::custom:
      for (int k = 0; k <= m.kmax(); ++k) {
        const double v = gen.values.at(static_cast<std::size_t>(k));
        if (v != std::floor(v) || v > 9007199254740992.0)
          fail(ErrorKind::domain, "exact weights need integer custom entries");
        out[k] = Rational(cpp_int(static_cast<long long>(v)));
      }
      return out;
    case Generator::Kind::explicit_log:
      break;
  }
  fail(ErrorKind::domain, "exact weights are unavailable for explicit log sequences");
}

std::vector<double> fdb_bound_lhs(double A, const WeightSequence& m, int gamma_max) {
  if (!(A > 0.0)) fail(ErrorKind::domain, "fdb_bound: A must be > 0");
  if (gamma_max < 1 || gamma_max > m.kmax()) fail(ErrorKind::domain, "fdb_bound: gamma_max outside 1..kmax");
  std::vector<double> lhs(static_cast<std::size_t>(gamma_max) + 1, 0.0);
  lhs[0] = m.value(0);
  const auto lf = log_factorials(static_cast<std::size_t>(gamma_max));

  for (int gamma = 1; gamma <= std::min(gamma_max, kPartitionDegreeCap); ++gamma) {
    double acc = 0.0;
    detail::for_each_partition(gamma, [&](const std::vector<int>& k) {
      int alpha = 0;
      double log_term = 0.0;
      for (int i = 1; i <= gamma; ++i) {
        if (k[i] == 0) continue;
        alpha += k[i];
        log_term += k[i] * m.log_value(i) - lf[k[i]];
      }
      log_term += lf[alpha] + alpha * std::log(A) + m.log_value(alpha);
      acc += std::exp(log_term);
    });
    lhs[gamma] = acc;
  }
  if (gamma_max > kPartitionDegreeCap) {
    // [x^gamma] (sum_i M_i x^i)^alpha, accumulated power by power.
    std::vector<double> base(static_cast<std::size_t>(gamma_max) + 1, 0.0);
    for (int i = 1; i <= gamma_max; ++i) base[i] = m.value(i);
    std::vector<double> power = base;
    std::vector<double> tail(lhs.size(), 0.0);
    for (int alpha = 1; alpha <= gamma_max; ++alpha) {
      if (alpha > 1) power = detail::multiply<double>(power, base, gamma_max);
      const double scale = std::exp(alpha * std::log(A) + m.log_value(alpha));
      for (int gamma = std::max(alpha, kPartitionDegreeCap + 1); gamma <= gamma_max; ++gamma)
        tail[gamma] += scale * power[gamma];
    }
    for (int gamma = kPartitionDegreeCap + 1; gamma <= gamma_max; ++gamma) lhs[gamma] = tail[gamma];
  }
  for (double v : lhs)
    if (!std::isfinite(v)) fail(ErrorKind::domain, "fdb_bound: sum overflows double; lower gamma_max");
  return lhs;
}

namespace {

struct BoundFit {
  double B, C;
};

BoundFit fit_bound(std::span<const double> lhs, const WeightSequence& m) {
  const int gamma_max = static_cast<int>(lhs.size()) - 1;
  std::vector<double> xs, ys;
  for (int g = std::max(1, gamma_max / 2); g <= gamma_max; ++g) {
    xs.push_back(g);
    ys.push_back(std::log(lhs[g]) - m.log_value(g));
  }
  const double log_c = xs.size() >= 2 ? fit_line(xs, ys).slope : ys.front();
  double log_b = -std::numeric_limits<double>::infinity();
  for (int g = 1; g <= gamma_max; ++g)
    log_b = std::max(log_b, std::log(lhs[g]) - m.log_value(g) - g * log_c);
  return {std::exp(log_b), std::exp(log_c)};
}

}  // namespace

FdbBoundReport fdb_bound_check(double A, const WeightSequence& m, int gamma_max) {
  FdbBoundReport r;
  r.A = A;
  r.lhs = fdb_bound_lhs(A, m, gamma_max);
  r.normalized.resize(r.lhs.size());
  for (std::size_t g = 0; g < r.lhs.size(); ++g) r.normalized[g] = r.lhs[g] / m.value(static_cast<int>(g));
  const auto fit = fit_bound(r.lhs, m);
  r.fitted_B = fit.B;
  r.fitted_C = fit.C;
  r.c_decreases = true;
  double a = A;
  for (int i = 0; i < 4; ++i, a /= 10.0) {
    const double c = i == 0 ? fit.C : fit_bound(fdb_bound_lhs(a, m, gamma_max), m).C;
    if (!r.scan_C.empty() && !(c < r.scan_C.back())) r.c_decreases = false;
    r.scan_A.push_back(a);
    r.scan_C.push_back(c);
  }
  return r;
}

}  // namespace hsc
