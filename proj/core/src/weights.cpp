#include "hsc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hsc/error.hpp"
#include "hsc/numerics.hpp"

namespace hsc {

std::string to_string(Generator::Kind kind) {
  switch (kind) {
    case Generator::Kind::explicit_log: return "explicit";
    case Generator::Kind::gevrey: return "gevrey";
    case Generator::Kind::constant_one: return "constant-one";
    case Generator::Kind::custom: return "custom";
  }
  return "unknown";
}

std::string to_string(Confidence c) {
  return c == Confidence::exact ? "exact" : "truncation-based";
}

WeightSequence::WeightSequence(Generator generator, std::vector<double> log_values)
    : generator_(std::move(generator)), log_values_(std::move(log_values)) {
  if (log_values_.empty()) fail(ErrorKind::domain, "weight sequence must contain M_0");
  for (double v : log_values_) {
    if (!std::isfinite(v)) fail(ErrorKind::domain, "weight sequence entries must be finite and positive");
  }
}

double WeightSequence::value(int k) const { return std::exp(log_value(k)); }

WeightSequence make_sequence(const Generator& generator, int kmax) {
  if (kmax < 1) fail(ErrorKind::domain, "kmax must be >= 1");
  std::vector<double> logs(static_cast<std::size_t>(kmax) + 1, 0.0);
  switch (generator.kind) {
    case Generator::Kind::constant_one:
      break;
    case Generator::Kind::gevrey: {
      if (!(generator.s >= 1.0)) fail(ErrorKind::domain, "gevrey order s must be >= 1");
      const auto lf = log_factorials(static_cast<std::size_t>(kmax));
      for (int k = 0; k <= kmax; ++k) logs[k] = (generator.s - 1.0) * lf[k];
      break;
    }
    case Generator::Kind::custom: {
      if (generator.values.size() < logs.size())
        fail(ErrorKind::domain, "custom sequence has fewer than kmax + 1 entries");
      for (int k = 0; k <= kmax; ++k) {
        const double v = generator.values[k];
        if (!(v > 0.0) || !std::isfinite(v))
          fail(ErrorKind::domain, "custom sequence entry M_" + std::to_string(k) + " is not positive");
        logs[k] = std::log(v);
      }
      break;
    }
    case Generator::Kind::explicit_log: {
      if (generator.values.size() < logs.size())
        fail(ErrorKind::domain, "explicit sequence has fewer than kmax + 1 entries");
      std::copy_n(generator.values.begin(), logs.size(), logs.begin());
      break;
    }
  }
  return WeightSequence(generator, std::move(logs));
}

namespace {

// Slack for comparisons in the log domain; absorbs round-off of summed logs.
double slack(double a, double b) {
  return 64 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)});
}

bool convex(std::span<const double> l) {
  for (std::size_t k = 1; k + 1 < l.size(); ++k) {
    const double lhs = 2 * l[k];
    const double rhs = l[k - 1] + l[k + 1];
    if (lhs > rhs + slack(lhs, rhs)) return false;
  }
  return true;
}

// Visits every composition of n into positive parts.
void for_each_composition(int n, std::vector<int>& parts, const std::function<void(const std::vector<int>&)>& visit) {
  if (n == 0) {
    visit(parts);
    return;
  }
  for (int first = 1; first <= n; ++first) {
    parts.push_back(first);
    for_each_composition(n - first, parts, visit);
    parts.pop_back();
  }
}

// Visits every partition of n as a multiplicity vector mult[1..n].
void for_each_partition(int n, int max_part, std::vector<int>& mult,
                        const std::function<void(const std::vector<int>&)>& visit) {
  if (n == 0) {
    visit(mult);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    ++mult[part];
    for_each_partition(n - part, part, mult, visit);
    --mult[part];
  }
}

RunningSupDiagnostic finish_running_sup(std::vector<double> log_terms, int first_order) {
  RunningSupDiagnostic d;
  d.first_order = first_order;
  double running = -std::numeric_limits<double>::infinity();
  std::vector<double> log_running(log_terms.size());
  for (std::size_t i = 0; i < log_terms.size(); ++i) {
    running = std::max(running, log_terms[i]);
    log_running[i] = running;
  }
  d.running_sup.resize(log_running.size());
  std::transform(log_running.begin(), log_running.end(), d.running_sup.begin(),
                 [](double v) { return std::exp(v); });
  d.sup = d.running_sup.empty() ? 0.0 : d.running_sup.back();
  const std::size_t n = log_running.size();
  if (n >= 4) {
    std::vector<double> xs, ys;
    for (std::size_t i = n / 2; i < n; ++i) {
      xs.push_back(std::log(static_cast<double>(i + first_order)));
      ys.push_back(log_running[i]);
    }
    d.tail_slope = fit_line(xs, ys).slope;
    d.bounded = std::isfinite(d.sup) && d.tail_slope < kTrendDelta;
  }
  return d;
}

}  // namespace

ConditionReport check_conditions(const WeightSequence& m) {
  const int kmax = m.kmax();
  if (kmax < 8) fail(ErrorKind::domain, "check_conditions needs kmax >= 8");
  const auto l = m.log_values();
  const auto lf = log_factorials(static_cast<std::size_t>(kmax));

  ConditionReport r;
  r.kmax = kmax;
  r.log_convex = convex(l);

  r.normalized = std::abs(l[0]) <= slack(l[0], 0.0) && l[1] >= -slack(l[1], 0.0);
  for (int k = 0; k < kmax && r.normalized; ++k) {
    if (l[k] > l[k + 1] + slack(l[k], l[k + 1])) r.normalized = false;
  }

  if (r.log_convex) {
    std::vector<double> weak(l.begin(), l.end());
    for (int k = 0; k <= kmax; ++k) weak[k] += lf[k];
    r.weakly_log_convex = convex(weak);

    bool root = true;
    for (int k = 1; k < kmax && root; ++k) {
      const double a = l[k] / k;
      const double b = l[k + 1] / (k + 1);
      if (a > b + slack(a, b)) root = false;
    }
    r.root_nondecreasing = root;

    bool superadd = true;
    for (int n = 2; n <= kmax && superadd; ++n) {
      for (int j = 1; j < n; ++j) {
        const double lhs = l[j] + l[n - j];
        if (lhs > l[n] + slack(lhs, l[n])) {
          superadd = false;
          break;
        }
      }
    }
    r.superadditive = superadd;

    bool comp = true;
    std::vector<int> parts;
    for (int k = 1; k <= std::min(kmax, 10); ++k) {
      for_each_composition(k, parts, [&](const std::vector<int>& alpha) {
        const int j = static_cast<int>(alpha.size());
        if (j > kmax) return;
        double rhs = l[j];
        for (int a : alpha) rhs += l[a];
        const double lhs = j * l[1] + l[k];
        if (lhs < rhs - slack(lhs, rhs)) comp = false;
      });
    }
    r.composition_bound = comp;

    bool part = true;
    for (int n = 1; n <= std::min(kmax, 10); ++n) {
      std::vector<int> mult(static_cast<std::size_t>(n) + 1, 0);
      for_each_partition(n, n, mult, [&](const std::vector<int>& km) {
        int k = 0;
        double rhs = 0.0;
        for (int i = 1; i <= n; ++i) {
          k += km[i];
          rhs += km[i] * l[i];
        }
        rhs += l[k];
        const double lhs = k * l[1] + l[n];
        if (lhs < rhs - slack(lhs, rhs)) part = false;
      });
    }
    r.partition_bound = part;
  }

  std::vector<double> dc;
  for (int k = 1; k < kmax; ++k) dc.push_back((l[k + 1] - l[k]) / k);
  r.derivation_closed = finish_running_sup(std::move(dc), 1);

  std::vector<double> mg;
  for (int n = 2; n <= kmax; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 1; j < n; ++j) best = std::max(best, (l[n] - l[j] - l[n - j]) / n);
    mg.push_back(best);
  }
  r.moderate_growth = finish_running_sup(std::move(mg), 2);

  double log_c = 0.0;
  const int quarter = kmax / 4;
  for (int j = 1; j <= quarter; ++j) {
    for (int k = 0; k <= quarter; ++k) {
      const double num = lf[k + j] + l[k + j] - lf[k] - l[k];
      log_c = std::max(log_c, num / (static_cast<double>(j) * (k + j)));
    }
  }
  r.derivation_constant = std::exp(log_c);

  {
    std::vector<double> xs, ys;
    bool increasing = true;
    for (int k = std::max(1, kmax / 2); k <= kmax; ++k) {
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(l[k] / k);
      if (ys.size() >= 2 && !(ys.back() > ys[ys.size() - 2])) increasing = false;
    }
    r.beurling_slope = fit_line(xs, ys).slope;
    const double gain = ys.back() - ys.front();
    r.beurling_eligible = increasing && gain > 1e-9 * std::max(1.0, std::abs(ys.back()));
  }

  r.hypothesis_bundle = r.normalized && r.log_convex && r.moderate_growth.bounded;
  return r;
}

QuasianalyticReport quasianalytic_diagnostic(const WeightSequence& m) {
  const int kmax = m.kmax();
  const auto l = m.log_values();
  const auto lf = log_factorials(static_cast<std::size_t>(kmax));
  {
    std::vector<double> weak(l.begin(), l.end());
    for (int k = 0; k <= kmax; ++k) weak[k] += lf[k];
    if (!convex(weak)) fail(ErrorKind::domain, "quasianalytic diagnostic needs a weakly log-convex sequence");
  }

  QuasianalyticReport r;
  std::vector<double> log_terms;
  double sum = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double lt = -(lf[k] + l[k]) / k;
    log_terms.push_back(lt);
    sum += std::exp(lt);
    r.partial_sums.push_back(sum);
  }
  r.total = sum;

  if (kmax >= 8) {
    std::vector<double> xs, ys, lnk, sk;
    for (int k = kmax / 2; k <= kmax; ++k) {
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(log_terms[k - 1]);
      sk.push_back(r.partial_sums[k - 1]);
    }
    r.tail_slope = fit_line(xs, ys).slope;
    r.quasianalytic = r.tail_slope > -1.0 - kTrendDelta;
    r.log_fit_coefficient = fit_line(xs, sk).slope;
  } else {
    r.tail_slope = std::numeric_limits<double>::quiet_NaN();
    r.log_fit_coefficient = std::numeric_limits<double>::quiet_NaN();
  }

  // (M_{k+1}/M_k) * sum_{l >= k} M_l / ((l+1) M_{l+1}), truncated at kmax - 1.
  std::vector<double> suffix(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (int ell = kmax - 1; ell >= 0; --ell)
    suffix[ell] = suffix[ell + 1] + std::exp(l[ell] - l[ell + 1]) / (ell + 1);
  double running = 0.0;
  for (int k = 0; k < kmax; ++k) {
    running = std::max(running, std::exp(l[k + 1] - l[k]) * suffix[k]);
    r.strong_nqa_running_sup.push_back(running);
  }
  r.strong_nqa_sup = running;
  return r;
}

}  // namespace hsc
