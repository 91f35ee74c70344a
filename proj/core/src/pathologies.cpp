#include "hsc/pathologies.hpp"

#include <algorithm>
#include <cmath>

#include "hsc/descriptors.hpp"
#include "hsc/error.hpp"
#include "hsc/numerics.hpp"

namespace hsc {

Lemma157Report lemma157_profile(const std::vector<double>& ps, int n_max, int k_max, std::vector<int> schedule,
                                int n_min, int cell_intervals) {
  if (k_max < 1) fail(ErrorKind::domain, "lemma157: k_max must be >= 1");
  for (double p : ps)
    if (!(p >= 1.0)) fail(ErrorKind::domain, "lemma157: exponents must be >= 1");
  if (cell_intervals < 2 || cell_intervals % 2 != 0) fail(ErrorKind::domain, "lemma157: cell_intervals must be even");
  const BumpTrain train = BumpTrain::logarithmic(n_min, n_max);
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::remove_if(schedule.begin(), schedule.end(), [&](int N) { return N < n_min || N > n_max; }),
                 schedule.end());

  Lemma157Report rep;
  rep.n_min = n_min;
  rep.n_max = n_max;
  rep.schedule = schedule;
  rep.chi_prime_l1 = bump::lp_norm(1, 1.0);

  // exponents: the requested table plus p = 1 for the L^1 columns
  std::vector<double> exps = ps;
  if (std::find(exps.begin(), exps.end(), 1.0) == exps.end()) exps.push_back(1.0);
  const std::size_t ne = exps.size();
  // mass[k][e][n - n_min]
  std::vector<std::vector<std::vector<double>>> mass(
      static_cast<std::size_t>(k_max) + 1,
      std::vector<std::vector<double>>(ne, std::vector<double>(static_cast<std::size_t>(n_max - n_min + 1), 0.0)));

  std::vector<double> samples(static_cast<std::size_t>(cell_intervals) + 1);
  for (int n = n_min; n <= n_max; ++n) {
    // the summand vanishes on the cell outside |x - 2n| <= 1/lambda_n
    const double half = 1.0 / train.dilation(n);
    const double hc = 2.0 * half / cell_intervals;
    for (int k = 0; k <= k_max; ++k) {
      for (int i = 0; i <= cell_intervals; ++i) {
        const double x = 2.0 * n - half + i * hc;
        samples[static_cast<std::size_t>(i)] = train.derivative(k, x);
      }
      if (k == 0)
        for (double v : samples)
          if (v < 0.0) rep.nonnegative = false;
      for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double> w(samples.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(std::abs(samples[i]), exps[e]);
        mass[static_cast<std::size_t>(k)][e][static_cast<std::size_t>(n - n_min)] = simpson(w, hc);
      }
    }
  }

  auto windowed = [&](int k, std::size_t e, int N) {
    double s = 0.0;
    for (int n = n_min; n <= N; ++n) s += mass[static_cast<std::size_t>(k)][e][static_cast<std::size_t>(n - n_min)];
    return s;
  };
  for (int k = 0; k <= k_max; ++k) {
    for (std::size_t e = 0; e < ps.size(); ++e) {
      const double p = ps[e];
      NormTableRow row;
      row.k = k;
      row.p = p;
      row.convergent = p > 1.0;
      const double chi = std::pow(bump::lp_norm(k, p), p);
      double s = 0.0;
      for (int n = n_min; n <= n_max; ++n) {
        const double ln = std::log(static_cast<double>(n));
        s += std::pow(ln, k * p - 1.0) / std::pow(static_cast<double>(n), p);
      }
      row.series = chi * s;
      row.quadrature = windowed(k, e, n_max);
      row.rel_gap = std::abs(row.quadrature - row.series) / std::max(row.series, 1e-300);
      rep.rows.push_back(row);
    }
  }
  const std::size_t e1 = static_cast<std::size_t>(std::find(exps.begin(), exps.end(), 1.0) - exps.begin());
  for (int N : schedule) {
    rep.l1_prime.push_back(windowed(1, e1, N));
    rep.l1_phi.push_back(windowed(0, e1, N));
    double tr = 0.0, full = 0.0;
    for (int n = 1; n <= N; ++n) {
      full += 1.0 / n;
      if (n >= n_min) tr += 1.0 / n;
    }
    rep.train_harmonic.push_back(rep.chi_prime_l1 * tr);
    rep.full_harmonic.push_back(rep.chi_prime_l1 * full);
  }
  return rep;
}

DivergenceReport halflie_divergence(double p, int n_max, std::vector<int> schedule, int cell_intervals) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::domain, "halflie: p must lie in (1, infinity)");
  if (n_max < 3) fail(ErrorKind::domain, "halflie: n_max must be >= 3");
  if (cell_intervals < 2 || cell_intervals % 2 != 0) fail(ErrorKind::domain, "halflie: cell_intervals must be even");
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::remove_if(schedule.begin(), schedule.end(), [&](int N) { return N < 1 || N > n_max; }),
                 schedule.end());
  const auto b = halflie_coefficients(n_max);

  // Every cell uses the same local grid u in [-1, 1] because dilations are 1.
  const std::size_t m = static_cast<std::size_t>(cell_intervals) + 1;
  const double hc = 2.0 / cell_intervals;
  std::vector<double> chi(m), dchi(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = -1.0 + static_cast<double>(i) * hc;
    chi[i] = bump::value(u);
    dchi[i] = bump::derivative(1, u);
  }
  const auto X = cumulative_simpson(chi, hc);  // prefix quadrature of chi on a cell
  const double chi_l1_quad = X.back();
  const double chi_l1 = bump::l1_norm();

  DivergenceReport rep;
  rep.p = p;
  std::vector<double> m1(static_cast<std::size_t>(n_max) + 1, 0.0), m2(m1.size(), 0.0);
  double theta_left = 0.0;  // theta_a(2n - 1) by prefix quadrature
  double harmonic = 0.0;
  rep.lower_bound_min_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> w1(m), w2(m);
  for (int n = 1; n <= n_max; ++n) {
    const double a = 1.0 / n;
    const double bn = b[static_cast<std::size_t>(n)];
    if (bn != 0.0) {
      for (std::size_t i = 0; i < m; ++i) {
        const double theta = theta_left + a * X[i];
        w1[i] = std::pow(std::abs(bn * dchi[i] * theta), p);
        w2[i] = std::pow(std::abs(bn * chi[i] * a * chi[i]), p);
      }
      m1[static_cast<std::size_t>(n)] = simpson(w1, hc);
      m2[static_cast<std::size_t>(n)] = simpson(w2, hc);
      rep.lower_bound_min_ratio =
          std::min(rep.lower_bound_min_ratio, bn * theta_left / (chi_l1 * bn * std::log(static_cast<double>(n))));
    }
    theta_left += a * chi_l1_quad;
    harmonic += a;
    rep.theta_max_rel_error = std::max(rep.theta_max_rel_error, std::abs(theta_left - chi_l1 * harmonic) / (chi_l1 * harmonic));
  }

  for (int N : schedule) {
    DivergenceRow row;
    row.N = N;
    row.window_right_edge = 2.0 * N + 1.0;
    for (int n = 1; n <= N; ++n) {
      row.term1_mass += m1[static_cast<std::size_t>(n)];
      row.term2_mass += m2[static_cast<std::size_t>(n)];
      if (b[static_cast<std::size_t>(n)] != 0.0) ++row.selected;
    }
    rep.rows.push_back(row);
  }
  rep.term1_increasing = rep.rows.size() >= 2;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].term1_mass > rep.rows[i - 1].term1_mass)) rep.term1_increasing = false;
  if (!rep.rows.empty() && rep.rows.front().term1_mass > 0.0)
    rep.term1_growth = rep.rows.back().term1_mass / rep.rows.front().term1_mass;

  // c in mass(K) ~ c K over all prefixes K of the selected indices
  std::vector<double> ks, ms;
  double acc = 0.0;
  int count = 0;
  for (int n = 1; n <= n_max; ++n) {
    if (b[static_cast<std::size_t>(n)] == 0.0) continue;
    acc += m1[static_cast<std::size_t>(n)];
    ++count;
    ks.push_back(count);
    ms.push_back(acc);
  }
  rep.fitted_c = ks.size() >= 2 ? fit_line(ks, ms).slope : (ks.empty() ? 0.0 : ms[0]);

  double base = 0.0;
  for (int n = 1; n <= std::min(1000, n_max); ++n) base += m2[static_cast<std::size_t>(n)];
  for (const auto& row : rep.rows)
    if (row.N > 1000) rep.term2_increment = std::max(rep.term2_increment, std::abs(row.term2_mass - base));
  return rep;
}

MuReport gevrey_mu_sequence(const WeightSequence& M, int k_max) {
  if (k_max < 1 || k_max > M.kmax()) fail(ErrorKind::domain, "gevrey_mu: k_max must lie in 1..kmax(M)");
  if (!check_conditions(M).hypothesis_bundle)
    fail(ErrorKind::domain, "gevrey_mu: M must be normalized, log-convex and of moderate growth");
  MuReport r;
  r.k_max = k_max;
  const auto lf = log_factorials(static_cast<std::size_t>(k_max));
  r.log_mu.resize(static_cast<std::size_t>(k_max) + 1);
  r.log_r.assign(r.log_mu.size(), 0.0);
  r.log_kr.assign(r.log_mu.size(), 0.0);
  for (int k = 0; k <= k_max; ++k)
    r.log_mu[k] = k * std::log(2.0) + 0.5 * lf[k] + M.log_value(k);
  r.r_decreasing = r.kr_increasing = r.spacing_ok = true;
  for (int k = 1; k <= k_max; ++k) {
    r.log_r[k] = (r.log_mu[k] - lf[k] - M.log_value(k)) / k;
    r.log_kr[k] = std::log(static_cast<double>(k)) + r.log_r[k];
    if (k >= 2) {
      if (!(r.log_r[k] < r.log_r[k - 1])) r.r_decreasing = false;
      if (!(r.log_kr[k] > r.log_kr[k - 1])) r.kr_increasing = false;
    }
  }
  for (int k = 0; k < k_max; ++k) {
    // log(mu_{k+1} - mu_k) = log mu_k + log(expm1(delta)) >= 0
    const double delta = r.log_mu[k + 1] - r.log_mu[k];
    if (!(delta > 0.0) || r.log_mu[k] + std::log(std::expm1(delta)) < 0.0) r.spacing_ok = false;
  }
  r.r4 = k_max >= 4 ? std::exp(r.log_r[4]) : 0.0;
  return r;
}

}  // namespace hsc
