#include "hsc/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsc/error.hpp"
#include "hsc/numerics.hpp"

namespace hsc {

std::string to_string(SpaceClass c) {
  switch (c) {
    case SpaceClass::B: return "B";
    case SpaceClass::W: return "W";
    case SpaceClass::S: return "S";
    case SpaceClass::D: return "D";
  }
  return "B";
}

SpaceClass space_class_from_string(const std::string& s) {
  if (s == "B") return SpaceClass::B;
  if (s == "W" || s == "W^p") return SpaceClass::W;
  if (s == "S") return SpaceClass::S;
  if (s == "D") return SpaceClass::D;
  fail(ErrorKind::domain, "unknown space class: " + s);
}

namespace {

// log(rho^k k! M_k)
double log_weight(const WeightSequence& m, double rho, int k) {
  return k * std::log(rho) + std::lgamma(k + 1.0) + m.log_value(k);
}

}  // namespace

SeminormResult seminorm(const GridFunction& f, const SeminormQuery& q) {
  if (q.kmax < 1) fail(ErrorKind::domain, "seminorm: kmax must be >= 1");
  if (!(q.rho > 0.0)) fail(ErrorKind::domain, "seminorm: rho must be > 0");
  if (q.M.kmax() < q.kmax) fail(ErrorKind::domain, "seminorm: weight sequence shorter than kmax");
  const auto& grid = f.grid();
  SeminormResult r;
  r.x = grid.x_min();
  r.per_order.assign(static_cast<std::size_t>(q.kmax) + 1, 0.0);

  if (q.cls == SpaceClass::D) {
    if (f.boundary_magnitude() != 0.0)
      fail(ErrorKind::domain, "seminorm: class D needs samples vanishing at the window edges");
    r.support = f.support();
  }
  if (q.cls == SpaceClass::W && !(q.p >= 1.0)) fail(ErrorKind::domain, "seminorm: p must be >= 1");
  const WeightSequence& L = q.L ? *q.L : q.M;
  if (q.cls == SpaceClass::S && L.kmax() < q.pmax) fail(ErrorKind::domain, "seminorm: L shorter than pmax");

  std::vector<double> xs = grid.nodes();
  for (int k = 0; k <= q.kmax; ++k) {
    const auto d = f.derivative_samples(k);
    const double lw = log_weight(q.M, q.rho, k);
    double best = 0.0;
    int best_p = -1;
    double best_x = grid.x_min();
    switch (q.cls) {
      case SpaceClass::B:
      case SpaceClass::D: {
        for (std::size_t i = 0; i < d.size(); ++i)
          if (std::abs(d[i]) > best) {
            best = std::abs(d[i]);
            best_x = xs[i];
          }
        best = best > 0.0 ? std::exp(std::log(best) - lw) : 0.0;
        break;
      }
      case SpaceClass::W: {
        const double norm = lp_norm(d, grid.step(), q.p);
        best = norm > 0.0 ? std::exp(std::log(norm) - lw) : 0.0;
        best_x = std::numeric_limits<double>::quiet_NaN();
        break;
      }
      case SpaceClass::S: {
        for (int p = 0; p <= q.pmax; ++p) {
          const double lwp = lw + p * std::log(q.rho) + std::lgamma(p + 1.0) + L.log_value(p);
          for (std::size_t i = 0; i < d.size(); ++i) {
            const double v = std::pow(std::abs(xs[i]), p) * std::abs(d[i]);
            if (v <= 0.0) continue;
            const double qv = std::exp(std::log(v) - lwp);
            if (qv > best) {
              best = qv;
              best_p = p;
              best_x = xs[i];
            }
          }
        }
        break;
      }
    }
    r.per_order[static_cast<std::size_t>(k)] = best;
    if (best > r.value) {
      r.value = best;
      r.k = k;
      r.p_weight = best_p;
      r.x = best_x;
    }
  }
  if (q.cls == SpaceClass::W && r.value == 0.0) r.x = std::numeric_limits<double>::quiet_NaN();
  return r;
}

ClassDiagnostic class_diagnostic(const GridFunction& f, SeminormQuery q, const std::vector<double>& rho_grid) {
  if (rho_grid.empty()) fail(ErrorKind::domain, "class_diagnostic: empty rho grid");
  for (std::size_t i = 1; i < rho_grid.size(); ++i)
    if (!(rho_grid[i] > rho_grid[i - 1])) fail(ErrorKind::domain, "class_diagnostic: rho grid must increase strictly");
  ClassDiagnostic out;
  out.finite_at_all_rho = true;
  for (double rho : rho_grid) {
    q.rho = rho;
    const auto s = seminorm(f, q);
    ClassSweepEntry e;
    e.rho = rho;
    e.value = s.value;
    std::vector<double> ks, ls;
    for (int k = q.kmax / 2; k <= q.kmax; ++k) {
      const double v = s.per_order[static_cast<std::size_t>(k)];
      if (v > 0.0) {
        ks.push_back(k);
        ls.push_back(std::log(v));
      }
    }
    e.tail_slope = ks.size() >= 2 ? fit_line(ks, ls).slope : 0.0;
    e.finite = e.tail_slope <= kTrendDelta;
    if (!out.entries.empty()) {
      const double prev = out.entries.back().value;
      if (e.value > prev * (1.0 + 1e-12) + 1e-300) out.monotone = false;
    }
    out.finite_at_some_rho = out.finite_at_some_rho || e.finite;
    out.finite_at_all_rho = out.finite_at_all_rho && e.finite;
    out.entries.push_back(e);
  }
  if (!out.monotone) fail_invariant("rho_monotonicity", "seminorm increased along an increasing rho grid");
  return out;
}

InclusionReport inclusion_report(const GridFunction& f, double p, double q, int alpha) {
  if (!(p >= 1.0) || !(q > p)) fail(ErrorKind::domain, "inclusion_report: need 1 <= p < q");
  if (alpha < 0) fail(ErrorKind::domain, "inclusion_report: alpha must be >= 0");
  const double peak = f.sup_abs();
  if (f.boundary_magnitude() > 1e-8 * peak)
    fail(ErrorKind::domain, "inclusion_report: function does not decay inside the window");
  const auto& grid = f.grid();
  const double h = grid.step();
  InclusionReport r;
  r.alpha = alpha;
  if (peak == 0.0) return r;

  const auto da = f.derivative_samples(alpha);
  r.weight_constant = std::pow(2.0 / (2.0 * p - 1.0), 1.0 / p);
  r.weighted_lhs = lp_norm(da, h, p);
  double wsup = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double w = 1.0 + std::abs(grid.x(i));
    wsup = std::max(wsup, w * w * std::abs(da[i]));
  }
  r.weighted_rhs = r.weight_constant * wsup;
  r.weighted_ratio = r.weighted_rhs > 0.0 ? r.weighted_lhs / r.weighted_rhs : 0.0;

  r.sobolev_order = static_cast<int>(std::floor(1.0 / p)) + 1;
  r.sobolev_sup = peak;
  for (int j = 0; j <= r.sobolev_order; ++j) r.sobolev_norm += lp_norm(f.derivative_samples(j), h, p);
  r.sobolev_ratio = r.sobolev_sup / r.sobolev_norm;

  r.interp_lhs = lp_norm(f.values(), h, q);
  r.interp_rhs = std::pow(lp_norm(f.values(), h, p), p / q) * std::pow(peak, 1.0 - p / q);
  r.interp_ratio = r.interp_lhs / r.interp_rhs;
  return r;
}

}  // namespace hsc
