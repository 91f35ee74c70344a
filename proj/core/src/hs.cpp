#include "hsc/hs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsc/descriptors.hpp"
#include "hsc/error.hpp"
#include "hsc/numerics.hpp"

namespace hsc {

namespace {

constexpr double kMonoidTol = 1e-10;
constexpr double kClampTol = 1e-14;

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what) {
  if (!(a.grid() == b.grid())) fail(ErrorKind::domain, std::string(what) + ": inputs must share one grid");
}

// sqrt(phi') with phi' = 1 + s clamped at zero.
double sqrt_derivative(double s) {
  const double d = 1.0 + s;
  return std::abs(d) < kClampTol ? 0.0 : std::sqrt(d);
}

double simpson_of(const std::vector<double>& v, double h) { return simpson(v, h); }

}  // namespace

HSDiffeo::HSDiffeo(GridFunction f, BasepointRule rule) : f_(std::move(f)), rule_(rule) {
  double floor = std::numeric_limits<double>::infinity();
  for (double s : f_.slopes()) {
    double d = 1.0 + s;
    if (d < -kClampTol) fail(ErrorKind::domain, "phi' = 1 + f' is negative at a node");
    if (std::abs(d) < kClampTol) d = 0.0;
    floor = std::min(floor, d);
  }
  floor_ = floor;
  if (rule_.kind == Basepoint::left_infinity &&
      std::abs(f_.values().front()) > 1e-8 * std::max(1.0, f_.sup_abs()))
    fail(ErrorKind::domain, "f must vanish at the left window edge (f(-inf) = 0)");
}

RCoord make_rcoord(GridFunction gamma, BasepointRule rule) {
  double floor = std::numeric_limits<double>::infinity();
  for (double g : gamma.values()) floor = std::min(floor, g);
  if (gamma.claim() == DecayClass::none && gamma.boundary_magnitude() <= 1e-8 * std::max(1.0, gamma.sup_abs()))
    gamma.set_claim(DecayClass::W);
  return {std::move(gamma), floor, rule};
}

RCoord r_transform(const HSDiffeo& phi) {
  const auto& s = phi.f().slopes();
  std::vector<double> g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = sqrt_derivative(s[i]);
    // 2(sqrt(1 + s) - 1) without cancellation for small s
    g[i] = r == 0.0 ? -2.0 : 2.0 * s[i] / (r + 1.0);
  }
  RCoord out = make_rcoord(GridFunction(phi.f().grid(), std::move(g)), phi.basepoint());
  out.floor = 2.0 * (std::sqrt(phi.derivative_floor()) - 1.0);
  return out;
}

HSDiffeo r_inverse(const RCoord& gamma) {
  const auto& grid = gamma.gamma.grid();
  const auto& g = gamma.gamma.values();
  std::vector<double> q(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) q[i] = 0.25 * g[i] * (g[i] + 4.0);
  double tail = 0.0;
  if (gamma.rule.kind == Basepoint::left_infinity) {
    tail = std::abs(q.front());
    if (tail > 1e-8 * std::max(1e-300, hsc::sup_abs(q)) && tail > 0.0)
      fail(ErrorKind::domain, "r_inverse: integrand does not decay at the left edge");
  }
  auto f = cumulative_simpson(q, grid.step());
  if (gamma.rule.kind == Basepoint::fixed) {
    const double x0 = gamma.rule.x0;
    if (x0 < grid.x_min() || x0 > grid.x_max()) fail(ErrorKind::domain, "r_inverse: basepoint outside the window");
    const double shift = lagrange_cubic(f, grid.x_min(), grid.step(), x0);
    for (double& v : f) v -= shift;
  }
  GridFunction fg(grid, std::move(f), DecayClass::none);
  fg.with_slopes(std::move(q));
  HSDiffeo out(std::move(fg), gamma.rule);
  out.set_tail_magnitude(tail);
  return out;
}

namespace {

GeodesicPoint point_from_gamma(double t, std::vector<double> g, const UniformGrid& grid, BasepointRule rule) {
  RCoord rc = make_rcoord(GridFunction(grid, std::move(g)), rule);
  HSDiffeo phi = r_inverse(rc);
  const bool monoid = rc.floor <= -2.0 + kMonoidTol;
  return {t, std::move(phi), std::move(rc), monoid};
}

}  // namespace

GeodesicPoint geodesic_bvp(const HSDiffeo& phi0, const HSDiffeo& phi1, double t) {
  require_same_grid(phi0.f(), phi1.f(), "geodesic_bvp");
  if (!phi0.in_group() || !phi1.in_group()) fail(ErrorKind::domain, "geodesic_bvp: endpoints must be group elements");
  const auto r0 = r_transform(phi0);
  const auto r1 = r_transform(phi1);
  const auto& g0 = r0.gamma.values();
  const auto& g1 = r1.gamma.values();
  std::vector<double> g(g0.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (1.0 - t) * g0[i] + t * g1[i];
  auto pt = point_from_gamma(t, std::move(g), phi0.f().grid(), phi0.basepoint());
  // endpoints reproduce the inputs rather than R^{-1}(R(phi_i))
  if (t == 0.0) pt.phi = phi0;
  if (t == 1.0) pt.phi = phi1;

  constexpr double tau = 1e-10;
  const auto& s0 = phi0.f().slopes();
  const auto& s1 = phi1.f().slopes();
  const auto& st = pt.phi.f().slopes();
  const double allowance = (std::abs(1.0 - t) + std::abs(t)) * tau * 1.01 + 1e-15;
  for (std::size_t i = 0; i < st.size(); ++i)
    if (std::abs(s0[i]) <= tau && std::abs(s1[i]) <= tau && std::abs(st[i]) > allowance)
      fail_invariant("geodesic_support", "geodesic derivative leaves the endpoint supports");
  return pt;
}

GeodesicPoint geodesic_ivp(const HSDiffeo& phi0, const GridFunction& h, double t) {
  require_same_grid(phi0.f(), h, "geodesic_ivp");
  if (!phi0.in_group()) fail(ErrorKind::domain, "geodesic_ivp: phi0 must be a group element");
  if (std::abs(h.values().front()) > 1e-8 * std::max(1.0, h.sup_abs()))
    fail(ErrorKind::domain, "geodesic_ivp: tangent must vanish at the left edge");
  const auto r0 = r_transform(phi0);
  const auto& g0 = r0.gamma.values();
  const auto& dh = h.slopes();
  std::vector<double> g(g0.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = g0[i] + t * dh[i] / (1.0 + 0.5 * g0[i]);
  return point_from_gamma(t, std::move(g), phi0.f().grid(), phi0.basepoint());
}

DistanceReport distance(const HSDiffeo& phi0, const HSDiffeo& phi1) {
  require_same_grid(phi0.f(), phi1.f(), "distance");
  if (!phi0.in_group() || !phi1.in_group()) fail(ErrorKind::domain, "distance: arguments must be group elements");
  const double h = phi0.f().grid().step();
  const auto& s0 = phi0.f().slopes();
  const auto& s1 = phi1.f().slopes();
  const auto r0 = r_transform(phi0);
  const auto r1 = r_transform(phi1);
  std::vector<double> a(s0.size()), b(s0.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = sqrt_derivative(s1[i]) - sqrt_derivative(s0[i]);
    a[i] = 4.0 * d * d;
    const double e = r1.gamma.value(i) - r0.gamma.value(i);
    b[i] = e * e;
  }
  const double peak = hsc::sup_abs(a);
  if (peak > 0.0 && std::max(a.front(), a.back()) > 1e-8 * peak)
    fail(ErrorKind::window, "distance: integrand does not decay inside the window");
  DistanceReport r;
  r.quadrature_sq = simpson_of(a, h);
  r.r_norm_sq = simpson_of(b, h);
  r.value = std::sqrt(std::max(0.0, r.quadrature_sq));
  const double scale = std::max(std::abs(r.quadrature_sq), std::abs(r.r_norm_sq));
  r.rel_gap = scale > 0.0 ? std::abs(r.quadrature_sq - r.r_norm_sq) / scale : 0.0;
  if (r.rel_gap > 1e-8) fail_invariant("distance_identity", "distance quadratures disagree");
  return r;
}

ShiftReport shift_r(const HSDiffeo& phi0, const HSDiffeo& phi1, double t) {
  require_same_grid(phi0.f(), phi1.f(), "shift_r");
  const double h = phi0.f().grid().step();
  const auto r0 = r_transform(phi0);
  const auto r1 = r_transform(phi1);
  ShiftReport rep;
  rep.t = t;
  auto constraint = [&](const RCoord& r, double& value) {
    std::vector<double> c(r.gamma.size()), ac(r.gamma.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double g = r.gamma.value(i);
      c[i] = g * (g + 4.0);
      ac[i] = std::abs(c[i]);
    }
    value = simpson_of(c, h);
    const double scale = simpson_of(ac, h);
    if (std::abs(value) > 1e-6 * scale)
      fail(ErrorKind::constraint, "shift_r: endpoint violates int gamma (gamma + 4) = 0 (residual " +
                                      std::to_string(value) + ")");
  };
  constraint(r0, rep.constraint0);
  constraint(r1, rep.constraint1);
  std::vector<double> d(r0.gamma.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double e = r1.gamma.value(i) - r0.gamma.value(i);
    d[i] = e * e;
  }
  rep.r_norm_sq = simpson_of(d, h);
  rep.closed_form = (t * t - t) / 4.0 * rep.r_norm_sq;
  rep.measured = geodesic_bvp(phi0, phi1, t).phi.f().values().back();
  const double denom = (t * t - t) != 0.0 ? std::abs(rep.closed_form) : rep.r_norm_sq / 4.0;
  rep.rel_gap = denom > 0.0 ? std::abs(rep.measured - rep.closed_form) / denom : std::abs(rep.measured);
  rep.subgroup_times = {0.0, 1.0};
  if (rep.rel_gap > 1e-6) fail_invariant("shift_identity", "measured shift disagrees with the closed form");
  return rep;
}

RCoord calibrated_gamma(const UniformGrid& grid, double a, double c1, double w1, double c2, double w2) {
  if (!(w1 > 0.0) || !(w2 > 0.0)) fail(ErrorKind::construction, "calibrated_gamma: widths must be > 0");
  if (std::abs(c1 - c2) < w1 + w2) fail(ErrorKind::construction, "calibrated_gamma: bump supports overlap");
  std::vector<double> b1(grid.size()), b2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    b1[i] = bump::value((grid.x(i) - c1) / w1);
    b2[i] = bump::value((grid.x(i) - c2) / w2);
  }
  auto sq = [](std::vector<double> v) {
    for (double& x : v) x *= x;
    return v;
  };
  const double h = grid.step();
  const double I1 = simpson(b1, h), Q1 = simpson(sq(b1), h);
  const double I2 = simpson(b2, h), Q2 = simpson(sq(b2), h);
  const double c = a * a * Q1 + 4.0 * a * I1;
  const double disc = 16.0 * I2 * I2 - 4.0 * Q2 * c;
  if (disc < 0.0 || Q2 <= 0.0) fail(ErrorKind::construction, "calibrated_gamma: no real calibration exists");
  const double b = (4.0 * I2 - std::sqrt(disc)) / (2.0 * Q2);
  if (!(a > -2.0) || !(b < 2.0)) fail(ErrorKind::construction, "calibrated_gamma: calibrated bump reaches -2");
  std::vector<double> g(grid.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = a * b1[i] - b * b2[i];
  return make_rcoord(GridFunction(grid, std::move(g), DecayClass::D));
}

ContinuationPoint BlowupReport::at(double t) const {
  const auto& ga = gamma_a.gamma.values();
  const auto& gb = gamma_b.gamma.values();
  std::vector<double> g(ga.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = ga[i] + t * gb[i];
  const auto& grid = gamma_a.gamma.grid();
  auto pt = point_from_gamma(t, std::move(g), grid, gamma_a.rule);
  ContinuationPoint c{t, pt.phi, pt.gamma.floor, pt.monoid, std::nullopt, true, false, 0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (pt.gamma.gamma.value(i) <= -2.0 + kMonoidTol) {
      c.first_contact = grid.x(i);
      break;
    }
  const auto& f = c.phi.f().values();
  double prev = grid.x(0) + f[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = grid.x(i) + f[i];
    if (cur < prev - 1e-12 * std::max(1.0, std::abs(prev))) c.monotone = false;
    prev = cur;
  }
  c.image_min = grid.x(0) + f.front();
  c.image_max = grid.x(grid.size() - 1) + f.back();
  c.surjective = c.monotone && std::isfinite(c.image_min) && std::isfinite(c.image_max) && c.image_max > c.image_min;
  if (!c.monotone) fail_invariant("monoid_monotone", "continued map is not monotone");
  if (!c.surjective) fail_invariant("monoid_surjective", "continued map does not cover its image interval");
  return c;
}

namespace {

BlowupReport blowup_from(RCoord a, RCoord b) {
  BlowupReport r{std::move(a), std::move(b), -std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(), std::nullopt};
  const auto& ga = r.gamma_a.gamma.values();
  const auto& gb = r.gamma_b.gamma.values();
  const auto& grid = r.gamma_a.gamma.grid();
  for (std::size_t i = 0; i < ga.size(); ++i) {
    if (gb[i] < 0.0) {
      const double t = (2.0 + ga[i]) / -gb[i];
      if (t < r.t1) {
        r.t1 = t;
        r.contact_x = grid.x(i);
      }
    } else if (gb[i] > 0.0) {
      r.t0 = std::max(r.t0, -(2.0 + ga[i]) / gb[i]);
    }
  }
  return r;
}

}  // namespace

BlowupReport blowup_bvp(const HSDiffeo& phi0, const HSDiffeo& phi1) {
  require_same_grid(phi0.f(), phi1.f(), "blowup_bvp");
  auto r0 = r_transform(phi0);
  auto r1 = r_transform(phi1);
  std::vector<double> d(r0.gamma.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = r1.gamma.value(i) - r0.gamma.value(i);
  RCoord b = make_rcoord(GridFunction(r0.gamma.grid(), std::move(d)), r0.rule);
  return blowup_from(std::move(r0), std::move(b));
}

BlowupReport blowup_ivp(const HSDiffeo& phi0, const GridFunction& h) {
  require_same_grid(phi0.f(), h, "blowup_ivp");
  auto r0 = r_transform(phi0);
  const auto& dh = h.slopes();
  std::vector<double> d(r0.gamma.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = dh[i] / (1.0 + 0.5 * r0.gamma.value(i));
  RCoord b = make_rcoord(GridFunction(r0.gamma.grid(), std::move(d)), r0.rule);
  return blowup_from(std::move(r0), std::move(b));
}

namespace {

// Fourth-order first derivative: centered in the interior, one-sided
// six-point stencils at the two outermost nodes on each side.
class Derivative {
 public:
  Derivative(std::size_t n, double h) : n_(n), inv_h_(1.0 / h) {
    if (n < 8) fail(ErrorKind::domain, "pde_oracle: grid too short");
    const std::vector<double> e0{0, 1, 2, 3, 4, 5}, e1{-1, 0, 1, 2, 3, 4};
    w0_ = fornberg_weights(0.0, e0, 1);
    w1_ = fornberg_weights(0.0, e1, 1);
  }

  void apply(const std::vector<double>& u, std::vector<double>& ux) const {
    const std::size_t n = n_;
    const double c1 = 8.0 / 12.0 * inv_h_, c2 = 1.0 / 12.0 * inv_h_;
    for (std::size_t i = 2; i + 2 < n; ++i) ux[i] = c1 * (u[i + 1] - u[i - 1]) - c2 * (u[i + 2] - u[i - 2]);
    double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    for (std::size_t j = 0; j < 6; ++j) {
      a0 += w0_[j] * u[j];
      a1 += w1_[j] * u[j];
      b0 -= w0_[j] * u[n - 1 - j];
      b1 -= w1_[j] * u[n - 1 - j];
    }
    ux[0] = a0 * inv_h_;
    ux[1] = a1 * inv_h_;
    ux[n - 1] = b0 * inv_h_;
    ux[n - 2] = b1 * inv_h_;
  }

 private:
  std::size_t n_;
  double inv_h_;
  std::vector<double> w0_, w1_;
};

}  // namespace

OracleReport pde_oracle(const GridFunction& u0, double t_final, double dt, std::vector<double> snapshot_times,
                        const HSDiffeo* phi0) {
  const auto& grid = u0.grid();
  const std::size_t n = grid.size();
  const double h = grid.step();
  if (!(dt > 0.0)) fail(ErrorKind::domain, "pde_oracle: dt must be > 0");
  if (!(t_final >= 0.0)) fail(ErrorKind::domain, "pde_oracle: t_final must be >= 0");
  if (u0.boundary_magnitude() > 1e-8 * std::max(1e-300, u0.sup_abs()) && u0.sup_abs() > 0.0)
    fail(ErrorKind::domain, "pde_oracle: u0 must decay at the window edges");
  if (phi0) require_same_grid(phi0->f(), u0, "pde_oracle");

  snapshot_times.push_back(t_final);
  std::sort(snapshot_times.begin(), snapshot_times.end());
  snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()), snapshot_times.end());
  if (snapshot_times.front() < 0.0) fail(ErrorKind::domain, "pde_oracle: snapshot times must be >= 0");

  const Derivative D(n, h);
  std::vector<double> u = u0.values(), ux(n), sq(n), rhs_tmp(n);
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = grid.x(i) + (phi0 ? phi0->f().value(i) : 0.0);

  OracleReport rep;
  D.apply(u, ux);
  rep.max_ux0 = hsc::sup_abs(ux);
  rep.max_ux = rep.max_ux0;

  const double xmin = grid.x_min(), xmax = grid.x_max();
  auto rhs = [&](const std::vector<double>& uu, const std::vector<double>& pp, std::vector<double>& ku,
                 std::vector<double>& kp) {
    D.apply(uu, ux);
    for (std::size_t i = 0; i < n; ++i) sq[i] = ux[i] * ux[i];
    const auto integral = cumulative_simpson(sq, h);
    for (std::size_t i = 0; i < n; ++i) ku[i] = -uu[i] * ux[i] + 0.5 * integral[i];
    for (std::size_t i = 0; i < n; ++i) kp[i] = lagrange_cubic(uu, xmin, h, std::clamp(pp[i], xmin, xmax));
  };

  std::vector<double> k1u(n), k2u(n), k3u(n), k4u(n), k1p(n), k2p(n), k3p(n), k4p(n), us(n), ps(n);
  auto snapshot = [&](double t) {
    OracleSnapshot s;
    s.t = t;
    s.u = u;
    s.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.f[i] = p[i] - grid.x(i);
    rep.snapshots.push_back(std::move(s));
  };

  double t = 0.0;
  for (double target : snapshot_times) {
    const double span = target - t;
    const int steps = span > 0.0 ? static_cast<int>(std::ceil(span / dt - 1e-9)) : 0;
    const double step = steps > 0 ? span / steps : 0.0;
    if (steps > 0) rep.dt = step;
    for (int s = 0; s < steps; ++s) {
      const double umax = hsc::sup_abs(u);
      if (umax > 0.0 && step > 0.1 * h / umax * (1.0 + 1e-12))
        fail(ErrorKind::step, "pde_oracle: dt exceeds the CFL bound 0.1 h / max|u|");
      rhs(u, p, k1u, k1p);
      for (std::size_t i = 0; i < n; ++i) {
        us[i] = u[i] + 0.5 * step * k1u[i];
        ps[i] = p[i] + 0.5 * step * k1p[i];
      }
      rhs(us, ps, k2u, k2p);
      for (std::size_t i = 0; i < n; ++i) {
        us[i] = u[i] + 0.5 * step * k2u[i];
        ps[i] = p[i] + 0.5 * step * k2p[i];
      }
      rhs(us, ps, k3u, k3p);
      for (std::size_t i = 0; i < n; ++i) {
        us[i] = u[i] + step * k3u[i];
        ps[i] = p[i] + step * k3p[i];
      }
      rhs(us, ps, k4u, k4p);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] += step / 6.0 * (k1u[i] + 2 * k2u[i] + 2 * k3u[i] + k4u[i]);
        p[i] += step / 6.0 * (k1p[i] + 2 * k2p[i] + 2 * k3p[i] + k4p[i]);
      }
      D.apply(u, ux);
      rep.max_ux = std::max(rep.max_ux, hsc::sup_abs(ux));
      if (rep.max_ux > 1e3 * rep.max_ux0) rep.near_blowup = true;
    }
    rep.steps += steps;
    t = target;
    snapshot(t);
  }
  return rep;
}

std::vector<OracleComparisonRow> validate_geodesic(const HSDiffeo& phi0, const GridFunction& u0, double dt,
                                                   const std::vector<double>& times, OracleReport* oracle_out) {
  require_same_grid(phi0.f(), u0, "validate_geodesic");
  if (times.empty()) fail(ErrorKind::domain, "validate_geodesic: no comparison times");
  const auto& grid = u0.grid();
  std::vector<double> hv(grid.size()), hd(grid.size());
  const auto& s0 = phi0.f().slopes();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.x(i) + phi0.f().value(i);
    hv[i] = u0.eval(y);
    hd[i] = u0.eval_slope(y) * (1.0 + s0[i]);
  }
  GridFunction tangent(grid, std::move(hv), u0.claim());
  tangent.with_slopes(std::move(hd));

  const double t_final = *std::max_element(times.begin(), times.end());
  auto oracle = pde_oracle(u0, t_final, dt, times, &phi0);
  std::vector<OracleComparisonRow> rows;
  for (const auto& snap : oracle.snapshots) {
    const auto geo = geodesic_ivp(phi0, tangent, snap.t);
    const auto& f = geo.phi.f().values();
    std::vector<double> diff(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) diff[i] = snap.f[i] - f[i];
    rows.push_back({snap.t, hsc::sup_abs(diff), lp_norm(diff, grid.step(), 2.0)});
  }
  if (oracle_out) *oracle_out = std::move(oracle);
  return rows;
}

}  // namespace hsc
