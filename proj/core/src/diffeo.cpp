#include "hsc/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsc/error.hpp"
#include "hsc/numerics.hpp"

namespace hsc {

namespace {

double min_witness(const GridFunction& f) {
  double w = std::numeric_limits<double>::infinity();
  for (double d : f.slopes()) w = std::min(w, 1.0 + d);
  return w;
}

bool zero_extension(DecayClass c) { return c == DecayClass::W || c == DecayClass::S || c == DecayClass::D; }

DecayClass weaker(DecayClass a, DecayClass b) { return std::min(a, b); }

}  // namespace

Diffeo::Diffeo(GridFunction f) : Diffeo(f, min_witness(f)) {}

Diffeo::Diffeo(GridFunction f, double witness) : f_(std::move(f)), witness_(witness) {
  if (!(witness_ > 0.0))
    fail(ErrorKind::not_diffeomorphism, "inf(1 + f') = " + std::to_string(witness_) + " is not positive");
}

Diffeo Diffeo::identity(const UniformGrid& grid, DecayClass claim) {
  GridFunction f(grid, std::vector<double>(grid.size(), 0.0), claim);
  f.with_slopes(std::vector<double>(grid.size(), 0.0));
  return Diffeo(std::move(f), 1.0);
}

Diffeo compose(const Diffeo& F, const Diffeo& G) {
  const auto& grid = G.f().grid();
  const auto& g = G.f().values();
  const auto& dg = G.f().slopes();
  std::vector<double> h(grid.size()), dh(grid.size());
  double witness = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.x(i) + g[i];
    const double df = F.f().eval_slope(y);
    h[i] = g[i] + F.f().eval(y);
    dh[i] = dg[i] + df * (1.0 + dg[i]);
    witness = std::min(witness, (1.0 + df) * (1.0 + dg[i]));
  }
  GridFunction out(grid, std::move(h), weaker(F.claim(), G.claim()));
  out.with_slopes(std::move(dh));
  return Diffeo(std::move(out), witness);
}

InverseResult invert(const Diffeo& F) {
  const auto& f = F.f();
  const auto& grid = f.grid();
  const auto& v = f.values();
  const auto& s = f.slopes();
  const std::size_t n = grid.size();
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = grid.x(i) + v[i];
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(phi[i + 1] > phi[i]))
      fail(ErrorKind::refinement, "nodal map is not increasing near x = " + std::to_string(grid.x(i)) +
                                      "; refine the grid");

  // Off-grid values come from the derivative oracle when there is one, so the
  // nodal inverse is not limited by interpolation error.
  const bool exact = f.has_oracle() && f.oracle_order() >= 1;
  auto inside = [&](double x) { return x >= grid.x_min() && x <= grid.x_max(); };
  auto value = [&](double x) { return exact && inside(x) ? f.oracle()(0, x) : f.eval(x); };
  auto slope = [&](double x) { return exact && inside(x) ? f.oracle()(1, x) : f.eval_slope(x); };

  std::vector<double> g(n), dg(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double y = grid.x(k);
    double x;
    if (y < phi.front() || y > phi.back()) {
      const double edge = y < phi.front() ? v.front() : v.back();
      x = y - (zero_extension(f.claim()) ? 0.0 : edge);
    } else {
      while (j + 2 < n && phi[j + 1] <= y) ++j;
      const double a = grid.x(j), b = grid.x(j + 1);
      if (phi[j] == y) {
        x = a;
      } else if (phi[j + 1] == y) {
        x = b;
      } else if (v[j] == 0.0 && v[j + 1] == 0.0 && s[j] == 0.0 && s[j + 1] == 0.0) {
        x = y;  // f vanishes on the whole cell
      } else {
        double lo = a, hi = b;
        x = a + (y - phi[j]) / (phi[j + 1] - phi[j]) * (b - a);
        for (int it = 0; it < 100; ++it) {
          const double r = x + value(x) - y;
          if (std::abs(r) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(y))) break;
          if (r > 0.0) hi = x; else lo = x;
          const double d = 1.0 + slope(x);
          double next = d > 0.0 ? x - r / d : 0.5 * (lo + hi);
          if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
          if (next == x) break;
          x = next;
        }
      }
    }
    g[k] = -value(x);  // f(x) + g(x + f(x)) = 0; exact zero off supp f
    const double df = slope(x);
    dg[k] = -df / (1.0 + df);
  }
  GridFunction gf(grid, std::move(g), f.claim());
  gf.with_slopes(std::move(dg));
  Diffeo G(std::move(gf));

  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    residual = std::max(residual, std::abs(v[i] + G.f().eval(x + v[i])));
  }
  return {std::move(G), residual};
}

ConjugateResult conjugate(const Diffeo& G, const Diffeo& H) {
  auto inv = invert(G);
  const Diffeo& Ginv = inv.G;
  Diffeo chained = compose(Ginv, compose(H, G));

  const auto& grid = G.f().grid();
  const auto& xs = GaussLegendre16::nodes();
  const auto& ws = GaussLegendre16::weights();
  std::vector<double> closed(grid.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.x(i) + G.f().value(i);
    const double hy = H.f().eval(y);
    double integral = 0.0;
    if (hy != 0.0) {
      for (std::size_t q = 0; q < xs.size(); ++q) {
        const double t = 0.5 * (xs[q] + 1.0);
        integral += 0.5 * ws[q] * Ginv.f().eval_slope(y + t * hy);
      }
    }
    closed[i] = hy + integral * hy;
    gap = std::max(gap, std::abs(closed[i] - chained.f().value(i)));
  }
  if (!(gap < 1e-8))
    fail_invariant("conjugation_routes", "chained and closed-form conjugation differ by " + std::to_string(gap));
  ConjugateResult r{std::move(chained), std::move(closed), gap, std::nullopt};
  r.support = r.result.f().support();
  return r;
}

EvolutionReport evolve(const VectorField& X, double t_final, const UniformGrid& grid,
                       std::vector<double> snapshot_times) {
  if (!is_analytic(X.profile)) fail(ErrorKind::domain, "evolve: the field profile needs a closed form");
  if (!(t_final >= 0.0)) fail(ErrorKind::domain, "evolve: t_final must be >= 0");
  const double h = grid.step();

  // B = max |X| on [0, t_final] x R, sampled on a 4x finer grid.
  const UniformGrid fine(grid.x_min(), grid.x_max(), h / 4);
  double pmax = 0.0;
  std::optional<std::pair<double, double>> support;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double v = evaluate(X.profile, 0, fine.x(i));
    pmax = std::max(pmax, std::abs(v));
    if (v != 0.0) {
      const double x = fine.x(i);
      if (!support) support = std::make_pair(x, x);
      support->first = std::min(support->first, x);
      support->second = std::max(support->second, x);
    }
  }
  if (support) {
    support->first -= fine.step();
    support->second += fine.step();
  }
  const double tmax = std::max(std::abs(X.time_factor(0.0)), std::abs(X.time_factor(t_final)));
  const double B = tmax * pmax;

  EvolutionReport rep;
  rep.bound_B = B;
  const DecayClass claim = natural_claim(X.profile);
  if (claim == DecayClass::D) rep.field_support = support;
  const double dt_max = B > 0.0 ? std::min(1e-3, 0.1 * h / B) : 1e-3;
  if (dt_max < 1e-12) fail(ErrorKind::stiffness, "evolve: time step underflow");

  snapshot_times.push_back(t_final);
  std::sort(snapshot_times.begin(), snapshot_times.end());
  snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()), snapshot_times.end());
  if (snapshot_times.front() < 0.0 || snapshot_times.back() > t_final)
    fail(ErrorKind::domain, "evolve: snapshot times must lie in [0, t_final]");

  const std::size_t n = grid.size();
  std::vector<double> y(n), w(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) y[i] = grid.x(i);
  auto field = [&](double t, double yy, double& v, double& dv) {
    const double c = X.time_factor(t);
    v = c * evaluate(X.profile, 0, yy);
    dv = c * evaluate(X.profile, 1, yy);
  };

  const double r = support ? std::max(std::abs(support->first), std::abs(support->second)) : 0.0;
  auto snapshot = [&](double t) {
    std::vector<double> f(n), df(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = y[i] - grid.x(i);
      df[i] = w[i] - 1.0;
      if (claim == DecayClass::D) {
        if (std::abs(f[i]) > t * B * (1.0 + 1e-12) + 1e-300) ++rep.bound_violations;
        if (std::abs(grid.x(i)) > r + t * B && f[i] != 0.0) ++rep.support_violations;
      }
    }
    GridFunction gf(grid, std::move(f), claim == DecayClass::D || claim == DecayClass::W || claim == DecayClass::S
                                            ? claim
                                            : DecayClass::B);
    gf.with_slopes(std::move(df));
    rep.path.push_back({t, Diffeo(std::move(gf))});
  };

  double t = 0.0;
  for (double target : snapshot_times) {
    const double span = target - t;
    const int steps = span > 0.0 ? static_cast<int>(std::ceil(span / dt_max - 1e-12)) : 0;
    const double dt = steps > 0 ? span / steps : 0.0;
    if (steps > 0) rep.dt = dt;
    for (std::size_t i = 0; i < n; ++i) {
      double yy = y[i], ww = w[i], tt = t;
      for (int s = 0; s < steps; ++s) {
        double v1, d1, v2, d2, v3, d3, v4, d4;
        field(tt, yy, v1, d1);
        field(tt + 0.5 * dt, yy + 0.5 * dt * v1, v2, d2);
        field(tt + 0.5 * dt, yy + 0.5 * dt * v2, v3, d3);
        field(tt + dt, yy + dt * v3, v4, d4);
        const double k1 = d1 * ww;
        const double k2 = d2 * (ww + 0.5 * dt * k1);
        const double k3 = d3 * (ww + 0.5 * dt * k2);
        const double k4 = d4 * (ww + dt * k3);
        yy += dt / 6.0 * (v1 + 2 * v2 + 2 * v3 + v4);
        ww += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        tt = t + (s + 1) * dt;
      }
      y[i] = yy;
      w[i] = ww;
    }
    rep.steps += steps;
    t = target;
    snapshot(t);
  }
  if (rep.bound_violations > 0 || rep.support_violations > 0)
    fail_invariant("evolution_support_bound",
                   std::to_string(rep.bound_violations) + " bound and " + std::to_string(rep.support_violations) +
                       " support violations");
  return rep;
}

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

double determinant(Matrix a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= m * a[c][j];
    }
  }
  return det;
}

// Coefficients c_0..c_n (c_n = 1) of det(x I - S) by Faddeev-LeVerrier.
std::vector<long double> characteristic_polynomial(const Matrix& S) {
  const std::size_t n = S.size();
  std::vector<long double> c(n + 1, 0.0L);
  c[n] = 1.0L;
  std::vector<std::vector<long double>> M(n, std::vector<long double>(n, 0.0L));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<long double>> next(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long double acc = 0.0L;
        for (std::size_t l = 0; l < n; ++l) acc += S[i][l] * M[l][j];
        next[i][j] = acc + (i == j ? c[n - k + 1] : 0.0L);
      }
    M = std::move(next);
    long double tr = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += S[i][l] * M[l][i];
    c[n - k] = -tr / static_cast<long double>(k);
  }
  return c;
}

// Roots of a polynomial with only real nonnegative roots, largest first.
// Newton on p/p' keeps quadratic convergence at repeated roots.
std::vector<double> real_roots(std::vector<long double> c) {
  std::vector<double> roots;
  while (c.size() > 1) {
    const std::size_t deg = c.size() - 1;
    if (deg == 1) {
      roots.push_back(static_cast<double>(-c[0] / c[1]));
      break;
    }
    long double bound = 0.0L;  // Cauchy bound
    for (std::size_t i = 0; i < deg; ++i) bound = std::max(bound, std::abs(c[i] / c[deg]));
    long double x = 1.0L + bound;
    for (int it = 0; it < 200; ++it) {
      long double p = c[deg], dp = 0.0L, ddp = 0.0L;
      for (std::size_t i = deg; i-- > 0;) {
        ddp = ddp * x + 2.0L * dp;
        dp = dp * x + p;
        p = p * x + c[i];
      }
      if (p == 0.0L || dp == 0.0L) break;
      const long double u = p / dp;
      const long double du = 1.0L - p * ddp / (dp * dp);
      const long double step = du != 0.0L ? u / du : u;
      x -= step;
      if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(x))) break;
    }
    roots.push_back(static_cast<double>(x));
    std::vector<long double> q(deg, 0.0L);  // synthetic division by (t - x)
    long double carry = c[deg];
    for (std::size_t i = deg; i-- > 0;) {
      q[i] = carry;
      carry = c[i] + carry * x;
    }
    c = std::move(q);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace

MatrixBoundReport inverse_norm_bound(const std::vector<std::vector<double>>& A) {
  const std::size_t n = A.size();
  if (n == 0 || n > 4) fail(ErrorKind::domain, "inverse_norm_bound: n must be in 1..4");
  for (const auto& row : A)
    if (row.size() != n) fail(ErrorKind::domain, "inverse_norm_bound: matrix must be square");
  MatrixBoundReport r;
  r.n = static_cast<int>(n);
  r.det = determinant(A);
  if (std::abs(r.det) <= 1e-12) fail(ErrorKind::singular, "inverse_norm_bound: matrix is near singular");
  Matrix At(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) At[i][j] = A[j][i];
  const auto roots = real_roots(characteristic_polynomial(multiply(At, A)));
  // Smallest eigenvalue from det(A^T A) = det(A)^2 avoids cancellation.
  double others = 1.0;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) others *= roots[i];
  const double lambda_min = r.det * r.det / others;
  r.norm = std::sqrt(roots.front());
  r.inverse_norm = 1.0 / std::sqrt(n == 1 ? roots.front() : lambda_min);
  r.bound = std::pow(r.norm, static_cast<double>(n) - 1.0) / std::abs(r.det);
  r.holds = r.inverse_norm <= r.bound * (1.0 + 1e-12);
  if (!r.holds) fail_invariant("inverse_norm_bound", "operator norm bound violated");
  return r;
}

}  // namespace hsc
