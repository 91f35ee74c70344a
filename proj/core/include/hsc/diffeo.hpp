#pragma once

// Diffeomorphisms Id + f of the line on a uniform grid: composition,
// inversion, conjugation and flows of time-dependent vector fields.

#include <array>
#include <vector>

#include "hsc/descriptors.hpp"
#include "hsc/grid.hpp"

namespace hsc {

class Diffeo {
 public:
  // f must carry nodal slopes (exact or finite-difference). Throws
  // not_diffeomorphism when inf(1 + f') <= 0 on the grid.
  explicit Diffeo(GridFunction f);
  Diffeo(GridFunction f, double witness);

  static Diffeo identity(const UniformGrid& grid, DecayClass claim = DecayClass::D);

  const GridFunction& f() const noexcept { return f_; }
  double witness() const noexcept { return witness_; }
  DecayClass claim() const noexcept { return f_.claim(); }
  // x + f(x), with f extended outside the window by its decay class.
  double apply(double x) const { return x + f_.eval(x); }

 private:
  GridFunction f_;
  double witness_;
};

// F o G on G's grid: h = g + f(Id + g), h' = g' + f'(Id + g)(1 + g').
Diffeo compose(const Diffeo& F, const Diffeo& G);

struct InverseResult {
  Diffeo G;
  double residual = 0.0;  // max |f(x) + g(x + f(x))| over the grid
};

// Solves x + f(x) = y at every node y by bracketing on the nodal map and a
// safeguarded Newton polish on the interpolant.
InverseResult invert(const Diffeo& F);

struct ConjugateResult {
  Diffeo result;           // G^-1 o H o G by chained compose/invert
  std::vector<double> closed_form;  // h(y) + int_0^1 f'(y + t h(y)) h(y) dt, y = x + g(x)
  double route_gap = 0.0;
  std::optional<std::pair<double, double>> support;
};

// Both routes are evaluated; a gap >= 1e-8 raises an invariant error.
ConjugateResult conjugate(const Diffeo& G, const Diffeo& H);

// X(t, x) = (c0 + c1 t) profile(x) with an analytic profile.
struct VectorField {
  FunctionDescriptor profile;
  double c0 = 1.0;
  double c1 = 0.0;

  double time_factor(double t) const { return c0 + c1 * t; }
  // Field started at time s: X_s(t, x) = X(s + t, x).
  VectorField shifted(double s) const { return {profile, c0 + c1 * s, c1}; }
};

struct EvolutionSnapshot {
  double t = 0.0;
  Diffeo phi;
};

struct EvolutionReport {
  std::vector<EvolutionSnapshot> path;
  double dt = 0.0;
  int steps = 0;
  double bound_B = 0.0;          // max |X| over [0, t_final] x window
  std::optional<std::pair<double, double>> field_support;
  int bound_violations = 0;      // |f(t,x)| > t B
  int support_violations = 0;    // f(t,x) != 0 for |x| > r + t B
};

// Integrates d/dt y = X(t, y), y(0) = x per node with classical RK4 together
// with the variational equation for f'. Snapshots at `snapshot_times`
// (t_final is always included).
EvolutionReport evolve(const VectorField& X, double t_final, const UniformGrid& grid,
                       std::vector<double> snapshot_times = {});

struct MatrixBoundReport {
  int n = 0;
  double det = 0.0;
  double norm = 0.0;          // largest singular value
  double inverse_norm = 0.0;  // 1 / smallest singular value
  double bound = 0.0;         // |det|^-1 norm^(n-1)
  bool holds = false;
};

// Operator 2-norm bound ||A^-1|| <= |det A|^-1 ||A||^(n-1), n <= 4. Singular
// values come from the characteristic polynomial of A^T A.
MatrixBoundReport inverse_norm_bound(const std::vector<std::vector<double>>& A);

}  // namespace hsc
