#pragma once

// Hunter-Saxton geodesics on diffeomorphisms of the line. In the coordinate
// gamma = R(phi) = 2(sqrt(phi') - 1) geodesics are straight lines, so paths,
// distances and blow-up times are computed in closed form and checked
// against a method-of-lines integrator of the PDE.

#include <optional>
#include <vector>

#include "hsc/grid.hpp"

namespace hsc {

enum class Basepoint { left_infinity, fixed };

struct BasepointRule {
  Basepoint kind = Basepoint::left_infinity;
  double x0 = 0.0;  // used by Basepoint::fixed
};

// phi = Id + f with f' >= -1. Group elements have inf(1 + f') > 0; points
// where 1 + f' vanishes make phi a monoid element.
class HSDiffeo {
 public:
  // Throws a domain error when 1 + f' < 0 at a node. With left_infinity the
  // left boundary value must be below 1e-8 of max(1, sup|f|).
  explicit HSDiffeo(GridFunction f, BasepointRule rule = {});

  const GridFunction& f() const noexcept { return f_; }
  double derivative_floor() const noexcept { return floor_; }
  bool in_group() const noexcept { return floor_ > 0.0; }
  const BasepointRule& basepoint() const noexcept { return rule_; }
  double tail_magnitude() const noexcept { return tail_; }
  void set_tail_magnitude(double t) noexcept { tail_ = t; }

 private:
  GridFunction f_;
  double floor_ = 1.0;
  BasepointRule rule_;
  double tail_ = 0.0;
};

struct RCoord {
  GridFunction gamma;
  double floor = 0.0;
  BasepointRule rule;
};

RCoord make_rcoord(GridFunction gamma, BasepointRule rule = {});

// 1 + f' is clamped to 0 when |1 + f'| < 1e-14.
RCoord r_transform(const HSDiffeo& phi);

// f = (1/4) int (gamma^2 + 4 gamma) from the basepoint, with f' stored
// exactly. A left-edge integrand above 1e-8 of its peak is a non-integrable
// tail for the left_infinity rule.
HSDiffeo r_inverse(const RCoord& gamma);

struct GeodesicPoint {
  double t = 0.0;
  HSDiffeo phi;
  RCoord gamma;
  bool monoid = false;  // gamma <= -2 + 1e-10 somewhere
};

// phi(t) = R^-1((1 - t) R(phi0) + t R(phi1)). Support localization of f' is
// asserted with a 1e-10 threshold.
GeodesicPoint geodesic_bvp(const HSDiffeo& phi0, const HSDiffeo& phi1, double t);

// gamma(t) = R(phi0) + t h' / sqrt(phi0'). The tangent h must vanish at the
// left edge.
GeodesicPoint geodesic_ivp(const HSDiffeo& phi0, const GridFunction& h, double t);

struct DistanceReport {
  double value = 0.0;
  double quadrature_sq = 0.0;  // 4 int (sqrt(phi1') - sqrt(phi0'))^2
  double r_norm_sq = 0.0;      // ||R(phi1) - R(phi0)||^2
  double rel_gap = 0.0;
};

DistanceReport distance(const HSDiffeo& phi0, const HSDiffeo& phi1);

struct ShiftReport {
  double t = 0.0;
  double closed_form = 0.0;  // (t^2 - t)/4 ||R(phi0) - R(phi1)||^2
  double measured = 0.0;     // right-edge value of the geodesic perturbation
  double rel_gap = 0.0;
  double constraint0 = 0.0;  // int gamma_i (gamma_i + 4)
  double constraint1 = 0.0;
  double r_norm_sq = 0.0;
  // The geodesic meets the subgroup with f(+inf) = 0 where t^2 - t = 0.
  std::vector<double> subgroup_times;
};

ShiftReport shift_r(const HSDiffeo& phi0, const HSDiffeo& phi1, double t);

// gamma = a chi((x - c1)/w1) - b chi((x - c2)/w2) with b chosen so that
// int gamma (gamma + 4) = 0 on the grid. Supports must be disjoint.
RCoord calibrated_gamma(const UniformGrid& grid, double a, double c1, double w1, double c2, double w2);

struct ContinuationPoint {
  double t = 0.0;
  HSDiffeo phi;
  double gamma_floor = 0.0;
  bool monoid = false;
  std::optional<double> first_contact;  // min{x : gamma(t, x) <= -2}
  bool monotone = false;                // x + f(x) nondecreasing on the grid
  bool surjective = false;              // image spans [phi(x_min), phi(x_max)]
  double image_min = 0.0, image_max = 0.0;
};

struct BlowupReport {
  RCoord gamma_a, gamma_b;  // gamma(t) = gamma_a + t gamma_b
  double t0 = 0.0, t1 = 0.0;  // +-infinity when unconstrained
  std::optional<double> contact_x;  // node where t1 is attained

  // Samples the path at t, continuing past t1 as a monoid element. Asserts
  // monotonicity and surjectivity.
  ContinuationPoint at(double t) const;
};

BlowupReport blowup_bvp(const HSDiffeo& phi0, const HSDiffeo& phi1);
BlowupReport blowup_ivp(const HSDiffeo& phi0, const GridFunction& h);

struct OracleSnapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> f;  // marker displacement phi(t, x) - x
};

struct OracleReport {
  std::vector<OracleSnapshot> snapshots;
  int steps = 0;
  double dt = 0.0;
  double max_ux0 = 0.0;
  double max_ux = 0.0;
  bool near_blowup = false;  // max |u_x| exceeded 1e3 times its initial value
};

// Method of lines for u_t = -u u_x + (1/2) int_{x_min}^x u_x^2: fourth-order
// centered u_x, cumulative Simpson for the integral, RK4 in time. Markers
// follow phi_t = u(phi) with u interpolated by four-point Lagrange and held
// constant outside the window. phi starts at phi0 (identity if absent).
OracleReport pde_oracle(const GridFunction& u0, double t_final, double dt, std::vector<double> snapshot_times = {},
                        const HSDiffeo* phi0 = nullptr);

struct OracleComparisonRow {
  double t = 0.0;
  double sup_error = 0.0;  // sup |f_oracle - f_geodesic|
  double l2_error = 0.0;
};

// Runs the oracle from u0 and compares each snapshot with geodesic_ivp
// from phi0 with tangent h = u0 o phi0.
std::vector<OracleComparisonRow> validate_geodesic(const HSDiffeo& phi0, const GridFunction& u0, double dt,
                                                   const std::vector<double>& times,
                                                   OracleReport* oracle_out = nullptr);

}  // namespace hsc
