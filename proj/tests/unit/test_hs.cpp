#include <cmath>
#include <limits>

#include "doctest.h"
#include "hsc/descriptors.hpp"
#include "hsc/error.hpp"
#include "hsc/hs.hpp"
#include "hsc/numerics.hpp"
#include "random.hpp"

using namespace hsc;

namespace {

HSDiffeo hs_from(const FunctionDescriptor& d, const UniformGrid& g) { return HSDiffeo(grid_function(d, g)); }

HSDiffeo identity(const UniformGrid& g) {
  GridFunction f(g, std::vector<double>(g.size(), 0.0), DecayClass::D);
  f.with_slopes(std::vector<double>(g.size(), 0.0));
  return HSDiffeo(std::move(f));
}

double gap(const GridFunction& a, const GridFunction& b) { return sup_abs_diff(a.values(), b.values()); }

// Normalized smooth step from 0 (u <= -1) to 1 (u >= 1).
double smooth_step(double u) { return bump::primitive(std::clamp(u, -1.0, 1.0)) / bump::l1_norm(); }

HSDiffeo calibrated(const UniformGrid& g, double a, double c1, double w1, double c2, double w2) {
  return r_inverse(calibrated_gamma(g, a, c1, w1, c2, w2));
}

}  // namespace

TEST_CASE("R-transform of simple maps") {
  const UniformGrid g(-3, 3, 1e-3);
  const auto id = r_transform(identity(g));
  CHECK(id.gamma.sup_abs() == 0.0);
  CHECK(id.floor == 0.0);
  // phi' = 0 at a node gives gamma = -2 there
  std::vector<double> s(g.size(), 0.0);
  s[g.size() / 2] = -1.0;
  GridFunction f(g, std::vector<double>(g.size(), 0.0));
  f.with_slopes(s);
  const HSDiffeo phi(f);
  CHECK_FALSE(phi.in_group());
  const auto r = r_transform(phi);
  CHECK(r.gamma.value(g.size() / 2) == -2.0);
  CHECK(r.floor == -2.0);
  s[g.size() / 2] = -1.5;
  GridFunction bad(g, std::vector<double>(g.size(), 0.0));
  bad.with_slopes(s);
  CHECK_THROWS_AS(HSDiffeo{bad}, Error);
}

TEST_CASE("property: round trips on a random bump corpus") {
  testing::Rng rng(71);
  INFO(testing::seed_note());
  const UniformGrid g(-8, 8, 1e-3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto phi = hs_from(rng.compact_bump(), g);
    CHECK(phi.in_group());
    const auto gamma = r_transform(phi);
    CHECK(gamma.floor > -2.0);
    const auto back = r_inverse(gamma);
    CHECK(gap(back.f(), phi.f()) < 1e-9);
    CHECK(gap(r_transform(back).gamma, gamma.gamma) < 1e-9);
  }
}

TEST_CASE("r_inverse") {
  const UniformGrid g(-5, 5, 1e-3);
  SUBCASE("zero gives the identity") {
    const auto phi = r_inverse(make_rcoord(GridFunction(g, std::vector<double>(g.size(), 0.0))));
    CHECK(phi.f().sup_abs() == 0.0);
    CHECK(phi.in_group());
  }
  SUBCASE("gamma = -2 on an interval collapses it") {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.x(i);
      v[i] = -2.0 * smooth_step((x + 2.0) / 0.5) * (1.0 - smooth_step((x - 2.0) / 0.5));
    }
    const auto phi = r_inverse(make_rcoord(GridFunction(g, v)));
    CHECK_FALSE(phi.in_group());
    const auto& f = phi.f();
    const double left = g.x(g.cell(-1.4)) + f.eval(g.x(g.cell(-1.4)));
    for (std::size_t i = 0; i < g.size(); ++i)
      if (std::abs(g.x(i)) <= 1.4) {
        CHECK(std::abs(1.0 + f.slopes()[i]) < 1e-14);
        CHECK(g.x(i) + f.value(i) == doctest::Approx(left).epsilon(1e-12));
      }
  }
  SUBCASE("a fixed basepoint pins f(x0) = 0") {
    const auto gamma = r_transform(hs_from(FunctionDescriptor::compact(0.3, 0.0, 1.0), g));
    RCoord fixed = gamma;
    fixed.rule = {Basepoint::fixed, 0.25};
    const auto phi = r_inverse(fixed);
    CHECK(std::abs(phi.f().eval(0.25)) < 1e-12);
    CHECK(phi.f().slopes() == r_inverse(gamma).f().slopes());
  }
  SUBCASE("non-decaying left edge") {
    CHECK_THROWS_AS(r_inverse(make_rcoord(GridFunction(g, std::vector<double>(g.size(), 0.5)))), Error);
  }
}

TEST_CASE("boundary value problem") {
  const UniformGrid g(-6, 6, 1e-3);
  const auto phi0 = hs_from(FunctionDescriptor::compact(0.3, -1.0, 1.2), g);
  const auto phi1 = hs_from(FunctionDescriptor::compact(-0.25, 1.5, 0.9), g);
  SUBCASE("endpoints") {
    CHECK(gap(geodesic_bvp(phi0, phi1, 0.0).phi.f(), phi0.f()) < 1e-10);
    CHECK(gap(geodesic_bvp(phi0, phi1, 1.0).phi.f(), phi1.f()) < 1e-10);
  }
  SUBCASE("constant path") {
    for (double t : {-1.0, 0.3, 2.0}) CHECK(gap(geodesic_bvp(phi0, phi0, t).phi.f(), phi0.f()) < 1e-10);
  }
  SUBCASE("derivative stays inside the endpoint supports") {
    const auto mid = geodesic_bvp(phi0, phi1, 0.5);
    const auto& s = mid.phi.f().slopes();
    for (std::size_t i = 0; i < g.size(); ++i)
      if (std::abs(g.x(i) + 1.0) > 1.2 && std::abs(g.x(i) - 1.5) > 0.9) CHECK(s[i] == 0.0);
  }
}

TEST_CASE("distance") {
  const UniformGrid g(-6, 6, 1e-3);
  const auto phi0 = hs_from(FunctionDescriptor::compact(0.3, -1.0, 1.2), g);
  const auto phi1 = hs_from(FunctionDescriptor::compact(-0.25, 1.5, 0.9), g);
  CHECK(distance(phi0, phi0).value == 0.0);
  const auto d01 = distance(phi0, phi1), d10 = distance(phi1, phi0);
  CHECK(d01.value == d10.value);
  CHECK(d01.rel_gap < 1e-8);
  SUBCASE("from the identity") {
    // 4 int (sqrt(phi') - 1)^2 by an independent fine Gauss-Legendre quadrature
    const auto d = FunctionDescriptor::compact(-0.25, 1.5, 0.9);
    const double oracle = gauss_legendre(
        [&](double x) {
          const double r = std::sqrt(1.0 + evaluate(d, 1, x)) - 1.0;
          return 4.0 * r * r;
        },
        0.6, 2.4, 200);
    CHECK(distance(identity(g), phi1).quadrature_sq == doctest::Approx(oracle).epsilon(1e-10));
  }
  SUBCASE("property: affine reparametrization") {
    testing::Rng rng(72);
    INFO(testing::seed_note());
    const double d = d01.value;
    for (int trial = 0; trial < 8; ++trial) {
      const double s = rng.uniform(-0.3, 1.2), t = rng.uniform(-0.3, 1.2);
      const auto a = geodesic_bvp(phi0, phi1, s).phi;
      const auto b = geodesic_bvp(phi0, phi1, t).phi;
      if (!a.in_group() || !b.in_group()) continue;
      CHECK(distance(a, b).value == doctest::Approx(std::abs(t - s) * d).epsilon(1e-6).scale(1e-12));
    }
  }
  SUBCASE("isometry: finite-difference speed is constant and equals the distance") {
    const double eps = 1e-4;
    for (double s : {0.0, 0.25, 0.5, 0.75}) {
      const auto a = geodesic_bvp(phi0, phi1, s).gamma.gamma.values();
      const auto b = geodesic_bvp(phi0, phi1, s + eps).gamma.gamma.values();
      std::vector<double> q(a.size());
      for (std::size_t i = 0; i < q.size(); ++i) q[i] = (b[i] - a[i]) / eps;
      CHECK(lp_norm(q, g.step(), 2.0) == doctest::Approx(d01.value).epsilon(1e-4));
    }
  }
}

TEST_CASE("initial value problem") {
  const UniformGrid g(-6, 6, 1e-3);
  const auto phi0 = hs_from(FunctionDescriptor::compact(0.2, 0.5, 1.5), g);
  SUBCASE("zero tangent") {
    const GridFunction zero(g, std::vector<double>(g.size(), 0.0));
    for (double t : {0.5, 3.0}) CHECK(gap(geodesic_ivp(phi0, zero, t).phi.f(), phi0.f()) < 1e-10);
  }
  SUBCASE("small-t slope reproduces the tangent") {
    const auto h = grid_function(FunctionDescriptor::compact(0.4, -0.5, 1.0), g);
    const double t = 1e-4;
    const auto plus = geodesic_ivp(phi0, h, t).phi.f().values();
    const auto minus = geodesic_ivp(phi0, h, -t).phi.f().values();
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs((plus[i] - minus[i]) / (2 * t) - h.value(i)));
    CHECK(err < 1e-6);
  }
  SUBCASE("blow-up time for a negative gaussian slope") {
    const double m = 0.8;
    const auto h = grid_function(FunctionDescriptor::antiderivative(FunctionDescriptor::gaussian(-m, 0.3, 0.7)), g);
    const auto rep = blowup_ivp(identity(g), h);
    CHECK(rep.t1 == doctest::Approx(2.0 / m).epsilon(1e-12));
    REQUIRE(rep.contact_x.has_value());
    CHECK(*rep.contact_x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::isinf(rep.t0));
  }
  SUBCASE("property: nonconstant geodesics are incomplete") {
    testing::Rng rng(73);
    INFO(testing::seed_note());
    for (int trial = 0; trial < 10; ++trial) {
      const auto base = hs_from(rng.compact_bump(), g);
      const auto h = grid_function(rng.compact_bump(), g);
      const auto rep = blowup_ivp(base, h);
      CHECK((std::isfinite(rep.t1) || std::isfinite(rep.t0)));
    }
  }
}

TEST_CASE("blow-up and monoid continuation") {
  const UniformGrid g(-5, 5, 1e-3);
  // gamma_b with minimum -1 at x = 0.4: h' = (1 + 0/2) * gamma_b
  std::vector<double> gb(g.size()), hv(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) gb[i] = -bump::value((g.x(i) - 0.4) / 1.1);
  const auto cumulative = cumulative_simpson(gb, g.step());
  GridFunction h(g, cumulative);
  h.with_slopes(gb);
  const auto rep = blowup_ivp(identity(g), h);
  CHECK(rep.t1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(rep.t0));
  CHECK(*rep.contact_x == doctest::Approx(0.4).epsilon(1e-12));
  const auto before = rep.at(1.9);
  CHECK_FALSE(before.monoid);
  CHECK_FALSE(before.first_contact.has_value());
  const auto just_after = rep.at(2.0 + 1e-6);
  CHECK(just_after.monoid);
  REQUIRE(just_after.first_contact.has_value());
  CHECK(std::abs(*just_after.first_contact - 0.4) < 0.01);
  CHECK(just_after.monotone);
  CHECK(just_after.surjective);
  // phi' = (1 + gamma/2)^2 vanishes at the contact point
  const std::size_t i = g.cell(0.4 + 0.5 * g.step());
  CHECK(1.0 + just_after.phi.f().slopes()[i] < 1e-10);
  // never returns
  for (double t = 2.01; t <= 6.0; t += 0.25) {
    const auto c = rep.at(t);
    CHECK(c.gamma_floor <= -2.0);
    CHECK(c.monotone);
  }
}

TEST_CASE("shift formula") {
  const UniformGrid g(-8, 8, 1e-3);
  const auto id = identity(g);
  const auto phi1 = calibrated(g, 0.5, -2.0, 1.0, 2.0, 1.0);
  const auto phi2 = calibrated(g, 0.8, -3.0, 1.5, 2.5, 1.5);
  SUBCASE("calibrated endpoints vanish at both ends") {
    CHECK(std::abs(phi1.f().values().back()) < 1e-8);
    CHECK(std::abs(phi2.f().values().back()) < 1e-8);
  }
  SUBCASE("trivial times") {
    for (double t : {0.0, 1.0}) CHECK(std::abs(shift_r(id, phi1, t).measured) < 1e-8);
  }
  SUBCASE("t = 1/2 shifts by -1/16 of the squared distance") {
    // (t^2 - t)/4 = -1/16 at t = 1/2
    const auto r = shift_r(phi1, phi2, 0.5);
    CHECK(r.closed_form == doctest::Approx(-distance(phi1, phi2).r_norm_sq / 16.0).epsilon(1e-12));
    CHECK(r.measured < 0.0);
    CHECK(r.rel_gap < 1e-6);
  }
  SUBCASE("measured shift tracks the closed form") {
    for (double t : {0.25, 0.5, 2.0}) {
      const auto r = shift_r(id, phi2, t);
      CHECK(r.rel_gap < 1e-6);
      CHECK(std::abs(r.constraint1) < 1e-8);
    }
  }
  SUBCASE("uncalibrated endpoints are rejected") {
    const auto moved = r_inverse(make_rcoord(GridFunction(g, [&] {
      std::vector<double> v(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) v[i] = 0.5 * bump::value(g.x(i));
      return v;
    }())));
    CHECK_THROWS_AS(shift_r(id, moved, 0.5), Error);
  }
  SUBCASE("calibration preconditions") {
    CHECK_THROWS_AS(calibrated_gamma(g, 0.5, 0.0, 1.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(calibrated_gamma(g, 0.8, -3.0, 1.5, 2.5, 1.0), Error);
  }
}

TEST_CASE("PDE oracle") {
  const UniformGrid g(-6, 6, 0.01);
  SUBCASE("zero data stays zero") {
    const GridFunction u0(g, std::vector<double>(g.size(), 0.0));
    const auto rep = pde_oracle(u0, 0.5, 1e-2);
    for (const auto& s : rep.snapshots) {
      CHECK(sup_abs(s.u) == 0.0);
      CHECK(sup_abs(s.f) == 0.0);
    }
  }
  SUBCASE("agrees with the geodesic on a coarse grid") {
    const auto u0 = grid_function(FunctionDescriptor::gaussian(0.5, 0.0, 1.0), g);
    const auto rows = validate_geodesic(identity(g), u0, 5e-4, {0.5, 1.0});
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) CHECK(r.sup_error < 1e-3);
  }
  SUBCASE("CFL violation") {
    const auto u0 = grid_function(FunctionDescriptor::gaussian(0.5, 0.0, 1.0), g);
    CHECK_THROWS_AS(pde_oracle(u0, 0.1, 0.05), Error);
  }
}
