#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hsc/descriptors.hpp"
#include "hsc/error.hpp"
#include "hsc/spaces.hpp"
#include "random.hpp"

using namespace hsc;

namespace {

SeminormQuery query(SpaceClass cls, double rho, const Generator& gen = Generator::constant_one(), int kmax = 12) {
  SeminormQuery q;
  q.cls = cls;
  q.rho = rho;
  q.kmax = kmax;
  q.M = make_sequence(gen, std::max(kmax, q.pmax));
  return q;
}

GridFunction bump_on(double a, double b, double h, double amp = 1.0, double c = 0.0, double w = 1.0) {
  return grid_function(FunctionDescriptor::compact(amp, c, w), UniformGrid(a, b, h));
}

}  // namespace

TEST_CASE("sine has unit B seminorm at k = 0") {
  auto d = FunctionDescriptor::sine(1.0, 1.0);
  const auto f = grid_function(d, UniformGrid(-10, 10, 1e-3));
  const auto r = seminorm(f, query(SpaceClass::B, 1.0));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  // cos(0) = 1 sits on a node while sin's peak falls between nodes, so the
  // k = 0 and k = 1 quotients tie to sampling accuracy
  CHECK(r.per_order[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.k <= 1);
  CHECK(r.truncated);
}

TEST_CASE("zero function has zero seminorm in every class") {
  const auto f = grid_function(FunctionDescriptor::zero(), UniformGrid(-5, 5, 0.01));
  for (auto cls : {SpaceClass::B, SpaceClass::W, SpaceClass::S, SpaceClass::D})
    CHECK(seminorm(f, query(cls, 1.0)).value == 0.0);
  const auto diag = class_diagnostic(f, query(SpaceClass::B, 1.0), {1, 2, 4});
  for (const auto& e : diag.entries) CHECK(e.value == 0.0);
  const auto inc = inclusion_report(f, 1.0, 2.0);
  CHECK(inc.weighted_ratio == 0.0);
  CHECK(inc.interp_ratio == 0.0);
}

TEST_CASE("W seminorm of a gaussian: finite differences match the Hermite oracle") {
  // the round-off guard eps * h^-10 <= 1e-6 forces h >= 0.11
  const UniformGrid g(-10, 10, 0.125);
  const auto exact = grid_function(FunctionDescriptor::gaussian(1, 0, 1), g);
  GridFunction fd(g, exact.values(), exact.claim());
  fd.with_fd_order(14);
  auto q = query(SpaceClass::W, 1.0, Generator::gevrey(2.0), 10);
  q.p = 2.0;
  const auto a = seminorm(exact, q);
  const auto b = seminorm(fd, q);
  CHECK(b.value == doctest::Approx(a.value).epsilon(1e-6));
  for (int k = 0; k <= 10; ++k) {
    CAPTURE(k);
    CHECK(b.per_order[k] == doctest::Approx(a.per_order[k]).epsilon(1e-6));
  }
  // k = 0 quotient is the L2 norm (pi/2)^(1/4)
  CHECK(a.per_order[0] == doctest::Approx(std::pow(std::numbers::pi / 2, 0.25)).epsilon(1e-10));
  CHECK(std::isnan(a.x));
}

TEST_CASE("property: absolute homogeneity") {
  testing::Rng rng(51);
  INFO(testing::seed_note());
  const UniformGrid g(-12, 12, 0.01);
  for (int trial = 0; trial < 5; ++trial) {
    const auto d = FunctionDescriptor::sum(
        {FunctionDescriptor::gaussian(rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(0.5, 1.5)),
         rng.compact_bump()});
    const auto f = grid_function(d, g);
    for (auto cls : {SpaceClass::B, SpaceClass::W, SpaceClass::S}) {
      const auto q = query(cls, rng.uniform(0.5, 4.0), Generator::gevrey(2.0), 8);
      const double base = seminorm(f, q).value;
      for (double lambda : {-2.0, 0.0, 0.5})
        CHECK(seminorm(f.scaled(lambda), q).value == doctest::Approx(std::abs(lambda) * base).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: rho monotonicity on random sweeps") {
  testing::Rng rng(52);
  INFO(testing::seed_note());
  const UniformGrid g(-14, 14, 0.01);
  for (int trial = 0; trial < 6; ++trial) {
    const auto f = grid_function(FunctionDescriptor::gaussian(1, rng.uniform(-1, 1), rng.uniform(0.4, 2)), g);
    std::vector<double> rhos{rng.uniform(0.1, 0.5)};
    for (int i = 0; i < 5; ++i) rhos.push_back(rhos.back() * rng.uniform(1.1, 3.0));
    for (auto cls : {SpaceClass::B, SpaceClass::W, SpaceClass::S}) {
      const auto diag = class_diagnostic(f, query(cls, 1.0, Generator::gevrey(1.5), 10), rhos);
      CHECK(diag.monotone);
      for (std::size_t i = 1; i < diag.entries.size(); ++i) CHECK(diag.entries[i].value <= diag.entries[i - 1].value);
    }
  }
}

TEST_CASE("compact bump is gevrey-2 at every tested rho") {
  const auto f = bump_on(-2, 2, 1e-3);
  auto q = query(SpaceClass::D, 1.0, Generator::gevrey(2.0), 12);
  const auto diag = class_diagnostic(f, q, {4, 8, 16, 32});
  CHECK(diag.finite_at_all_rho);
  CHECK(diag.confidence == Confidence::truncation_based);
  const auto s = seminorm(f, q);
  REQUIRE(s.support.has_value());
  CHECK(s.support->first > -1.0);
  CHECK(s.support->second < 1.0);
  // with M = 1 the bump's quotient k-trend is not bounded
  const auto flat = class_diagnostic(f, query(SpaceClass::D, 1.0, Generator::constant_one(), 12), {4, 8, 16, 32});
  CHECK_FALSE(flat.entries.front().finite);
}

TEST_CASE("class D requires vanishing window edges") {
  const auto f = grid_function(FunctionDescriptor::gaussian(1, 0, 1), UniformGrid(-10, 10, 0.01));
  CHECK_THROWS_AS(seminorm(f, query(SpaceClass::D, 1.0)), Error);
}

TEST_CASE("property: L2 on the window is bounded by the B quotient (Hoelder)") {
  testing::Rng rng(53);
  INFO(testing::seed_note());
  const UniformGrid g(-5, 5, 0.005);
  const double root_len = std::sqrt(g.x_max() - g.x_min());
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = grid_function(rng.compact_bump(), g);
    auto qw = query(SpaceClass::W, rng.uniform(0.5, 3), Generator::gevrey(2.0), 8);
    qw.p = 2.0;
    auto qb = qw;
    qb.cls = SpaceClass::B;
    const auto w = seminorm(f, qw), b = seminorm(f, qb);
    for (int k = 0; k <= 8; ++k) CHECK(w.per_order[k] <= root_len * b.per_order[k] * (1 + 1e-12));
  }
}

TEST_CASE("inclusion inequalities") {
  SUBCASE("interpolation is exact up to quadrature on a gaussian") {
    const auto f = grid_function(FunctionDescriptor::gaussian(1, 0, 1), UniformGrid(-10, 10, 1e-3));
    const auto r = inclusion_report(f, 1.0, 2.0);
    CHECK(r.interp_ratio <= 1 + 1e-8);
    // ||f||_2 = (pi/2)^(1/4), ||f||_1 = sqrt(pi), sup = 1
    CHECK(r.interp_ratio == doctest::Approx(std::pow(std::numbers::pi / 2, 0.25) / std::pow(std::numbers::pi, 0.25)));
  }
  SUBCASE("weighted sup bound on the compact bump with alpha = 2, p = 1") {
    const auto f = bump_on(-3, 3, 1e-3);
    const auto r = inclusion_report(f, 1.0, 2.0, 2);
    // int (1 + |x|)^-2 over the line is 2
    CHECK(r.weight_constant == doctest::Approx(2.0));
    CHECK(r.weighted_ratio <= 1.0);
    CHECK(r.weighted_lhs > 0.0);
  }
  SUBCASE("preconditions") {
    const auto f = bump_on(-3, 3, 1e-2);
    CHECK_THROWS_AS(inclusion_report(f, 2.0, 1.0), Error);
    CHECK_THROWS_AS(inclusion_report(f, 0.5, 2.0), Error);
    const auto wide = grid_function(FunctionDescriptor::sine(1, 1), UniformGrid(-3, 3, 1e-2));
    CHECK_THROWS_AS(inclusion_report(wide, 1.0, 2.0), Error);
  }
  SUBCASE("property: Sobolev ratio stays bounded over a random corpus") {
    testing::Rng rng(54);
    INFO(testing::seed_note());
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = grid_function(FunctionDescriptor::gaussian(rng.uniform(0.1, 3), rng.uniform(-2, 2), rng.uniform(0.3, 3)),
                                   UniformGrid(-20, 20, 0.01));
      for (double p : {1.0, 1.5, 2.0, 4.0}) {
        const auto r = inclusion_report(f, p, 2 * p);
        CHECK(r.interp_ratio <= 1 + 1e-8);
        CHECK(r.weighted_ratio <= 1.0);
        worst = std::max(worst, r.sobolev_ratio);
      }
    }
    MESSAGE("max sup|f| / ||f||_{W^{k,p}} over the corpus: " << worst);
    CHECK(worst <= 1.0);
  }
}

TEST_CASE("query validation") {
  const auto f = bump_on(-2, 2, 0.01);
  auto q = query(SpaceClass::B, 1.0);
  q.rho = 0.0;
  CHECK_THROWS_AS(seminorm(f, q), Error);
  q = query(SpaceClass::B, 1.0);
  q.kmax = 0;
  CHECK_THROWS_AS(seminorm(f, q), Error);
  q = query(SpaceClass::W, 1.0);
  q.p = 0.5;
  CHECK_THROWS_AS(seminorm(f, q), Error);
  CHECK_THROWS_AS(class_diagnostic(f, query(SpaceClass::B, 1.0), {2.0, 1.0}), Error);
  CHECK_THROWS_AS(space_class_from_string("Q"), Error);
  CHECK(space_class_from_string("W^p") == SpaceClass::W);
}
