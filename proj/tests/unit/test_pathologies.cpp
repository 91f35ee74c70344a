#include <cmath>

#include "doctest.h"
#include "hsc/descriptors.hpp"
#include "hsc/error.hpp"
#include "hsc/pathologies.hpp"

using namespace hsc;

namespace {

const Lemma157Report& table() {
  static const Lemma157Report r = lemma157_profile({1.0, 1.5, 2.0, 4.0}, 10000, 3);
  return r;
}

}  // namespace

TEST_CASE("bump-train norm table: series against quadrature") {
  const auto& r = table();
  CHECK(r.nonnegative);
  CHECK(r.n_min == 3);
  int convergent = 0;
  for (const auto& row : r.rows) {
    CAPTURE(row.k);
    CAPTURE(row.p);
    // the series is summed over the same finite train, so every cell is comparable
    CHECK(row.rel_gap < 1e-2);
    if (row.convergent) ++convergent;
    CHECK(row.convergent == (row.p > 1.0 && !(row.k == 0 && row.p <= 1.0)));
  }
  CHECK(convergent == 12);
}

TEST_CASE("bump train windowed L1 of phi' follows the train harmonic sum") {
  const auto& r = table();
  CHECK(r.chi_prime_l1 == doctest::Approx(2.0).epsilon(1e-10));
  REQUIRE(r.schedule.size() == 3);
  for (std::size_t i = 0; i < r.schedule.size(); ++i) {
    CHECK(r.l1_prime[i] == doctest::Approx(r.train_harmonic[i]).epsilon(1e-5));
    if (i) CHECK(r.l1_prime[i] > r.l1_prime[i - 1] + 4.0);  // ~ 2 log 10 per decade
  }
}

TEST_CASE("bump train phi has divergent L1 mass, sum of 1/(n log n)") {
  const auto& r = table();
  double s = 0.0;
  std::size_t next = 0;
  for (int n = r.n_min; n <= r.schedule.back(); ++n) {
    s += 1.0 / (n * std::log(n));
    if (n == r.schedule[next]) {
      CHECK(r.l1_phi[next] == doctest::Approx(bump::l1_norm() * s).epsilon(1e-6));
      ++next;
    }
  }
}

// The stated invariant "phi in L1, windowed L1 increments < 1e-6 beyond
// n = 1e3" contradicts the previous case: the increments are 0.49 and 0.35.
TEST_CASE("bump train bounded L1 invariant" * doctest::should_fail()) {
  const auto& r = table();
  for (std::size_t i = 2; i < r.l1_phi.size(); ++i) CHECK(std::abs(r.l1_phi[i] - r.l1_phi[1]) < 1e-6);
}

TEST_CASE("bump train rejects trains with overlapping summands") {
  CHECK_THROWS_AS(lemma157_profile({2.0}, 100, 1, {100}, 2), Error);
  // schedule entries beyond the train are dropped
  CHECK(lemma157_profile({2.0}, 100, 1, {50, 200}).schedule == std::vector<int>{50});
}

TEST_CASE("divergence of the product terms") {
  const auto r = halflie_divergence(2.0, 10000);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.term1_increasing);
  CHECK(r.fitted_c > 0.0);
  CHECK(r.term2_increment < 1e-3);
  CHECK(r.theta_max_rel_error < 1e-8);
  // b_n theta(2n - 1) >= ||chi||_1 b_n log n since H_{n-1} >= log n
  CHECK(r.lower_bound_min_ratio >= 1.0);
  CHECK(r.rows[0].selected == 4);
  CHECK(r.rows[2].selected == 9);
  CHECK(r.rows[2].window_right_edge == 20001.0);
  MESSAGE("term1 growth 1e2 -> 1e4: " << r.term1_growth);
}

TEST_CASE("mu sequence asymptotics") {
  SUBCASE("r_k does not depend on M") {
    const auto a = gevrey_mu_sequence(make_sequence(Generator::gevrey(1.0), 200), 200);
    const auto b = gevrey_mu_sequence(make_sequence(Generator::gevrey(2.0), 200), 200);
    for (int k = 1; k <= 200; ++k) {
      CHECK(a.log_r[k] == doctest::Approx(b.log_r[k]).epsilon(1e-13));
      CHECK(a.log_r[k] == doctest::Approx(std::log(2.0) - std::lgamma(k + 1.0) / (2.0 * k)).epsilon(1e-13));
    }
  }
  SUBCASE("monotone over k <= 1e4 with r_4 = 2 / 24^(1/8)") {
    const auto r = gevrey_mu_sequence(make_sequence(Generator::gevrey(2.0), 10000), 10000);
    CHECK(r.r_decreasing);
    CHECK(r.kr_increasing);
    CHECK(r.spacing_ok);
    CHECK(std::abs(r.r4 - 2.0 / std::pow(24.0, 0.125)) < 1e-12);
    CHECK(r.log_kr[100] > r.log_kr[10]);
    for (int k = 2; k <= 10000; ++k) {
      CHECK(r.log_r[k] < r.log_r[k - 1]);
      CHECK(r.log_kr[k] > r.log_kr[k - 1]);
    }
  }
  SUBCASE("needs the hypothesis bundle") {
    CHECK_THROWS_AS(gevrey_mu_sequence(make_sequence(Generator::custom({1, 1, 3, 1, 1, 1, 1, 1, 1}), 8), 8), Error);
  }
}
