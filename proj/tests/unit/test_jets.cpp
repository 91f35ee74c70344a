#include <cmath>

#include "doctest.h"
#include "hsc/error.hpp"
#include "hsc/jets.hpp"
#include "random.hpp"

using namespace hsc;

namespace {

// Truncated product, written independently of the library.
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b, int N) {
  std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// f(g(x)) about 0 by Horner in the ring of truncated polynomials; f is
// expanded about g(0) so only g - g(0) enters the powers.
std::vector<double> naive_compose(const std::vector<double>& f, std::vector<double> g, int N) {
  g[0] = 0.0;
  std::vector<double> acc(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = N; i >= 0; --i) {
    acc = poly_mul(acc, g, N);
    acc[0] += f[i];
  }
  return acc;
}

Rational binom(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Jet<double> random_jet(testing::Rng& rng, int N, bool normalized) {
  auto c = rng.vector(static_cast<std::size_t>(N) + 1, -1, 1);
  if (normalized) {
    c[0] = 0.0;
    c[1] = rng.uniform(0.5, 1.5) * (rng.coin() ? 1 : -1);
  }
  return Jet<double>(c);
}

}  // namespace

TEST_CASE("compose with the identity jet") {
  Jet<double> f({0.5, 2.0, -1.0, 3.0, 0.25});
  const auto h = compose_jets(f, Jet<double>::identity(4));
  for (int k = 0; k <= 4; ++k) CHECK(h[k] == f[k]);
}

TEST_CASE("y^2 after x + x^2") {
  Jet<Rational> f({Rational(0), Rational(0), Rational(1), Rational(0), Rational(0)});
  Jet<Rational> g({Rational(0), Rational(1), Rational(1), Rational(0), Rational(0)});
  const auto h = compose_jets(f, g);
  const int expect[] = {0, 0, 1, 2, 1};
  for (int k = 0; k <= 4; ++k) CHECK(h[k] == Rational(expect[k]));
}

TEST_CASE("degree mismatch and misaligned base points are domain errors") {
  Jet<double> f({0.0, 1.0, 1.0}), g({0.0, 1.0, 1.0, 1.0});
  CHECK_THROWS_AS(compose_jets(f, g), Error);
  Jet<double> shifted({0.5, 1.0, 1.0});
  CHECK_THROWS_AS(compose_jets(f, shifted), Error);
}

TEST_CASE("property: compose matches naive nested expansion") {
  testing::Rng rng(21);
  INFO(testing::seed_note());
  for (int trial = 0; trial < 30; ++trial) {
    const int N = 8;
    const auto f = random_jet(rng, N, false);
    auto gc = rng.vector(N + 1, -1, 1);
    gc[0] = 0.0;  // aligned with f's base point 0
    const Jet<double> g(gc);
    const auto h = compose_jets(f, g);
    const auto oracle = naive_compose(std::vector<double>(f.coeffs().begin(), f.coeffs().end()), gc, N);
    for (int k = 0; k <= N; ++k) CHECK(h[k] == doctest::Approx(oracle[k]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("property: power route above the partition cap agrees with the naive expansion") {
  testing::Rng rng(22);
  INFO(testing::seed_note());
  const int N = kPartitionDegreeCap + 4;
  std::vector<double> fc(N + 1), gc(N + 1, 0.0);
  for (int k = 0; k <= N; ++k) fc[k] = rng.uniform(-1, 1) / (k + 1);
  for (int k = 1; k <= N; ++k) gc[k] = rng.uniform(-1, 1) / (k + 1);
  const auto h = compose_jets(Jet<double>(fc), Jet<double>(gc));
  const auto oracle = naive_compose(fc, gc, N);
  for (int k = 0; k <= N; ++k) CHECK(h[k] == doctest::Approx(oracle[k]).epsilon(1e-11).scale(1.0));
}

TEST_CASE("property: associativity (floating and exact)") {
  testing::Rng rng(23);
  INFO(testing::seed_note());
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 10;
    const auto f = random_jet(rng, N, true), g = random_jet(rng, N, true), h = random_jet(rng, N, true);
    const auto left = compose_jets(compose_jets(f, g), h);
    const auto right = compose_jets(f, compose_jets(g, h));
    double scale = 0.0;
    for (int k = 0; k <= N; ++k) scale = std::max(scale, std::abs(left[k]));
    for (int k = 0; k <= N; ++k) CHECK(std::abs(left[k] - right[k]) <= 1e-12 * std::max(1.0, scale));
  }
  for (int trial = 0; trial < 3; ++trial) {
    const int N = 7;
    auto rj = [&] {
      std::vector<Rational> c{Rational(0)};
      for (int k = 1; k <= N; ++k) c.push_back(Rational(rng.integer(-9, 9) + (k == 1 ? 20 : 0), rng.integer(1, 7)));
      return Jet<Rational>(c);
    };
    const auto f = rj(), g = rj(), h = rj();
    const auto left = compose_jets(compose_jets(f, g), h);
    const auto right = compose_jets(f, compose_jets(g, h));
    for (int k = 0; k <= N; ++k) CHECK(left[k] == right[k]);
  }
}

TEST_CASE("reversion examples") {
  SUBCASE("identity") {
    const auto inv = invert_jet(Jet<Rational>::identity(6));
    for (int k = 0; k <= 6; ++k) CHECK(inv[k] == Rational(k == 1 ? 1 : 0));
  }
  SUBCASE("linear") {
    const auto inv = invert_jet(Jet<Rational>({Rational(0), Rational(2), Rational(0), Rational(0)}));
    CHECK(inv[1] == Rational(1, 2));
    CHECK(inv[2] == 0);
    CHECK(inv[3] == 0);
  }
  SUBCASE("x + x^2 gives signed Catalan numbers") {
    const int N = 12;
    std::vector<Rational> c(N + 1, Rational(0));
    c[1] = c[2] = 1;
    const Jet<Rational> f(c);
    const auto inv = invert_jet(f);
    CHECK(inv[0] == 0);
    for (int n = 0; n + 1 <= N; ++n) {
      const Rational catalan = binom(2 * n, n) / (n + 1);
      CHECK(inv[n + 1] == (n % 2 ? -catalan : catalan));
    }
    const auto back = compose_jets(f, inv);
    for (int k = 0; k <= N; ++k) CHECK(back[k] == Rational(k == 1 ? 1 : 0));
  }
  SUBCASE("singular germ") {
    CHECK_THROWS_AS(invert_jet(Jet<double>({0.0, 0.0, 1.0})), Error);
  }
}

TEST_CASE("property: inversion round trip") {
  // Inverse coefficients grow like a1^(-2k) times Catalan numbers, so the
  // floating result is judged against the exact inverse of the same jet.
  testing::Rng rng(24);
  INFO(testing::seed_note());
  for (int trial = 0; trial < 25; ++trial) {
    const int N = rng.integer(3, 14);
    const auto f = random_jet(rng, N, true);
    std::vector<Rational> exact;
    for (double c : f.coeffs()) exact.emplace_back(c);  // doubles are exact rationals
    const Jet<Rational> fr(exact);
    const auto inv_r = invert_jet(fr);
    const auto inv_d = invert_jet(f);
    for (int k = 0; k <= N; ++k) {
      const double e = to_double(inv_r[k]);
      CHECK(std::abs(inv_d[k] - e) <= 1e-11 * std::max(1.0, std::abs(e)));
    }
    const auto back = compose_jets(fr, inv_r);
    const auto front = compose_jets(inv_r, fr);
    for (int k = 1; k <= N; ++k) {
      CHECK(back[k] == Rational(k == 1 ? 1 : 0));
      CHECK(front[k] == Rational(k == 1 ? 1 : 0));
    }
  }
}

TEST_CASE("jets at a nonzero base point") {
  // f(y) = exp(y) about y0 = 1, g(x) = 1 + sin(x) about 0
  const int N = 6;
  std::vector<double> fc(N + 1), gc(N + 1, 0.0);
  double fact = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k) fact *= k;
    fc[k] = std::exp(1.0) / fact;
  }
  gc[0] = 1.0;
  gc[1] = 1.0;
  gc[3] = -1.0 / 6;
  gc[5] = 1.0 / 120;
  const auto h = compose_jets(Jet<double>(fc, 1.0), Jet<double>(gc, 0.0));
  // exp(1 + sin x) = e (1 + x + x^2/2 - x^4/8 - x^5/15 - x^6/240 + ...)
  const double expect[] = {1, 1, 0.5, 0, -1.0 / 8, -1.0 / 15, -1.0 / 240};
  for (int k = 0; k <= N; ++k) CHECK(h[k] == doctest::Approx(std::exp(1.0) * expect[k]).epsilon(1e-13).scale(1.0));
}

TEST_CASE("majorant series examples") {
  const std::vector<Rational> ones(9, Rational(1));
  const auto s = majorant_series<Rational>(Rational(1), Rational(1), Rational(1), ones, 8);
  // oracle: coefficients of the solution of 2g + log(1 - g) = s
  const Rational expect[] = {0, 1, Rational(1, 2), Rational(5, 6), Rational(41, 24), Rational(469, 120),
                             Rational(6889, 720), Rational(24721, 1008), Rational(2620169, 40320)};
  for (int k = 0; k <= 8; ++k) CHECK(s.g_coeffs[k] == expect[k]);
  CHECK(s.bound_holds);
  CHECK(s.bound_ratio[2] == doctest::Approx(1.0 / 8));

  std::vector<Rational> gev2{1};
  for (int k = 1; k <= 8; ++k) gev2.push_back(gev2.back() * k);
  const auto s2 = majorant_series<Rational>(Rational(1), Rational(1), Rational(1), gev2, 8);
  const Rational expect2[] = {0, 1, Rational(1, 2), Rational(7, 6), Rational(91, 24), Rational(1801, 120),
                              Rational(49561, 720), Rational(1806967, 5040), Rational(84915811, 40320)};
  for (int k = 0; k <= 8; ++k) CHECK(s2.g_coeffs[k] == expect2[k]);

  for (double A : {0.25, 1.0, 4.0}) CHECK(majorant_series(A, 2.0, 0.5, make_sequence(Generator::gevrey(2), 20), 20).g_coeffs[1] == A);
}

TEST_CASE("majorant: floating and exact modes agree") {
  const auto m = make_sequence(Generator::gevrey(2), 30);
  const auto d = majorant_series(4.0, 0.25, 1.0, m, 30);
  const auto r = majorant_series<Rational>(Rational(4), Rational(1, 4), Rational(1), exact_weights(m), 30);
  for (int k = 1; k <= 30; ++k) CHECK(d.g_coeffs[k] == doctest::Approx(to_double(r.g_coeffs[k])).epsilon(1e-12));
}

TEST_CASE("property: majorant dominates inverse jets of dominated perturbations") {
  // x + phi(x) with |phi_j| <= psi_j (A = 1) has an inverse dominated by g_N.
  testing::Rng rng(25);
  INFO(testing::seed_note());
  const double grid[] = {0.25, 1.0, 4.0};
  for (int trial = 0; trial < 20; ++trial) {
    const int N = rng.integer(4, 20);
    const double C = grid[rng.integer(0, 2)], rho = grid[rng.integer(0, 2)];
    const auto m = make_sequence(rng.coin() ? Generator::gevrey(1) : Generator::gevrey(2), N);
    const auto s = majorant_series(1.0, C, rho, m, N);
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
    c[1] = 1.0;
    for (int j = 2; j <= N; ++j) c[j] = s.psi_coeffs[j] * rng.uniform(-1, 1);
    const auto inv = invert_jet(Jet<double>(c));
    for (int i = 1; i <= N; ++i) CHECK(std::abs(inv[i]) <= s.g_coeffs[i] * (1 + 1e-12));
  }
}

TEST_CASE("faa di bruno bound sums") {
  SUBCASE("constant-one closed form A (1 + A)^(gamma - 1)") {
    for (double A : {0.1, 1.0, 3.0}) {
      const auto lhs = fdb_bound_lhs(A, make_sequence(Generator::constant_one(), 30), 30);
      CHECK(lhs[0] == 1.0);
      for (int g = 1; g <= 30; ++g) CHECK(lhs[g] == doctest::Approx(A * std::pow(1 + A, g - 1)).epsilon(1e-12));
    }
  }
  SUBCASE("single partition of 1") {
    CHECK(fdb_bound_lhs(1.0, make_sequence(Generator::constant_one(), 4), 4)[1] == 1.0);
  }
  SUBCASE("gevrey(2) against a composition-count oracle across the partition cap") {
    const int G = kPartitionDegreeCap + 5;
    const auto m = make_sequence(Generator::gevrey(2), G);
    const double A = 0.5;
    // dp[a][g]: sum over ordered compositions of g into a parts of prod M_parts
    std::vector<std::vector<double>> dp(G + 1, std::vector<double>(G + 1, 0.0));
    dp[0][0] = 1.0;
    for (int a = 1; a <= G; ++a)
      for (int g = a; g <= G; ++g)
        for (int last = 1; last <= g - (a - 1); ++last) dp[a][g] += dp[a - 1][g - last] * m.value(last);
    const auto lhs = fdb_bound_lhs(A, m, G);
    for (int g = 1; g <= G; ++g) {
      double oracle = 0.0;
      for (int a = 1; a <= g; ++a) oracle += std::pow(A, a) * m.value(a) * dp[a][g];
      CHECK(lhs[g] == doctest::Approx(oracle).epsilon(1e-11));
    }
  }
  SUBCASE("fitted C decreases with A for constant-one") {
    const auto r = fdb_bound_check(1.0, make_sequence(Generator::constant_one(), 40), 40);
    CHECK(r.fitted_C == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.c_decreases);
    for (std::size_t i = 0; i < r.scan_A.size(); ++i)
      CHECK(r.scan_C[i] == doctest::Approx(1 + r.scan_A[i]).epsilon(1e-6));
  }
  SUBCASE("every gamma obeys the fitted bound") {
    const auto m = make_sequence(Generator::gevrey(2), 40);
    const auto r = fdb_bound_check(0.5, m, 40);
    for (int g = 0; g <= 40; ++g) CHECK(r.lhs[g] <= r.fitted_B * std::pow(r.fitted_C, g) * m.value(g) * (1 + 1e-9));
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1e-2") == Rational(1, 100));
  CHECK(parse_rational("010/03") == Rational(10, 3));
  CHECK(parse_rational("-0.5e1") == Rational(-5));
  CHECK(to_string(Rational(-5, 6)) == "-5/6");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}
