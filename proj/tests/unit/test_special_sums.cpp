#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qladder/errors.hpp"
#include "qladder/special_sums.hpp"

using namespace qladder;

namespace {

// Direct summation in long double, far terms first.
long double brute_sum(double eps, double a, long long n, int power) {
  long double s = 0.0L;
  for (long long k = n; k >= -n; --k) {
    if (k == 0) continue;
    const long double kk = k;
    const long double f = 1.0L / (1.0L + (kk / a) * (kk / a));
    const long double d = eps - kk;
    s += power == 1 ? f / d : f / (d * d);
  }
  const long double d0 = eps;
  return s + (power == 1 ? 1.0L / d0 : 1.0L / (d0 * d0));
}

}  // namespace

TEST_CASE("frozen high-precision values of S1 and S2") {
  // 40-digit reference evaluations of the defining series.
  CHECK(s1_closed(0.3, 2.0) == doctest::Approx(2.6931470447871565743).epsilon(1e-13));
  CHECK(s2_trig(0.3, 2.0) == doctest::Approx(13.606433718218273958).epsilon(1e-13));
  CHECK(s1_closed(-2.7, 0.5) == doctest::Approx(-0.53761723942513242248).epsilon(1e-13));
  CHECK(s2_trig(-2.7, 0.5) == doctest::Approx(0.65786444875817708432).epsilon(1e-13));
  CHECK(s1_closed(5.5, 20.0) == doctest::Approx(0.80319626239367171698).epsilon(1e-13));
  CHECK(s2_trig(5.5, 20.0) == doctest::Approx(9.050191902964039446).epsilon(1e-13));
  CHECK(alpha(0.5) == doctest::Approx(2.1806628214547364601).epsilon(1e-14));
}

TEST_CASE("closed forms agree with direct summation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ed(-10.0, 10.0), ad(0.05, 50.0);
  for (int i = 0; i < 12; ++i) {
    double eps = ed(rng);
    if (pole_distance(eps) < 1e-3) eps += 0.01;
    const double a = ad(rng);
    const auto s1 = static_cast<double>(brute_sum(eps, a, 400000, 1));
    const auto s2 = static_cast<double>(brute_sum(eps, a, 400000, 2));
    CHECK(std::abs(s1_closed(eps, a) - s1) < 1e-4);
    CHECK(std::abs(s2_trig(eps, a) - s2) < 1e-4 * std::max(1.0, s2));
    CHECK(std::abs(s1_partial(eps, a, 400000) - s1) < 1e-9);
  }
}

TEST_CASE("s2 is minus the derivative of s1") {
  for (double a : {0.1, 0.7, 3.0, 40.0}) {
    for (double eps : {-7.3, -0.45, 0.2, 2.9, 9.61}) {
      const double h = 1e-6;
      const double fd = -(s1_closed(eps + h, a) - s1_closed(eps - h, a)) / (2 * h);
      CHECK(fd == doctest::Approx(s2_trig(eps, a)).epsilon(1e-6));
    }
  }
}

TEST_CASE("parity and positivity") {
  for (double a : {0.3, 5.0}) {
    for (double eps : {0.25, 1.7, 4.4}) {
      CHECK(s1_closed(-eps, a) == doctest::Approx(-s1_closed(eps, a)).epsilon(1e-13));
      CHECK(s2_trig(-eps, a) == doctest::Approx(s2_trig(eps, a)).epsilon(1e-13));
      CHECK(s2_trig(eps, a) > 0.0);
    }
  }
  // Exactly odd by construction of the pairing.
  CHECK(s1_partial(0.37, 2.0, 1000) == -s1_partial(-0.37, 2.0, 1000));
}

TEST_CASE("lorentz sum and alpha") {
  long double direct = 0.0L;
  const double a = 1.3;
  for (long long k = 2000000; k >= -2000000; --k) direct += 1.0L / ((long double)a * a + (long double)k * k);
  CHECK(lorentz_sum(a) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-6));
  CHECK(alpha(INFINITY) == 0.0);
  CHECK(coth(25.0) == 1.0);
  CHECK(coth(0.5) == doctest::Approx(1.0 / std::tanh(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(alpha(0.0), DomainError);
  CHECK_THROWS_AS(alpha(-1.0), DomainError);
}

TEST_CASE("flat-coupling limit reduces S1 to pi cot") {
  const double eps = 0.3;
  CHECK(s1_closed(eps, INFINITY) == doctest::Approx(std::numbers::pi / std::tan(std::numbers::pi * eps)));
  CHECK(s2_trig(eps, INFINITY) ==
        doctest::Approx(std::pow(std::numbers::pi / std::sin(std::numbers::pi * eps), 2)));
}

TEST_CASE("pole guard") {
  CHECK_THROWS_AS(cot_pi(3.0), PoleError);
  CHECK_THROWS_AS(s1_closed(-2.0, 1.0), PoleError);
  CHECK_THROWS_AS(s2_trig(4.0 + 1e-13, 1.0), PoleError);
  CHECK_NOTHROW(cot_pi(3.0 + 1e-11));
  CHECK_THROWS_AS(s1_partial(1.0, 1.0, 10), PoleError);
  CHECK_THROWS_AS(s1_partial(0.5, 1.0, 0), DomainError);
}

TEST_CASE("ladder point keeps the offset exactly") {
  const LadderPoint x = LadderPoint::split(7.25);
  CHECK(x.level == 7);
  CHECK(x.offset == 0.25);
  CHECK(LadderPoint::split(-2.75).level == -3);
  // Far out, eps = level + offset loses the offset; the split form does not.
  const LadderPoint far{500000, 3e-11};
  CHECK(cot_pi(far) == doctest::Approx(1.0 / (std::numbers::pi * 3e-11)).epsilon(1e-12));
}

TEST_CASE("rational forms coincide with the trigonometric ones at a root") {
  // Root of the secular equation for v = 0.39, delta = 1, a = 1.25,
  // e_phi = 0.3, frozen from a 40-digit evaluation.
  const ModelParams p = ModelParams::make(0.39, 1.0, 1.25, 0.3);
  const double root = 0.48300027334062683682;
  CHECK(cot_rational(root, p) == doctest::Approx(cot_pi(root)).epsilon(1e-12));
  CHECK(s2_rational(root, p) == doctest::Approx(s2_trig(root, p.a)).epsilon(1e-12));
}
