#include <catch2/catch_amalgamated.hpp>

#include <binet/kernel.hpp>

#include <cmath>
#include <random>

#include "oracle_values.hpp"

using namespace binet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const KernelParams centered_unit{-0.5, 0.5};
}

TEST_CASE("KernelParams validates its corner") {
  REQUIRE_THROWS_AS(KernelParams(1.0, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(KernelParams(0.0, std::nan("")), std::domain_error);
  REQUIRE_THROWS_AS(KernelParams(std::numeric_limits<double>::infinity(), 0.0),
                    std::domain_error);
  const KernelParams p(2.0, -1.0);
  REQUIRE(p.span() == -3.0);
  REQUIRE(p.mid() == 0.5);
  REQUIRE(p.hi() == 2.0);
}

TEST_CASE("delta anchor values") {
  REQUIRE_THAT(delta(centered_unit, 1.0), WithinRel(oracle::delta_c_1, 1e-14));
  REQUIRE_THAT(delta(centered_unit, 0.5), WithinRel(oracle::delta_c_05, 1e-13));
  REQUIRE_THAT(delta(KernelParams(0.0, 2.0), 0.1),
               WithinRel(oracle::delta_02_01, 1e-13));
}

TEST_CASE("delta refuses t = 0 but exposes the limit") {
  REQUIRE_THROWS_AS(delta(centered_unit, 0.0), std::domain_error);
  REQUIRE(delta_limit_zero(centered_unit) == 0.0);
  REQUIRE(delta_limit_zero(KernelParams(1.0, 2.0)) == 1.5);
  REQUIRE_THAT(delta_prime_limit_zero(centered_unit), WithinRel(1.0 / 12.0, 1e-15));
  REQUIRE(delta_second_limit_zero == 0.0);
  // continuity into the limit from both sides
  REQUIRE_THAT(delta(KernelParams(1.0, 2.0), 1e-9), WithinRel(1.5, 1e-9));
  REQUIRE_THAT(delta(KernelParams(1.0, 2.0), -1e-9), WithinRel(1.5, 1e-9));
}

TEST_CASE("delta is symmetric in its parameters") {
  std::mt19937_64 eng(20240817);
  std::uniform_real_distribution<double> par(-3.0, 3.0), arg(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double a = par(eng), b = par(eng);
    if (a == b) continue;
    double t = arg(eng);
    if (t == 0.0) t = 0.5;
    const double lhs = delta(KernelParams(a, b), t);
    const double rhs = delta(KernelParams(b, a), t);
    REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-13 * (1.0 + std::abs(lhs))));
  }
}

TEST_CASE("delta stays inside its horizontal asymptotes") {
  for (double a : {-2.0, -0.5, 0.0, 1.0})
    for (double b : {-1.5, 0.25, 2.0}) {
      if (a == b) continue;
      const KernelParams p(a, b);
      const double lo = std::min(a, b);
      for (double t : {1e-4, 0.1, 1.0, 7.0, 90.0}) {
        const double right = delta(p, t);
        REQUIRE(right > p.mid());
        REQUIRE(right < p.hi());
        const double left = delta(p, -t);
        REQUIRE(left < p.mid());
        REQUIRE(left > lo);
      }
    }
}

TEST_CASE("delta matches its truncated series near the origin") {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> par(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    double a = par(eng), b = par(eng);
    if (a == b) b += 0.25;
    const KernelParams p(a, b);
    for (double t : {1e-4, -1e-4, 0.01, -0.03, 0.05}) {
      if (std::abs(p.span() * t) >= 0.5) continue;
      const double full = delta(p, t);
      const double series = delta_series(p, t, 12);
      REQUIRE_THAT(full, WithinAbs(series, 1e-13 * (1.0 + std::abs(full))));
    }
  }
}

TEST_CASE("delta_series validates its inputs") {
  const KernelParams p(0.0, 1.0);
  REQUIRE_THROWS_AS(delta_series(p, 0.6, 8), std::range_error);   // |span t| >= 1/2
  REQUIRE_NOTHROW(delta_series(p, 0.49, 8));
  REQUIRE_THROWS_AS(delta_series(p, 0.1, 0), std::domain_error);
  REQUIRE_THROWS_AS(delta_series(p, 0.1, 16), std::domain_error);
  REQUIRE(delta_series(p, 0.0, 8) == 0.5);  // series is regular at t = 0
}

TEST_CASE("delta_prime anchor and positivity") {
  REQUIRE_THAT(delta_prime(centered_unit, 1.0),
               WithinRel(oracle::delta_p_c_1, 1e-13));
  for (double t : {-20.0, -1.0, -1e-3, 1e-3, 0.3, 5.0, 40.0})
    REQUIRE(delta_prime(KernelParams(-1.0, 2.0), t) > 0.0);
  REQUIRE_THROWS_AS(delta_prime(centered_unit, 0.0), std::domain_error);
}

TEST_CASE("delta_prime matches a high-order difference of delta") {
  for (double a : {-1.0, 0.0, 0.5})
    for (double b : {-0.25, 1.0, 2.5}) {
      if (a == b) continue;
      const KernelParams p(a, b);
      for (double t : {-5.0, -0.7, 0.2, 1.0, 4.0}) {
        const double fd =
            oracle::richardson([&](double u) { return delta(p, u); }, t, 1e-2);
        REQUIRE_THAT(delta_prime(p, t), WithinAbs(fd, 1e-8));
      }
    }
}

TEST_CASE("delta_prime is even in t") {
  const KernelParams p(0.25, 1.75);
  for (double t : {1e-3, 0.1, 1.0, 12.0})
    REQUIRE_THAT(delta_prime(p, t), WithinRel(delta_prime(p, -t), 1e-12));
}

TEST_CASE("delta_second anchor, sign law, and symmetry") {
  REQUIRE_THAT(delta_second(centered_unit, 1.0),
               WithinRel(oracle::delta_pp_c_1, 1e-12));
  const KernelParams p(-2.0, 1.0);
  for (double t : {1e-3, 0.2, 2.0, 25.0}) {
    REQUIRE(delta_second(p, t) < 0.0);       // concave right of 0
    REQUIRE(delta_second(p, -t) > 0.0);      // convex left of 0
    REQUIRE_THAT(delta_second(p, t), WithinRel(-delta_second(p, -t), 1e-11));
  }
  REQUIRE_THROWS_AS(delta_second(p, 0.0), std::domain_error);
}

TEST_CASE("delta_second matches a difference quotient of delta_prime") {
  const KernelParams p(0.0, 1.5);
  for (double t : {-3.0, -0.4, 0.3, 1.0, 6.0}) {
    const double fd =
        oracle::richardson([&](double u) { return delta_prime(p, u); }, t, 1e-2);
    REQUIRE_THAT(delta_second(p, t), WithinAbs(fd, 1e-8));
  }
}

TEST_CASE("derivative formulas survive the series/direct seam") {
  // |span * t| = 1/4 is the internal switch; probe both sides of it
  const KernelParams p(-1.0, 1.0);  // span 2 -> seam at t = 1/8
  // just past the seam the direct branch must agree with the long series
  for (double t : {0.13, 0.16, 0.2, 0.24}) {
    REQUIRE_THAT(delta(p, t), WithinRel(delta_series(p, t, 15), 1e-13));
    REQUIRE_THAT(delta(p, -t), WithinRel(delta_series(p, -t, 15), 1e-13));
  }
  // derivatives may not jump across the switch beyond the local slope
  const double lo = 0.125 * (1.0 - 1e-10), hi = 0.125 * (1.0 + 1e-10);
  REQUIRE(std::abs(delta_prime(p, lo) - delta_prime(p, hi)) < 1e-11);
  REQUIRE(std::abs(delta_second(p, lo) - delta_second(p, hi)) < 1e-9);
}

TEST_CASE("extreme arguments saturate instead of overflowing") {
  const KernelParams p(-0.5, 0.5);
  REQUIRE_THAT(delta(p, 1e4), WithinRel(0.5 - 1e-4, 1e-12));
  REQUIRE_THAT(delta(p, 1e300), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(delta(p, -1e300), WithinAbs(-0.5, 1e-12));
  REQUIRE(std::isfinite(delta_prime(p, 1e300)));
  REQUIRE(std::isfinite(delta_second(p, 1e300)));
  REQUIRE(delta_prime(p, 1e6) > 0.0);
}

TEST_CASE("g_xy and F_ab are reciprocal views of the same object") {
  // F_{a,b}(t) * g_{e^a,e^b}(t) = 1
  for (double a : {-1.0, 0.0, 0.3})
    for (double b : {0.5, 1.0, 2.0}) {
      if (a >= b) continue;
      const KernelParams p(a, b);
      for (double t : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
        const double g = g_xy(std::exp(a), std::exp(b), t);
        REQUIRE_THAT(F_ab(p, t) * g, WithinRel(1.0, 1e-12));
      }
    }
  REQUIRE_THAT(F_ab(centered_unit, 1.0), WithinRel(oracle::F_c_1, 1e-14));
  REQUIRE_THAT(F_ab(centered_unit, 0.0), WithinRel(1.0, 1e-15));
}

TEST_CASE("g_xy validates its domain and handles t = 0") {
  REQUIRE_THROWS_AS(g_xy(-1.0, 2.0, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(g_xy(2.0, 1.0, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(g_xy(1.0, 1.0, 1.0), std::domain_error);
  REQUIRE_THAT(g_xy(1.0, std::exp(1.0), 0.0), WithinRel(1.0, 1e-15));
}

TEST_CASE("log-derivative of g recovers delta, and of F recovers -delta") {
  for (double a : {-0.5, 0.0, 1.0})
    for (double b : {0.5, 1.5}) {
      if (a >= b) continue;
      const KernelParams p(a, b);
      const double x = std::exp(a), y = std::exp(b);
      for (double t : {-4.0, -1.0, 0.5, 2.0, 5.0}) {
        const double dlng = oracle::richardson(
            [&](double u) { return std::log(g_xy(x, y, u)); }, t, 1e-2);
        REQUIRE_THAT(dlng, WithinAbs(delta(p, t), 1e-8));
        const double dlnF = oracle::richardson(
            [&](double u) { return std::log(F_ab(p, u)); }, t, 1e-2);
        REQUIRE_THAT(dlnF, WithinAbs(-delta(p, t), 1e-8));
      }
    }
}

TEST_CASE("q_factor anchors, parity, and negativity") {
  REQUIRE_THAT(q_factor(1.0), WithinRel(oracle::q_at_1, 1e-13));
  REQUIRE_THAT(q_factor(0.01) / 1e-8, WithinRel(oracle::q_001_t4, 1e-12));
  REQUIRE_THROWS_AS(q_factor(0.0), std::domain_error);
  std::mt19937_64 eng(99);
  std::uniform_real_distribution<double> mag(1e-3, 30.0);
  for (int i = 0; i < 300; ++i) {
    const double t = mag(eng) * (i % 2 == 0 ? 1.0 : -1.0);
    const double q = q_factor(t);
    REQUIRE(q < 0.0);
    REQUIRE_THAT(q, WithinRel(q_factor(-t), 1e-13));
  }
}

TEST_CASE("q_factor leading coefficient is -1/15") {
  // Q(t)/t^4 -> -1/15 as t -> 0
  REQUIRE_THAT(q_factor(1e-3) / 1e-12, WithinRel(-1.0 / 15.0, 1e-5));
  REQUIRE_THAT(q_factor(0.01) / 1e-8, WithinRel(-1.0 / 15.0, 2e-2));
}

TEST_CASE("q_factor series agrees with the direct form at the seam") {
  for (double t : {0.499, 0.501, 0.6, 1.0}) {
    const double direct = std::cosh(t) - std::pow(std::sinh(t) / t, 3);
    REQUIRE_THAT(q_factor(t), WithinAbs(direct, 1e-12));
  }
}
