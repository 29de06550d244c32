// The kernel delta_{a,b}(t) = (b-a)/(e^{(b-a)t} - 1) - 1/t + b, its first two
// derivatives, the primitives g_{x,y} and F_{a,b} it is the log-derivative of,
// and the Lazarevic sign factor Q(t) = cosh t - (sinh t / t)^3.
//
// Every function switches to a Bernoulli series when |span*t| is small (the
// removable singularity at t = 0 cancels catastrophically in the closed
// forms) and to expm1-based forms otherwise, arranged so nothing overflows
// even when span*t exceeds 710.
#pragma once

#include <cmath>
#include <stdexcept>

#include "special.hpp"

namespace binet {

struct KernelParams {
  double a;
  double b;

  KernelParams(double a_, double b_) : a(a_), b(b_) {
    if (!(std::isfinite(a) && std::isfinite(b)))
      throw std::domain_error("KernelParams: a, b must be finite");
    if (a == b) throw std::domain_error("KernelParams: need a != b");
  }

  double span() const { return b - a; }        // signed
  double mid() const { return 0.5 * (a + b); } // limit of delta at t -> 0
  double hi() const { return a > b ? a : b; }  // limit of delta at t -> +inf
};

// Limits at the removable singularity t = 0 (delta and friends refuse t = 0).
inline double delta_limit_zero(const KernelParams& p) { return p.mid(); }
inline double delta_prime_limit_zero(const KernelParams& p) {
  return p.span() * p.span() / 12.0;
}
inline constexpr double delta_second_limit_zero = 0.0;

// g_{x,y}(t) = (y^t - x^t)/t for t != 0, ln y - ln x at t = 0; 0 < x < y.
inline double g_xy(double x, double y, double t) {
  if (!(x > 0.0) || !(y > x))
    throw std::domain_error("g_xy: need 0 < x < y");
  const double lr = std::log(y / x);
  if (t == 0.0) return lr;
  return std::pow(x, t) * std::expm1(t * lr) / t;
}

// F_{a,b}(t) = t/(e^{bt} - e^{at}) for t != 0, 1/(b-a) at t = 0.
// Factored by the larger exponent so neither factor overflows prematurely.
inline double F_ab(const KernelParams& p, double t) {
  const double s = p.span();
  if (t == 0.0) return 1.0 / s;
  const double u = s * t;
  if (u > 0.0)  // bt > at: e^{bt} - e^{at} = e^{bt}(1 - e^{-u})
    return t * std::exp(-p.b * t) / (-std::expm1(-u));
  return t * std::exp(-p.a * t) / std::expm1(u);
}

// Series form (a+b)/2 + sum_{k=1..terms} B_{2k} (b-a)^{2k} t^{2k-1} / (2k)!.
// Valid (and used by delta) for |span*t| < 1/4; callable up to 1/2.
inline double delta_series(const KernelParams& p, double t, int terms) {
  const double s = p.span(), u = s * t;
  if (!(std::abs(u) < 0.5))
    throw std::range_error("delta_series: need |span*t| < 1/2");
  if (terms < 1 || std::size_t(terms) > bernoulli().size())
    throw std::domain_error("delta_series: bad term count");
  // s^{2k} t^{2k-1} = s * u^{2k-1}: no division by t, so t = 0 is fine.
  double sum = p.mid(), upow = u, fact = 1.0;
  for (int k = 1; k <= terms; ++k) {
    fact *= double(2 * k - 1) * double(2 * k);  // (2k)!
    sum += bernoulli().at(k) * s * upow / fact;
    upow *= u * u;
  }
  return sum;
}

// delta_{a,b}(t); t = 0 is a domain error (see delta_limit_zero).
inline double delta(const KernelParams& p, double t) {
  if (t == 0.0) throw std::domain_error("delta: t = 0 (limit is mid)");
  const double s = p.span(), u = s * t;
  if (std::abs(u) < 0.25) return delta_series(p, t, 8);
  double ratio;  // s / (e^u - 1), overflow-free on both sides
  if (u > 0.0)
    ratio = s * std::exp(-u) / (-std::expm1(-u));
  else
    ratio = s / std::expm1(u);
  return ratio - 1.0 / t + p.b;
}

// delta'_{a,b}(t) = 1/t^2 - s^2 e^{st}/(e^{st} - 1)^2  (even in s*t).
inline double delta_prime(const KernelParams& p, double t) {
  if (t == 0.0)
    throw std::domain_error("delta_prime: t = 0 (limit is span^2/12)");
  const double s = p.span(), u = s * t;
  if (std::abs(u) < 0.25) {
    // sum_{k>=1} B_{2k} (2k-1) s^2 u^{2k-2} / (2k)!;  leading term s^2/12
    double sum = 0.0, upow = 1.0, fact = 1.0;
    for (int k = 1; k <= 8; ++k) {
      fact *= double(2 * k - 1) * double(2 * k);
      sum += bernoulli().at(k) * double(2 * k - 1) * s * s * upow / fact;
      upow *= u * u;
    }
    return sum;
  }
  const double w = std::abs(u);
  const double em = std::expm1(-w);  // in (-1, 0)
  return 1.0 / (t * t) - s * s * std::exp(-w) / (em * em);
}

// delta''_{a,b}(t) = s^3 e^{st}(e^{st} + 1)/(e^{st} - 1)^3 - 2/t^3  (odd).
inline double delta_second(const KernelParams& p, double t) {
  if (t == 0.0) throw std::domain_error("delta_second: t = 0 (limit is 0)");
  const double s = p.span(), u = s * t;
  if (std::abs(u) < 0.25) {
    // sum_{k>=2} B_{2k} (2k-1)(2k-2) s^3 u^{2k-3} / (2k)!; leading -s^3 u/120
    double sum = 0.0, upow = u, fact = 24.0;  // 4!
    for (int k = 2; k <= 9; ++k) {
      sum += bernoulli().at(k) * double((2 * k - 1) * (2 * k - 2)) * s * s * s *
             upow / fact;
      upow *= u * u;
      fact *= double(2 * k + 1) * double(2 * k + 2);
    }
    return sum;
  }
  double factor;  // e^u (e^u + 1) / (e^u - 1)^3
  if (u > 0.0) {
    const double em = -std::expm1(-u);  // 1 - e^{-u}, in (0, 1)
    factor = (std::exp(-u) + std::exp(-2.0 * u)) / (em * em * em);
  } else {
    const double em = std::expm1(u);  // in (-1, 0)
    const double eu = std::exp(u);
    factor = eu * (eu + 1.0) / (em * em * em);
  }
  return s * s * s * factor - 2.0 / (t * t * t);
}

namespace detail {

// Taylor coefficients of Q(t) = cosh t - (sinh t/t)^3 = sum_{k>=2} q_k t^{2k},
// q_k = 1/(2k)! - (3^{2k+3} - 3)/(4 (2k+3)!), via sinh^3 = (sinh 3t - 3 sinh t)/4.
inline const std::array<double, 16>& q_coeffs() {
  static const std::array<double, 16> q = [] {
    std::array<double, 16> c{};
    double fact2k = 2.0;      // (2k)!  at k = 1
    double fact2k3 = 120.0;   // (2k+3)! at k = 1
    double pow3 = 243.0;      // 3^{2k+3} at k = 1
    for (int k = 2; k <= 15; ++k) {
      fact2k *= double(2 * k - 1) * double(2 * k);
      fact2k3 *= double(2 * k + 2) * double(2 * k + 3);
      pow3 *= 9.0;
      c[k] = 1.0 / fact2k - (pow3 - 3.0) / (4.0 * fact2k3);
    }
    return c;
  }();
  return q;
}

}  // namespace detail

// Q(t) = cosh t - (sinh t / t)^3; strictly negative for t != 0.
inline double q_factor(double t) {
  if (t == 0.0) throw std::domain_error("q_factor: t = 0 (limit is 0)");
  const double at = std::abs(t);
  if (at < 0.5) {
    const auto& q = detail::q_coeffs();
    const double t2 = t * t;
    double sum = 0.0, pw = t2 * t2;
    for (int k = 2; k <= 15; ++k) {
      sum += q[k] * pw;
      pw *= t2;
    }
    return sum;
  }
  const double sh = std::sinh(at) / at;
  return std::cosh(at) - sh * sh * sh;
}

}  // namespace binet
