// The extended remainder theta_alpha(x) = alpha * theta(x / alpha), its
// derivatives by closed form (digamma/polygamma chain rule) and by Laplace
// quadrature of the kernel, and the family f_{p,q;alpha}(x) =
// theta_alpha(px) - q theta_alpha(x) with its sign kernel h_{p,q;alpha}.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "kernel.hpp"
#include "quad.hpp"
#include "special.hpp"

namespace binet {

enum class Method { closed, quad, both };

inline Method method_from_string(const std::string& s) {
  if (s == "closed") return Method::closed;
  if (s == "quad") return Method::quad;
  if (s == "both") return Method::both;
  throw std::domain_error("method must be closed|quad|both");
}

struct ThetaEval {
  double alpha = 1.0;
  double x = 1.0;
  int k = 0;
  std::optional<double> closed;
  std::optional<QuadResult> quadrature;
  double disagreement = 0.0;  // |closed - quadrature.value| when both present
};

struct FpqParams {
  double p;
  double q;
  double alpha;

  FpqParams(double p_, double q_, double alpha_) : p(p_), q(q_), alpha(alpha_) {
    if (!(p > 0.0) || !std::isfinite(p) || !std::isfinite(q))
      throw std::domain_error("FpqParams: need p > 0 and finite q");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw std::domain_error("FpqParams: need alpha > 0");
  }
};

namespace detail {

inline void require_alpha_x(double alpha, double x, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::domain_error(std::string(who) + ": need alpha > 0");
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error(std::string(who) + ": need x > 0");
}

inline KernelParams centered(double alpha) {
  return KernelParams(-0.5 * alpha, 0.5 * alpha);
}

inline QuadConfig with_theta_tail(QuadConfig cfg, double alpha, double x,
                                  double stretch = 1.0) {
  if (cfg.tail_cut <= 0.0)
    cfg.tail_cut = std::max(60.0 / x, 60.0 * stretch / alpha);
  return cfg;
}

// theta^{(k)}(y) for k >= 1 from digamma/polygamma:
// theta'(y)   = psi(y) - ln y + 1/(2y)
// theta^{(k)} = psi^{(k-1)}(y) + (-1)^{k-1} [ (k-2)! y^{1-k} + (k-1)!/(2 y^k) ]
inline double theta_classic_deriv(int k, double y) {
  if (k == 1) return digamma(y) - std::log(y) + 0.5 / y;
  double fkm2 = 1.0, fkm1 = 1.0;  // (k-2)!, (k-1)!
  for (int i = 2; i <= k - 2; ++i) fkm2 *= i;
  for (int i = 2; i <= k - 1; ++i) fkm1 *= i;
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k-1}
  return polygamma(k - 1, y) +
         sign * (fkm2 * std::pow(y, 1 - k) + fkm1 / (2.0 * std::pow(y, k)));
}

}  // namespace detail

// Closed form, via the scaling identity theta_alpha(x) = alpha*theta(x/alpha)
// (the literal expanded form loses precision to cancellation for x/alpha >> 1).
inline double theta_alpha_closed(double alpha, double x) {
  detail::require_alpha_x(alpha, x, "theta_alpha_closed");
  return alpha * theta_classic(x / alpha);
}

// Quadrature of int_0^inf delta_{-a/2,a/2}(t) e^{-xt}/t dt.
inline QuadResult theta_alpha_quad(double alpha, double x,
                                   QuadConfig cfg = {}) {
  detail::require_alpha_x(alpha, x, "theta_alpha_quad");
  const KernelParams kp = detail::centered(alpha);
  cfg = detail::with_theta_tail(cfg, alpha, x);
  return integrate_semi_infinite(
      [&](double t) { return delta(kp, t) * std::exp(-x * t) / t; }, x, cfg);
}

// k-th derivative (k = 0..6).  Quadrature route:
// (-1)^k theta_alpha^{(k)}(x) = int_0^inf delta_{-a/2,a/2}(t) t^{k-1} e^{-xt} dt.
// Closed route: theta_alpha^{(k)}(x) = alpha^{1-k} theta^{(k)}(x/alpha).
inline ThetaEval theta_alpha_deriv(double alpha, double x, int k,
                                   Method method = Method::both,
                                   QuadConfig cfg = {}) {
  detail::require_alpha_x(alpha, x, "theta_alpha_deriv");
  if (k < 0 || k > 6)
    throw std::domain_error("theta_alpha_deriv: supported orders are k = 0..6");
  ThetaEval ev;
  ev.alpha = alpha;
  ev.x = x;
  ev.k = k;
  if (method != Method::quad) {
    ev.closed = (k == 0) ? theta_alpha_closed(alpha, x)
                         : std::pow(alpha, 1 - k) *
                               detail::theta_classic_deriv(k, x / alpha);
  }
  if (method != Method::closed) {
    const KernelParams kp = detail::centered(alpha);
    cfg = detail::with_theta_tail(cfg, alpha, x);
    QuadResult r = integrate_semi_infinite(
        [&](double t) {
          return delta(kp, t) * std::pow(t, k - 1) * std::exp(-x * t);
        },
        x, cfg);
    r.value *= (k % 2 == 0) ? 1.0 : -1.0;  // restore (-1)^k
    ev.quadrature = r;
  }
  if (ev.closed && ev.quadrature)
    ev.disagreement = std::abs(*ev.closed - ev.quadrature->value);
  return ev;
}

// h_{p,q;alpha}(t) = delta_{-a/2,a/2}(t/p) - q delta_{-a/2,a/2}(t), t > 0.
// Its sign on (0, inf) decides complete monotonicity of f_{p,q;alpha}.
inline double h_pq_kernel(const FpqParams& params, double t) {
  if (!(t > 0.0)) throw std::domain_error("h_pq_kernel: need t > 0");
  const KernelParams kp = detail::centered(params.alpha);
  return delta(kp, t / params.p) - params.q * delta(kp, t);
}

// f_{p,q;alpha}(x) = theta_alpha(px) - q theta_alpha(x).
// closed: two closed-form evaluations;  quad: one integral of h(t) e^{-xt}/t.
inline double f_pq(const FpqParams& params, double x,
                   Method method = Method::closed, QuadConfig cfg = {}) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("f_pq: need x > 0");
  if (method == Method::closed)
    return theta_alpha_closed(params.alpha, params.p * x) -
           params.q * theta_alpha_closed(params.alpha, x);
  if (method != Method::quad)
    throw std::domain_error("f_pq: method must be closed or quad");
  cfg = detail::with_theta_tail(cfg, params.alpha, x,
                                std::max(1.0, params.p));
  return integrate_semi_infinite(
             [&](double t) {
               return h_pq_kernel(params, t) * std::exp(-x * t) / t;
             },
             x, cfg)
      .value;
}

// Strictness helper shared by the inequality checks: "lhs > rhs" with a
// margin that distinguishes a strict inequality from roundoff equality.
inline bool strictly_greater(double lhs, double rhs) {
  return lhs - rhs > 1e-12 * (1.0 + std::abs(lhs));
}

}  // namespace binet
