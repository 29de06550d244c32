// Semi-infinite adaptive quadrature for integrands w(t)*e^{-xt} on (0, inf),
// and a divergence scanner measuring the log blow-up rate of the truncated
// kernel integral when a + b != 0.
//
// The engine is worst-panel-first bisection with an embedded 15-point Kronrod
// / 7-point Gauss pair (QUADPACK dqk15 nodes, weights and error heuristic).
// Panels are seeded dyadically so integrand mass at the e^{-xt} decay scale
// is never hidden between the nodes of one huge root panel. Beyond the cut T
// the tail is not integrated but bounded analytically and charged to the
// error estimate.
#pragma once

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "kernel.hpp"

namespace binet {

struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 40;
  double tail_cut = 0.0;  // cut point T; 0 means "choose 60/x"

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::domain_error("QuadConfig: tolerances must be positive");
    if (max_depth < 10)
      throw std::domain_error("QuadConfig: max_depth must be >= 10");
  }
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  bool converged = false;
  std::int64_t evaluations = 0;
};

struct DivergenceFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;               // max |fit - data| over fitted points
  std::vector<double> epsilons;        // strictly decreasing
};

namespace detail {

// QUADPACK dqk15 node/weight tables.
inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168869693270611432679082, 0.27970539148927666790146777142378,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
inline constexpr std::array<double, 8> gk_xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.58608723546769113029414483825873,  0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk_wgk = {
    0.02293532201052922496373200805897,  0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.16900472663926790282658342659855,  0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

struct PanelEstimate {
  double value;
  double err;
};

template <class F>
PanelEstimate gk15(F&& f, double lo, double hi, std::int64_t& evaluations) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo), dh = std::abs(h);
  std::array<double, 7> f1{}, f2{};  // f at c -/+ h*xgk[i], i = 0..6
  const double fc = f(c);
  double resg = fc * gk_wg[3];
  double resk = fc * gk_wgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * gk_xgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    const double fsum = f1[j] + f2[j];
    if (j % 2 == 1) resg += gk_wg[j / 2] * fsum;  // xgk[1],[3],[5] are Gauss
    resk += gk_wgk[j] * fsum;
    resabs += gk_wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
  }
  evaluations += 15;
  const double reskh = resk * 0.5;
  double resasc = gk_wgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += gk_wgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  resabs *= dh;
  resasc *= dh;
  double abserr = std::abs((resk - resg) * h);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  const double epmach = DBL_EPSILON, uflow = DBL_MIN;
  if (resabs > uflow / (50.0 * epmach))
    abserr = std::max(epmach * 50.0 * resabs, abserr);
  return {resk * h, abserr};
}

struct Panel {
  double lo, hi, value, err;
  int depth;
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.err != b.err) return a.err < b.err;  // top() = largest error
    return a.lo > b.lo;                        // deterministic tie-break
  }
};

// Dyadic seed edges from hi down toward lo; guarantees a panel of width
// about min(1/(4x), hi/16) near the decay scale, and for lo > 0 keeps
// halving toward lo so endpoint singularities start resolved.
inline std::vector<double> seed_edges(double lo, double hi, double x) {
  double floor_edge = std::min(0.25 / x, hi / 16.0);
  if (lo > 0.0) floor_edge = std::max(2.0 * lo, std::min(floor_edge, 4.0 * lo));
  std::vector<double> edges{hi};
  double e = hi;
  while (e * 0.5 > floor_edge && e * 0.5 > lo && edges.size() < 64) {
    e *= 0.5;
    edges.push_back(e);
  }
  edges.push_back(lo);
  std::reverse(edges.begin(), edges.end());
  return edges;
}

// Adaptive core over [lo, hi]; tail handling is the caller's business.
template <class F>
QuadResult adaptive(F&& f, double lo, double hi, double x,
                    const QuadConfig& cfg) {
  QuadResult out;
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
  std::vector<Panel> done;
  double total_val = 0.0, total_err = 0.0;

  const auto edges = seed_edges(lo, hi, x);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto est = gk15(f, edges[i], edges[i + 1], out.evaluations);
    active.push({edges[i], edges[i + 1], est.value, est.err, 0});
    total_val += est.value;
    total_err += est.err;
  }

  const auto good_enough = [&](double v, double e) {
    return e <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v));
  };
  const std::int64_t eval_budget = 4'000'000;
  while (!active.empty() && !good_enough(total_val, total_err) &&
         out.evaluations < eval_budget) {
    const Panel worst = active.top();
    active.pop();
    if (worst.depth >= cfg.max_depth) {
      done.push_back(worst);  // cannot refine further; keep its error
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto left = gk15(f, worst.lo, mid, out.evaluations);
    const auto right = gk15(f, mid, worst.hi, out.evaluations);
    total_val += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    active.push({worst.lo, mid, left.value, left.err, worst.depth + 1});
    active.push({mid, worst.hi, right.value, right.err, worst.depth + 1});
  }

  while (!active.empty()) {
    done.push_back(active.top());
    active.pop();
  }
  std::sort(done.begin(), done.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  double value = 0.0, comp = 0.0, err = 0.0;  // Kahan for the value
  for (const Panel& p : done) {
    const double y = p.value - comp, t = value + y;
    comp = (t - value) - y;
    value = t;
    err += p.err;
  }
  out.value = value;
  out.err_estimate = err;
  out.converged = good_enough(value, err);
  return out;
}

// Tail bound: assumes |f| decays at least like e^{-x(t-T)/2} beyond T (true
// for kernels bounded or polynomially growing under e^{-xt} once T >= 60/x);
// then int_T^inf |f| <= 2 M / x with M = sup |f(t)| e^{x(t-T)/2} on [T, T+1].
template <class F>
double tail_bound(F&& f, double T, double x, std::int64_t& evaluations) {
  double M = 0.0;
  for (int i = 0; i <= 15; ++i) {
    const double t = T + i / 15.0;
    M = std::max(M, std::abs(f(t)) * std::exp(0.5 * x * (t - T)));
  }
  evaluations += 16;
  return 2.0 * M / x;
}

}  // namespace detail

// Integrates f over (0, inf) given that f is bounded on (0, T] and decays at
// least like e^{-xt} beyond T. T is cfg.tail_cut when positive, else 60/x.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double x, const QuadConfig& cfg = {}) {
  cfg.validate();
  if (!(x > 0.0)) throw std::domain_error("integrate_semi_infinite: x <= 0");
  const double T = cfg.tail_cut > 0.0 ? cfg.tail_cut : 60.0 / x;
  QuadResult r = detail::adaptive(f, 0.0, T, x, cfg);
  r.err_estimate += detail::tail_bound(f, T, x, r.evaluations);
  r.converged = r.err_estimate <=
                std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
  return r;
}

// Partial integral I(eps) = int_eps^inf delta_{a,b}(t) e^{-xt}/t dt, measured
// for a decreasing ladder of epsilons; the least-squares model
//   I(eps) = intercept + slope*ln(1/eps) + drift*eps
// is fitted over the smallest four epsilons (the drift regressor is the exact
// next-order term of the small-eps expansion and suppresses finite-eps bias).
// slope estimates (a+b)/2, which is zero exactly when the integral converges.
inline DivergenceFit divergence_scan(const KernelParams& params, double x,
                                     std::vector<double> epsilons) {
  if (!(x > 0.0)) throw std::domain_error("divergence_scan: x <= 0");
  if (epsilons.size() < 4)
    throw std::domain_error("divergence_scan: need at least 4 epsilons");
  std::sort(epsilons.begin(), epsilons.end(), std::greater<double>());
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
    if (epsilons[i] <= epsilons[i + 1])
      throw std::domain_error("divergence_scan: epsilons must be distinct");
  if (!(epsilons.front() <= 0.1) || !(epsilons.back() > 0.0))
    throw std::domain_error("divergence_scan: epsilons must lie in (0, 0.1]");
  if (!(epsilons.front() / epsilons.back() >= 1e3))
    throw std::domain_error("divergence_scan: epsilons must span >= 3 decades");

  QuadConfig cfg;
  cfg.max_depth = 48;
  const double T = 60.0 / x;
  const auto integrand = [&](double t) {
    return delta(params, t) * std::exp(-x * t) / t;
  };

  std::vector<double> I(epsilons.size());
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    QuadResult r = detail::adaptive(integrand, epsilons[i], T, x, cfg);
    r.err_estimate += detail::tail_bound(integrand, T, x, r.evaluations);
    if (!(r.err_estimate <=
          std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value))))
      throw std::runtime_error("divergence_scan: quadrature did not converge at epsilon = " +
                               std::to_string(epsilons[i]));
    I[i] = r.value;
  }

  // Fit the smallest four epsilons. Normal equations in long double with the
  // drift column scaled to [0, 1] for conditioning.
  const std::size_t n = epsilons.size(), fit_n = 4, off = n - fit_n;
  const long double esc = epsilons[off];
  long double A[3][4] = {};  // augmented symmetric system
  for (std::size_t i = off; i < n; ++i) {
    const long double L = std::log(1.0 / epsilons[i]);
    const long double row[3] = {L, 1.0L, (long double)epsilons[i] / esc};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) A[r][c] += row[r] * row[c];
      A[r][3] += row[r] * (long double)I[i];
    }
  }
  for (int col = 0; col < 3; ++col) {  // Gaussian elimination, partial pivot
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs((double)A[r][col]) > std::abs((double)A[piv][col])) piv = r;
    if (std::abs((double)A[piv][col]) < 1e-300)
      throw std::runtime_error("divergence_scan: degenerate fit system");
    if (piv != col)
      for (int c = 0; c < 4; ++c) std::swap(A[piv][c], A[col][c]);
    for (int r = col + 1; r < 3; ++r) {
      const long double m = A[r][col] / A[col][col];
      for (int c = col; c < 4; ++c) A[r][c] -= m * A[col][c];
    }
  }
  long double sol[3];
  for (int r = 2; r >= 0; --r) {
    long double acc = A[r][3];
    for (int c = r + 1; c < 3; ++c) acc -= A[r][c] * sol[c];
    sol[r] = acc / A[r][r];
  }

  DivergenceFit fit;
  fit.slope = (double)sol[0];
  fit.intercept = (double)sol[1];
  const long double drift = sol[2] / esc;
  for (std::size_t i = off; i < n; ++i) {
    const long double L = std::log(1.0 / epsilons[i]);
    const long double pred = sol[0] * L + sol[1] + drift * (long double)epsilons[i];
    fit.residual = std::max(fit.residual, (double)std::abs(pred - (long double)I[i]));
  }
  fit.epsilons = std::move(epsilons);
  return fit;
}

// Default epsilon ladder used by the CLI and the verification suites.
inline std::vector<double> default_epsilons() {
  return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

}  // namespace binet
