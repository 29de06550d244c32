// Log-gamma, digamma, polygamma and the classical Binet remainder theta(x).
//
// Two independent regimes: a 9-coefficient Lanczos rational approximation for
// x in (0, 10) and a Stirling/Bernoulli asymptotic series for x >= 10; they
// cross-validate each other at the seam. Everything here is a pure function.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace binet {

// ln sqrt(2*pi), 17 significant digits (round-trippable double).
inline constexpr double ln_sqrt_2pi = 0.91893853320467274;

namespace detail {

inline void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error(std::string(who) + ": argument must be positive and finite");
}

}  // namespace detail

// Even-index Bernoulli numbers B_2, B_4, ..., B_{2K}, K >= 15, computed once
// by the defining recurrence sum_{j=0..m} C(m+1, j) B_j = 0, B_0 = 1.
class BernoulliTable {
 public:
  explicit BernoulliTable(std::size_t K = 15) : b2k_(K) {
    if (K < 15) throw std::domain_error("BernoulliTable: need K >= 15");
    std::vector<double> b(2 * K + 1, 0.0);
    b[0] = 1.0;
    for (std::size_t m = 1; m <= 2 * K; ++m) {
      double acc = 0.0, c = 1.0;  // c walks through C(m+1, j)
      for (std::size_t j = 0; j < m; ++j) {
        acc += c * b[j];
        c = c * double(m + 1 - j) / double(j + 1);
      }
      b[m] = -acc / double(m + 1);
    }
    for (std::size_t k = 1; k <= K; ++k) b2k_[k - 1] = b[2 * k];
    // sanity anchors
    if (std::abs(b2k_[0] - 1.0 / 6.0) > 1e-15 ||
        std::abs(b2k_[1] + 1.0 / 30.0) > 1e-15)
      throw std::logic_error("BernoulliTable: recurrence anchors failed");
    for (std::size_t k = 0; k + 1 < K; ++k)
      if (b2k_[k] * b2k_[k + 1] >= 0.0)
        throw std::logic_error("BernoulliTable: signs must alternate");
  }

  // B_{2k}, 1-based: at(1) = B_2 = 1/6.
  double at(std::size_t k) const {
    if (k < 1 || k > b2k_.size())
      throw std::domain_error("BernoulliTable: index out of range");
    return b2k_[k - 1];
  }
  std::size_t size() const { return b2k_.size(); }
  const std::vector<double>& values() const { return b2k_; }

 private:
  std::vector<double> b2k_;
};

inline const BernoulliTable& bernoulli() {
  static const BernoulliTable table(15);
  return table;
}

namespace detail {

// Lanczos g = 7, 9 coefficients (Godfrey/GSL constant set).
inline constexpr std::array<double, 9> lanczos_7 = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7};

inline constexpr double euler_e = 2.7182818284590452354;

inline double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double ag = lanczos_7[0];
  for (int k = 1; k < 9; ++k) ag += lanczos_7[k] / (z + k);
  return (z + 0.5) * std::log((z + 7.5) / euler_e) + (ln_sqrt_2pi + std::log(ag)) - 7.0;
}

// sum B_{2k} / ((2k)(2k-1) x^{2k-1}), ten terms; equals theta(x) for x >= 10
// up to < 1e-18 relative truncation error.
inline double stirling_theta_series(double x) {
  const BernoulliTable& B = bernoulli();
  const double inv2 = 1.0 / (x * x);
  double pw = 1.0 / x, s = 0.0;
  for (int k = 1; k <= 10; ++k) {
    s += B.at(k) / double(2 * k * (2 * k - 1)) * pw;
    pw *= inv2;
  }
  return s;
}

}  // namespace detail

// ln Gamma(x); relative error <= 1e-13 on [1e-3, 1e6].
inline double log_gamma(double x) {
  detail::require_positive(x, "log_gamma");
  if (x < 10.0) return detail::log_gamma_lanczos(x);
  return (x - 0.5) * std::log(x) - x + ln_sqrt_2pi + detail::stirling_theta_series(x);
}

// psi(x) = d/dx ln Gamma(x); relative error <= 1e-12 on [1e-3, 1e6].
inline double digamma(double x) {
  detail::require_positive(x, "digamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const BernoulliTable& B = bernoulli();
  const double inv2 = 1.0 / (x * x);
  double pw = inv2, s = std::log(x) - 0.5 / x;
  for (int k = 1; k <= 10; ++k) {
    s -= B.at(k) / double(2 * k) * pw;
    pw *= inv2;
  }
  return s + shift;
}

// psi^(n)(x) for 1 <= n <= 8; relative error <= 1e-10.
inline double polygamma(int n, double x) {
  if (n < 1 || n > 8) throw std::domain_error("polygamma: need 1 <= n <= 8");
  detail::require_positive(x, "polygamma");
  double fact_n = 1.0;
  for (int i = 2; i <= n; ++i) fact_n *= i;
  // psi^(n)(x) = psi^(n)(x+1) - (-1)^n n! x^{-(n+1)};  shift x above 10.
  double shift = 0.0;
  while (x < 10.0) {
    shift += fact_n * std::pow(x, -(n + 1));
    x += 1.0;
  }
  // asymptotic series, ten Bernoulli terms:
  // psi^(n)(x) = (-1)^{n-1} [ (n-1)!/x^n + n!/(2 x^{n+1})
  //                           + sum_k B_{2k} (2k+n-1)!/((2k)! x^{2k+n}) ]
  const BernoulliTable& B = bernoulli();
  double s = (fact_n / n) / std::pow(x, n) + fact_n / (2.0 * std::pow(x, n + 1));
  const double inv2 = 1.0 / (x * x);
  double pw = 1.0 / std::pow(x, n + 2);
  for (int k = 1; k <= 10; ++k) {
    double rising = 1.0;  // (2k+1)(2k+2)...(2k+n-1) = (2k+n-1)!/(2k)!
    for (int j = 2 * k + 1; j <= 2 * k + n - 1; ++j) rising *= j;
    s += B.at(k) * rising * pw;
    pw *= inv2;
  }
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n-1}
  return sign * s - (n % 2 == 0 ? 1.0 : -1.0) * shift;
}

// theta(x) = ln Gamma(x) - (x - 1/2) ln x + x - ln sqrt(2 pi); always > 0.
// For x >= 10 the subtraction above cancels catastrophically, so the value is
// produced directly from the asymptotic series there.
inline double theta_classic(double x) {
  detail::require_positive(x, "theta_classic");
  if (x >= 10.0) return detail::stirling_theta_series(x);
  return detail::log_gamma_lanczos(x) - (x - 0.5) * std::log(x) + x - ln_sqrt_2pi;
}

}  // namespace binet
