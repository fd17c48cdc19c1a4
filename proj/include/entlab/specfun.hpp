#pragma once

// Generalized exponential integrals E_n(s) = \int_1^\infty e^{-st} t^{-n} dt.
//
// Two regimes: a power series for s <= kExpnSeam and a continued fraction
// (modified Lentz) for s > kExpnSeam. The continued fraction naturally yields
// e^s E_n(s), so the scaled form never underflows for large s.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entlab {

inline constexpr double kExpnSeam = 1.0;

namespace detail {

inline constexpr int kExpnMaxIterations = 10000;

inline void check_expn_order(int n) {
  if (n < 1) {
    throw std::domain_error("expn: order n must be >= 1, got " + std::to_string(n));
  }
}

// E_n(s) by power series, 0 < s <= seam.
inline double expn_series(int n, double s) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const int nm1 = n - 1;
  double sum = (nm1 != 0) ? 1.0 / nm1 : -std::log(s) - std::numbers::egamma;
  double fact = 1.0;
  for (int i = 1; i <= kExpnMaxIterations; ++i) {
    fact *= -s / i;
    double term;
    if (i != nm1) {
      term = -fact / (i - nm1);
    } else {
      double psi = -std::numbers::egamma;
      for (int k = 1; k <= nm1; ++k) psi += 1.0 / k;
      term = fact * (-std::log(s) + psi);
    }
    sum += term;
    if (std::abs(term) < std::abs(sum) * eps) return sum;
  }
  throw std::runtime_error("expn: series failed to converge");
}

// e^s E_n(s) by continued fraction, s > 0 (accurate for s >= seam).
inline double expn_cf_scaled(int n, double s) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = 1e-300;
  const int nm1 = n - 1;
  double b = s + n;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kExpnMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (nm1 + i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw std::runtime_error("expn: continued fraction failed to converge");
}

}  // namespace detail

/// E_n(s). Accurate to ~1e-13 relative while e^{-s} is representable; for
/// large s the result underflows to 0 and expn_scaled should be used.
inline double expn(int n, double s) {
  detail::check_expn_order(n);
  if (!(s >= 0.0)) throw std::domain_error("expn: argument must be >= 0");
  if (s == 0.0) {
    if (n == 1) throw std::domain_error("expn: E_1 diverges at s = 0");
    return 1.0 / (n - 1);
  }
  if (s <= kExpnSeam) return detail::expn_series(n, s);
  return detail::expn_cf_scaled(n, s) * std::exp(-s);
}

/// e^s E_n(s), finite for any s > 0; tends to 1/s as s grows.
inline double expn_scaled(int n, double s) {
  detail::check_expn_order(n);
  if (!(s > 0.0)) throw std::domain_error("expn_scaled: argument must be > 0");
  if (std::isinf(s)) return 0.0;
  if (s <= kExpnSeam) return detail::expn_series(n, s) * std::exp(s);
  return detail::expn_cf_scaled(n, s);
}

/// log(e^s E_n(s)).
inline double log_expn_scaled(int n, double s) { return std::log(expn_scaled(n, s)); }

/// log E_n(s) without underflow: log_expn_scaled(n, s) - s.
inline double log_expn(int n, double s) { return log_expn_scaled(n, s) - s; }

}  // namespace entlab
