#pragma once

// The two-region wave function psi(x, y) = C exp(-lambda y / x) on
// x in (0, 1] (interior, region A) and y in [1, inf) (exterior, region B),
// its normalization, and the reduced density-matrix kernels.
//
// Everything is carried as natural logarithms: C^2 grows like e^{2 lambda}
// while the kernels decay like e^{-2 lambda}, and neither survives in double
// precision past lambda ~ 350.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "entlab/quadrature.hpp"
#include "entlab/specfun.hpp"

namespace entlab {

enum class Mode { exact, asymptotic };
enum class Region { A, B };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "asymptotic"; }
inline const char* to_string(Region r) { return r == Region::A ? "A" : "B"; }

inline constexpr double kLog4Pi = 2.5310242469692907;  // log(4 pi)
inline constexpr double kLog4PiSquared = 3.675754132818691;  // log(4 pi^2)

/// The decay parameter lambda and the observer position x0. An observer at
/// x0 < 1 sees lambda rescaled by x0; every computation uses that product.
class ModelParams {
 public:
  explicit ModelParams(double lambda, double x0 = 1.0) : lambda_(lambda), x0_(x0) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw std::domain_error("ModelParams: lambda must be finite and > 0");
    }
    if (!(x0 > 0.0 && x0 <= 1.0)) {
      throw std::domain_error("ModelParams: x0 must lie in (0, 1]");
    }
  }

  double lambda() const noexcept { return lambda_; }
  double x0() const noexcept { return x0_; }
  double effective_lambda() const noexcept { return lambda_ * x0_; }

 private:
  double lambda_;
  double x0_;
};

struct Normalization {
  double log_c2 = 0.0;
  Mode mode = Mode::exact;
};

struct KernelEval {
  double log_value = 0.0;
  Region region = Region::A;
  Mode mode = Mode::exact;
  double value() const { return std::exp(log_value); }
};

namespace detail {

inline void check_interior(double x, const char* who) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(who) + ": interior coordinate must lie in (0, 1]");
  }
}

inline void check_exterior(double y, const char* who) {
  if (!(y >= 1.0) || !std::isfinite(y)) {
    throw std::domain_error(std::string(who) + ": exterior coordinate must be finite and >= 1");
  }
}

// log[(b^2 + 2b + 2) e^{-b} / b^3], i.e. log of \int_1^\infty y^2 e^{-b y} dy.
inline double log_moment2_tail(double b) {
  if (std::isinf(b)) return -std::numeric_limits<double>::infinity();
  return -b - std::log(b) + std::log1p(2.0 / b + 2.0 / (b * b));
}

}  // namespace detail

/// log psi(x, y) = log_c2 / 2 - lambda y / x.
inline double log_psi(double x, double y, const ModelParams& params, const Normalization& norm) {
  detail::check_interior(x, "log_psi");
  detail::check_exterior(y, "log_psi");
  return 0.5 * norm.log_c2 - params.effective_lambda() * y / x;
}

/// log I(lambda), I = \int_0^1 x^2 dx \int_1^\infty y^2 e^{-2 lambda y / x} dy,
/// from I = E_5(a)/a + 2 E_6(a)/a^2 + 2 E_7(a)/a^3 with a = 2 lambda.
inline double closed_form_norm_integral(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("closed_form_norm_integral: lambda must be > 0");
  const double a = 2.0 * lambda;
  const double scaled = expn_scaled(5, a) / a + 2.0 * expn_scaled(6, a) / (a * a) +
                        2.0 * expn_scaled(7, a) / (a * a * a);
  return std::log(scaled) - a;
}

struct NormIntegral {
  double log_value = 0.0;
  QuadratureResult quadrature;
};

/// log I(lambda) by adaptive quadrature of the analytically reduced inner
/// y-integral. With a = 2 lambda and t = a (1/x - 1) the peak at x = 1 becomes
/// an O(1) e^{-t} profile on [0, inf), so the result holds for any lambda and
/// tol acts as a relative tolerance.
inline NormIntegral quadrature_norm_integral(double lambda, double tol) {
  if (!(lambda > 0.0)) throw std::domain_error("quadrature_norm_integral: lambda must be > 0");
  const double a = 2.0 * lambda;
  auto integrand = [a](double t) {
    const double b = a + t;  // = a / x
    const double x = a / b;
    // x^2 * a^2 e^{a} * (b^2 + 2b + 2) e^{-b} / b^3 * dx/dt
    return x * x * x * a * (1.0 + 2.0 / b + 2.0 / (b * b)) * std::exp(-t) * x * x / a;
  };
  auto r = integrate_semiinf(integrand, 0.0, tol);
  return {std::log(r.value) - 2.0 * std::log(a) - a, r};
}

/// log C^2 for the asymptotic closed form C = 2 lambda e^lambda / (4 pi).
inline double asymptotic_log_c2(double lambda) {
  return 2.0 * std::log(lambda) + 2.0 * lambda - kLog4PiSquared;
}

/// Solves 16 pi^2 C^2 I(lambda) = 1 (exact, by quadrature at tolerance tol)
/// or returns the large-lambda closed form (asymptotic).
inline Normalization normalization(const ModelParams& params, Mode mode, double tol = 1e-13) {
  const double lambda = params.effective_lambda();
  if (mode == Mode::asymptotic) return {asymptotic_log_c2(lambda), Mode::asymptotic};
  if (!(tol > 0.0)) throw std::domain_error("normalization: tol must be > 0");
  return {-2.0 * kLog4Pi - quadrature_norm_integral(lambda, tol).log_value, Mode::exact};
}

/// rho_A(x, x') = \int_B d^3y psi(x, y) psi(x', y).
inline KernelEval rho_A(double x, double xp, const ModelParams& params, const Normalization& norm,
                        Mode mode) {
  detail::check_interior(x, "rho_A");
  detail::check_interior(xp, "rho_A");
  const double lambda = params.effective_lambda();
  const double sum = x + xp;
  const double prod = x * xp;
  const double b = lambda * sum / prod;
  double log_value;
  if (mode == Mode::exact) {
    log_value = kLog4Pi + norm.log_c2 + detail::log_moment2_tail(b);
  } else {
    log_value = kLog4Pi + norm.log_c2 - std::log(lambda) + std::log(prod / sum) - b;
  }
  return {log_value, Region::A, mode};
}

/// rho_B(y, y') = \int_A d^3x psi(x, y) psi(x, y'); the exact x-integral is
/// 4 pi C^2 E_4(lambda (y + y')).
inline KernelEval rho_B(double y, double yp, const ModelParams& params, const Normalization& norm,
                        Mode mode) {
  detail::check_exterior(y, "rho_B");
  detail::check_exterior(yp, "rho_B");
  const double lambda = params.effective_lambda();
  const double sum = y + yp;
  const double s = lambda * sum;
  double log_value;
  if (mode == Mode::exact) {
    log_value = kLog4Pi + norm.log_c2 + log_expn(4, s);
  } else {
    log_value = kLog4Pi + norm.log_c2 - std::log(lambda) - s - std::log(sum);
  }
  return {log_value, Region::B, mode};
}

inline KernelEval rho(Region region, double u, double v, const ModelParams& params,
                      const Normalization& norm, Mode mode) {
  return region == Region::A ? rho_A(u, v, params, norm, mode) : rho_B(u, v, params, norm, mode);
}

/// log p(u) with p(u) = 4 pi u^2 rho(u, u), the radial probability density.
inline double log_radial_prob(Region region, double u, const ModelParams& params,
                              const Normalization& norm, Mode mode) {
  return kLog4Pi + 2.0 * std::log(u) + rho(region, u, u, params, norm, mode).log_value;
}

inline double radial_prob(Region region, double u, const ModelParams& params,
                          const Normalization& norm, Mode mode) {
  return std::exp(log_radial_prob(region, u, params, norm, mode));
}

/// \int f(u) du over the part of the region beyond `cut` (u < cut for A,
/// u > cut for B). The integral runs in the boundary-layer variable
/// t = s (y - 1), y = u for B and y = 1/u for A, s = max(2 lambda, 1), which
/// resolves the O(1/lambda) layer at u = 1 for any lambda. Kernel exponents
/// of size ~2 lambda carry absolute rounding error ~lambda eps, so tol is
/// floored at 16 lambda eps.
template <class F>
QuadratureResult integrate_region(Region region, F&& f, double lambda, double tol, double cut = 1.0) {
  const double s = std::max(2.0 * lambda, 1.0);
  tol = std::max(tol, 16.0 * lambda * std::numeric_limits<double>::epsilon());
  if (region == Region::A) {
    auto g = [&](double t) {
      const double u = 1.0 / (1.0 + t / s);
      return f(u) * u * u / s;
    };
    return integrate_semiinf(g, s * (1.0 / cut - 1.0), tol);
  }
  auto g = [&](double t) { return f(1.0 + t / s) / s; };
  return integrate_semiinf(g, s * (cut - 1.0), tol);
}

/// Tr rho = \int p(u) du over the region.
inline QuadratureResult trace(Region region, const ModelParams& params, const Normalization& norm,
                              Mode mode, double tol = 1e-13) {
  auto p = [&](double u) { return radial_prob(region, u, params, norm, mode); };
  return integrate_region(region, p, params.effective_lambda(), tol);
}

}  // namespace entlab
