#pragma once

// One-dimensional quadrature: globally adaptive Gauss-Kronrod (7/15) bisection
// on finite intervals, a rational map for [a, inf), and Gauss-Legendre rules
// for Nystrom discretizations.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entlab {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadratureOptions {
  long max_evaluations = 1'000'000;
};

/// Raised when the adaptive integrator exhausts its budget or meets a
/// non-finite integrand value. Carries the best estimate reached so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

struct NodeSet {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices coincide with the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  if (!std::isfinite(fc)) throw std::domain_error("non-finite integrand value");
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    if (!std::isfinite(f1) || !std::isfinite(f2)) {
      throw std::domain_error("non-finite integrand value");
    }
    kronrod += kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Adaptive integral of f over [a, b]. Succeeds when the summed error
/// estimate is <= max(tol, tol * |value|); otherwise throws QuadratureError.
/// f is never evaluated at the endpoints.
template <class F>
QuadratureResult integrate_finite(F&& f, double a, double b, double tol,
                                  QuadratureOptions options = {}) {
  if (!(a < b)) throw std::domain_error("integrate_finite: requires a < b");
  if (!(tol > 0.0)) throw std::domain_error("integrate_finite: requires tol > 0");

  std::priority_queue<detail::Segment> heap;
  QuadratureResult result;
  auto evaluate = [&](double lo, double hi) {
    try {
      auto seg = detail::gauss_kronrod_15(f, lo, hi);
      result.evaluations += 15;
      return seg;
    } catch (const std::domain_error& e) {
      throw QuadratureError(std::string("integrate_finite: ") + e.what(), result);
    }
  };

  auto first = evaluate(a, b);
  double total = first.value;
  double error = first.error;
  heap.push(first);

  while (error > std::max(tol, tol * std::abs(total))) {
    if (result.evaluations + 30 > options.max_evaluations) {
      result.value = total;
      result.abs_error_estimate = error;
      throw QuadratureError("integrate_finite: evaluation budget exhausted", result);
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      result.value = total;
      result.abs_error_estimate = error;
      throw QuadratureError("integrate_finite: interval collapsed below resolution", result);
    }
    const auto left = evaluate(worst.a, mid);
    const auto right = evaluate(mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments so the running updates leave no drift.
  total = 0.0;
  error = 0.0;
  std::vector<detail::Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& s : segments) {
    total += s.value;
    error += s.error;
  }
  result.value = total;
  result.abs_error_estimate = error;
  return result;
}

/// The integrand over u in [0, 1) equivalent to f over [a, inf) under
/// y = a + u / (1 - u), dy = du / (1 - u)^2.
template <class F>
auto semiinf_transform(F f, double a) {
  return [f = std::move(f), a](double u) {
    const double one_minus = 1.0 - u;
    const double y = a + u / one_minus;
    if (std::isinf(y)) return 0.0;
    const double value = f(y);
    return value == 0.0 ? 0.0 : value / (one_minus * one_minus);
  };
}

/// Adaptive integral of f over [a, inf) via semiinf_transform.
template <class F>
QuadratureResult integrate_semiinf(F&& f, double a, double tol, QuadratureOptions options = {}) {
  if (!std::isfinite(a)) throw std::domain_error("integrate_semiinf: lower limit must be finite");
  try {
    return integrate_finite(semiinf_transform(std::ref(f), a), 0.0, 1.0, tol, options);
  } catch (const QuadratureError& e) {
    throw QuadratureError(std::string(e.what()) + " (semi-infinite)", e.best());
  }
}

/// n-point Gauss-Legendre rule mapped to (a, b), nodes ascending.
inline NodeSet gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
  if (!(a < b)) throw std::domain_error("gauss_legendre: requires a < b");

  NodeSet rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = center - half * z;
    rule.nodes[n - 1 - i] = center + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = center;
  return rule;
}

}  // namespace entlab
