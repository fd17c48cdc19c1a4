#pragma once

// Invariant batteries run by `entlab selftest`.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "entlab/entropy.hpp"
#include "entlab/io.hpp"
#include "entlab/model.hpp"
#include "entlab/quadrature.hpp"
#include "entlab/specfun.hpp"

namespace entlab {

enum class SelfTestLevel { quick, full };

struct SelfTestOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline SelfTestOutcome run_guarded(const std::string& name,
                                   const std::function<SelfTestOutcome()>& body) {
  try {
    auto out = body();
    out.name = name;
    return out;
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

inline SelfTestOutcome expn_recurrence() {
  double worst = 0.0;
  for (double s : {0.1, 1.0, 5.0, 20.0}) {
    for (int n = 1; n <= 6; ++n) {
      const double lhs = n * expn(n + 1, s);
      const double rhs = std::exp(-s) - s * expn(n, s);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
  }
  return {"", worst < 1e-10, "max relative residual " + format_double(worst)};
}

inline SelfTestOutcome expn_seam() {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const double series = detail::expn_series(n, kExpnSeam);
    const double cf = detail::expn_cf_scaled(n, kExpnSeam) * std::exp(-kExpnSeam);
    worst = std::max(worst, std::abs(series - cf) / series);
  }
  return {"", worst < 1e-12, "max seam mismatch " + format_double(worst)};
}

inline SelfTestOutcome gauss_legendre_exactness() {
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const auto rule = gauss_legendre(n, 0.0, 1.0);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      worst = std::max(worst, std::abs(sum - 1.0 / (k + 1)) * (k + 1));
    }
  }
  return {"", worst < 1e-13, "max relative monomial error " + format_double(worst)};
}

inline SelfTestOutcome quadrature_battery() {
  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
    bool semi;
  };
  const std::vector<Case> cases = {
      {[](double x) { return x * x; }, 0, 1, 1.0 / 3.0, false},
      {[](double x) { return std::sin(x); }, 0, 1, 1.0 - std::cos(1.0), false},
      {[](double x) { return std::exp(-20.0 / x); }, 0, 1, expn(2, 20.0), false},
      {[](double t) { return std::exp(-t); }, 0, 0, 1.0, true},
      {[](double y) { return y * y * std::exp(-2.0 * y); }, 1, 0, 10.0 / 8.0 * std::exp(-2.0), true},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    const double tol = 1e-12;
    const auto r = c.semi ? integrate_semiinf(c.f, c.a, tol) : integrate_finite(c.f, c.a, c.b, tol);
    worst = std::max(worst, std::abs(r.value - c.exact) / std::max(1.0, std::abs(c.exact)));
  }
  return {"", worst < 1e-11, "max error " + format_double(worst)};
}

inline SelfTestOutcome traces(double lambda) {
  const ModelParams p(lambda);
  const auto norm = normalization(p, Mode::exact);
  const double ta = trace(Region::A, p, norm, Mode::exact).value;
  const double tb = trace(Region::B, p, norm, Mode::exact).value;
  const double worst = std::max(std::abs(ta - 1.0), std::abs(tb - 1.0));
  return {"", worst <= kTraceTolerance, "max |Tr - 1| " + format_double(worst)};
}

inline SelfTestOutcome hermiticity(double lambda) {
  const ModelParams p(lambda);
  const auto norm = normalization(p, Mode::exact);
  const bool ok = detail::kernel_symmetric_on_grid(Region::A, p, norm, Mode::exact) &&
                  detail::kernel_symmetric_on_grid(Region::B, p, norm, Mode::exact);
  return {"", ok, ok ? "exact argument-swap symmetry" : "asymmetric kernel value"};
}

inline SelfTestOutcome bound_identities() {
  const double lambda = 30.0;
  const double via_intermediate = intermediate_bound(lambda, asymptotic_log_c2(lambda));
  const double sub = subleading_bound(lambda);
  const double gap = std::abs(via_intermediate - sub) / sub;
  const bool ok = gap < 1e-12 && leading_bound(lambda) == 300.0 && std::abs(sub - 280.30) < 0.01;
  return {"", ok, "intermediate vs subleading gap " + format_double(gap)};
}

inline SelfTestOutcome schmidt(double lambda, int nodes) {
  const ModelParams p(lambda);
  const auto norm = normalization(p, Mode::exact);
  const auto a = spectral_entropy(Region::A, p, norm, nodes);
  const auto b = spectral_entropy(Region::B, p, norm, nodes);
  const double rel = std::abs(a.entropy - b.entropy) / std::max(a.entropy, b.entropy);
  const bool ok = rel <= kSchmidtTolerance && std::abs(a.raw_sum - 1.0) <= kSpectralTraceTolerance &&
                  std::abs(b.raw_sum - 1.0) <= kSpectralTraceTolerance &&
                  a.min_raw_eigenvalue >= -kClipThreshold && b.min_raw_eigenvalue >= -kClipThreshold;
  return {"", ok, "S_A=" + format_double(a.entropy) + " S_B=" + format_double(b.entropy) +
                      " rel=" + format_double(rel)};
}

inline SelfTestOutcome diagonal_bounds(double lambda) {
  const ModelParams p(lambda);
  const auto norm = normalization(p, Mode::exact);
  const double sa = diagonal_entropy(Region::A, p, norm, Mode::exact).value;
  const double sb = diagonal_entropy(Region::B, p, norm, Mode::exact).value;
  const double bi = intermediate_bound(lambda, norm.log_c2);
  return {"", sa <= bi && sb <= bi,
          "S_diag_A=" + format_double(sa) + " S_diag_B=" + format_double(sb) + " bound=" + format_double(bi)};
}

}  // namespace detail

inline std::vector<SelfTestOutcome> run_selftest(SelfTestLevel level) {
  using detail::run_guarded;
  std::vector<SelfTestOutcome> out;
  out.push_back(run_guarded("expn recurrence", detail::expn_recurrence));
  out.push_back(run_guarded("expn series/fraction seam", detail::expn_seam));
  out.push_back(run_guarded("gauss-legendre exactness n<=20", detail::gauss_legendre_exactness));
  out.push_back(run_guarded("adaptive quadrature closed forms", detail::quadrature_battery));
  out.push_back(run_guarded("bound chain identities", detail::bound_identities));
  out.push_back(run_guarded("trace = 1, lambda=10", [] { return detail::traces(10.0); }));
  out.push_back(run_guarded("kernel hermiticity, lambda=10", [] { return detail::hermiticity(10.0); }));
  out.push_back(run_guarded("diagonal entropy <= bound, lambda=10", [] { return detail::diagonal_bounds(10.0); }));
  if (level == SelfTestLevel::quick) {
    out.push_back(run_guarded("schmidt symmetry, lambda=10, n=100", [] { return detail::schmidt(10.0, 100); }));
    return out;
  }
  for (double lambda : {5.0, 10.0, 20.0, 50.0}) {
    const std::string tag = "lambda=" + format_double(lambda);
    out.push_back(run_guarded("trace = 1, " + tag, [lambda] { return detail::traces(lambda); }));
    out.push_back(run_guarded("diagonal entropy <= bound, " + tag,
                              [lambda] { return detail::diagonal_bounds(lambda); }));
    out.push_back(run_guarded("schmidt symmetry, " + tag + ", n=200",
                              [lambda] { return detail::schmidt(lambda, 200); }));
  }
  return out;
}

}  // namespace entlab
