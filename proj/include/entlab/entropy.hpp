#pragma once

// Entropies of the reduced density matrices.
//
// Two different quantities are computed and kept apart:
//  * the diagonal entropy  -\int p(u) log rho(u, u) du, an integral over the
//    kernel diagonal (basis dependent, may be negative), and
//  * the spectral entropy  -sum_j p_j log p_j over the eigenvalues of a
//    Nystrom discretization of the kernel (the von Neumann entropy).
// Only the spectral form is guaranteed to agree between the two regions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entlab/jacobi.hpp"
#include "entlab/model.hpp"
#include "entlab/quadrature.hpp"

namespace entlab {

enum class EntropyMethod { diagonal, spectral };
enum class BoundVariant { intermediate, subleading, leading };

inline const char* to_string(EntropyMethod m) {
  return m == EntropyMethod::diagonal ? "diagonal" : "spectral";
}
inline const char* to_string(BoundVariant v) {
  switch (v) {
    case BoundVariant::intermediate: return "intermediate";
    case BoundVariant::subleading: return "subleading";
    case BoundVariant::leading: return "leading";
  }
  return "?";
}

// Coefficients of the 1/lambda correction in the bound chain.
inline constexpr double kBoundCoeffA = 1.0 / 8.0;
inline const double kBoundCoeffB = -(1.0 + 4.0 * std::log(2.0)) / 32.0;

inline constexpr double kClipThreshold = 1e-10;
inline constexpr double kDefaultTailTolerance = 1e-12;
// Below this effective lambda the large-lambda bounds are reported as out of regime.
inline constexpr double kRegimeLambdaMin = 5.0;
// Above this effective lambda kernel-level computations are skipped.
inline constexpr double kKernelLambdaCap = 1e4;

struct EntropyResult {
  double value = 0.0;
  Region region = Region::A;
  EntropyMethod method = EntropyMethod::diagonal;
  Mode mode = Mode::exact;
  double quadrature_error = 0.0;
  long nodes_used = 0;
};

struct BoundResult {
  BoundVariant variant = BoundVariant::leading;
  double value = 0.0;
  double lambda = 0.0;
};

/// Radial window used for the Nystrom discretization. Region B is cut at
/// `upper`; region A is cut at `lower` (the image of B's cut under y = 1/x).
/// `tail_mass` is the verified probability outside the window.
struct NystromDomain {
  Region region = Region::A;
  double lower = 0.0;
  double upper = 1.0;
  double tail_mass = 0.0;
  bool tail_within_tolerance = true;
};

struct NystromSystem {
  SymmetricMatrix matrix;
  NodeSet rule;
  NystromDomain domain;
};

struct SpectralResult {
  std::vector<double> eigenvalues;  // descending, clipped to >= 0
  double entropy = 0.0;
  double discarded_negative_mass = 0.0;
  double raw_sum = 0.0;  // eigenvalue sum before clipping
  double min_raw_eigenvalue = 0.0;
  int sweeps = 0;
  NystromDomain domain;
};

class SpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Diagonal entropy

/// -\int p(u) log rho(u, u) du over the full radial domain of the region,
/// evaluated from log rho so that nothing overflows.
inline EntropyResult diagonal_entropy(Region region, const ModelParams& params,
                                      const Normalization& norm, Mode mode, double tol = 1e-12) {
  auto integrand = [&](double u) {
    const double log_rho = rho(region, u, u, params, norm, mode).log_value;
    if (std::isinf(log_rho)) return 0.0;
    return -4.0 * std::numbers::pi * u * u * std::exp(log_rho) * log_rho;
  };
  const auto r = integrate_region(region, integrand, params.effective_lambda(), tol);
  return {r.value, region, EntropyMethod::diagonal, mode, r.abs_error_estimate, r.evaluations};
}

/// Same integral on a fixed n-point Gauss-Legendre rule: over (0, 1) for A and
/// over the Nystrom window for B. Used as an independent cross-check of the
/// adaptive result.
inline EntropyResult diagonal_entropy_gauss(Region region, const ModelParams& params,
                                            const Normalization& norm, Mode mode,
                                            int n_points = 200);

// ---------------------------------------------------------------------------
// Bounds

inline double leading_bound(double lambda) { return lambda * lambda / 3.0; }

inline double subleading_bound(double lambda) {
  return lambda * lambda / 3.0 *
         (1.0 - 12.0 / lambda * (kBoundCoeffA * std::log(lambda / std::numbers::pi) + kBoundCoeffB));
}

/// (4 pi)^2 C^2 e^{-2 lambda} {1/3 - (1/lambda)[a log(4 pi C^2 / lambda) + b]}.
inline double intermediate_bound(double lambda, double log_c2) {
  const double log_prefactor = 2.0 * kLog4Pi + log_c2 - 2.0 * lambda;
  const double log_inner = kLog4Pi + log_c2 - std::log(lambda);
  return std::exp(log_prefactor) *
         (1.0 / 3.0 - (kBoundCoeffA * log_inner + kBoundCoeffB) / lambda);
}

/// True when the subleading correction lowers the bound, i.e.
/// a log(lambda / pi) + b > 0.
inline bool subleading_correction_positive(double lambda) {
  return kBoundCoeffA * std::log(lambda / std::numbers::pi) + kBoundCoeffB > 0.0;
}

inline BoundResult bound(BoundVariant variant, const ModelParams& params,
                         const Normalization& norm) {
  const double lambda = params.effective_lambda();
  switch (variant) {
    case BoundVariant::intermediate:
      return {variant, intermediate_bound(lambda, norm.log_c2), lambda};
    case BoundVariant::subleading: return {variant, subleading_bound(lambda), lambda};
    case BoundVariant::leading: return {variant, leading_bound(lambda), lambda};
  }
  throw std::invalid_argument("bound: unknown variant");
}

// ---------------------------------------------------------------------------
// Nystrom discretization

namespace detail {

inline QuadratureResult outside_mass(Region region, double cut, const ModelParams& params,
                                     const Normalization& norm, Mode mode, double tol) {
  auto p = [&](double u) { return radial_prob(region, u, params, norm, mode); };
  return integrate_region(region, p, params.effective_lambda(), tol, cut);
}

}  // namespace detail

/// Chooses the discretization window. The default extent past the boundary is
/// 40/lambda * max(1, log lambda) in y (and its image in x = 1/y); it is
/// doubled until the mass left outside is below tail_tol.
inline NystromDomain nystrom_domain(Region region, const ModelParams& params,
                                    const Normalization& norm, Mode mode,
                                    double tail_tol = kDefaultTailTolerance) {
  const double lambda = params.effective_lambda();
  double extent = 40.0 / lambda * std::max(1.0, std::log(lambda));
  NystromDomain domain{region, 0.0, 1.0, 0.0, false};
  for (int attempt = 0; attempt < 40; ++attempt) {
    const double cut = region == Region::A ? 1.0 / (1.0 + extent) : 1.0 + extent;
    if (region == Region::A && !(cut > 0.0)) {
      domain.lower = 0.0;
      domain.tail_mass = 0.0;
      domain.tail_within_tolerance = true;
      return domain;
    }
    const double mass = detail::outside_mass(region, cut, params, norm, mode, tail_tol * 1e-3).value;
    if (region == Region::A) {
      domain.lower = cut;
      domain.upper = 1.0;
    } else {
      domain.lower = 1.0;
      domain.upper = cut;
    }
    domain.tail_mass = mass;
    domain.tail_within_tolerance = mass < tail_tol;
    if (domain.tail_within_tolerance) return domain;
    extent *= 2.0;
  }
  return domain;
}

/// M_ij = sqrt(w_i mu_i) rho(u_i, u_j) sqrt(w_j mu_j) on an n-point
/// Gauss-Legendre rule over the window, mu = 4 pi u^2. Symmetric by
/// construction; its eigenvalues approximate the Schmidt probabilities.
inline NystromSystem nystrom_matrix(Region region, const ModelParams& params,
                                    const Normalization& norm, int n_nodes,
                                    Mode mode = Mode::exact,
                                    double tail_tol = kDefaultTailTolerance) {
  if (n_nodes < 2) throw std::domain_error("nystrom_matrix: need at least 2 nodes");
  NystromSystem sys;
  sys.domain = nystrom_domain(region, params, norm, mode, tail_tol);
  sys.rule = gauss_legendre(n_nodes, sys.domain.lower, sys.domain.upper);
  const auto n = static_cast<std::size_t>(n_nodes);
  std::vector<double> half_log_weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = sys.rule.nodes[i];
    half_log_weight[i] = 0.5 * (std::log(sys.rule.weights[i]) + kLog4Pi + 2.0 * std::log(u));
  }
  sys.matrix = SymmetricMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double log_k = rho(region, sys.rule.nodes[i], sys.rule.nodes[j], params, norm, mode).log_value;
      const double value = std::exp(half_log_weight[i] + half_log_weight[j] + log_k);
      sys.matrix(i, j) = value;
      sys.matrix(j, i) = value;
    }
  }
  return sys;
}

inline EntropyResult diagonal_entropy_gauss(Region region, const ModelParams& params,
                                            const Normalization& norm, Mode mode, int n_points) {
  double lo = 0.0;
  double hi = 1.0;
  double tail = 0.0;
  if (region == Region::B) {
    const auto window = nystrom_domain(region, params, norm, mode);
    lo = window.lower;
    hi = window.upper;
    tail = window.tail_mass;
  }
  const auto rule = gauss_legendre(n_points, lo, hi);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes[i];
    const double log_rho = rho(region, u, u, params, norm, mode).log_value;
    if (std::isinf(log_rho)) continue;
    sum -= rule.weights[i] * 4.0 * std::numbers::pi * u * u * std::exp(log_rho) * log_rho;
  }
  return {sum, region, EntropyMethod::diagonal, mode, tail, n_points};
}

/// -sum p log p with 0 log 0 = 0.
inline double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

/// Spectral (von Neumann) entropy. Eigenvalues in [-1e-10, 0) are clipped to
/// zero; anything more negative raises SpectrumError.
inline SpectralResult spectral_entropy(Region region, const ModelParams& params,
                                       const Normalization& norm, int n_nodes,
                                       Mode mode = Mode::exact,
                                       double tail_tol = kDefaultTailTolerance) {
  auto sys = nystrom_matrix(region, params, norm, n_nodes, mode, tail_tol);
  auto eig = jacobi_eigenvalues(std::move(sys.matrix));
  SpectralResult out;
  out.sweeps = eig.sweeps;
  out.domain = sys.domain;
  out.raw_sum = std::accumulate(eig.eigenvalues.begin(), eig.eigenvalues.end(), 0.0);
  out.min_raw_eigenvalue = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  for (double& p : eig.eigenvalues) {
    if (p < 0.0) {
      if (p < -kClipThreshold) {
        throw SpectrumError("spectral_entropy: eigenvalue " + std::to_string(p) +
                            " below clipping threshold in region " + to_string(region));
      }
      out.discarded_negative_mass -= p;
      p = 0.0;
    }
  }
  out.eigenvalues = std::move(eig.eigenvalues);
  out.entropy = shannon_entropy(out.eigenvalues);
  return out;
}

// ---------------------------------------------------------------------------
// Report

struct ReportSettings {
  Mode norm_mode = Mode::exact;
  Mode kernel_mode = Mode::exact;
  int n_nodes = 200;
  double tol = 1e-12;
  bool spectral = true;
};

/// A named pass/fail check; nullopt means not applicable.
struct Check {
  std::string name;
  std::optional<bool> passed;
};

struct EntropyReport {
  double lambda = 0.0;
  double x0 = 1.0;
  double effective_lambda = 0.0;
  ReportSettings settings;
  std::optional<double> log_c2;
  std::optional<double> trace_A;
  std::optional<double> trace_B;
  std::optional<EntropyResult> diagonal_A;
  std::optional<EntropyResult> diagonal_B;
  std::optional<SpectralResult> spectral_A;
  std::optional<SpectralResult> spectral_B;
  BoundResult bound_leading;
  BoundResult bound_subleading;
  std::optional<BoundResult> bound_intermediate;
  bool bounds_in_regime = false;
  bool kernel_in_range = true;
  std::vector<Check> checks;
  std::vector<std::string> errors;

  bool ok() const {
    if (!errors.empty()) return false;
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed.value_or(true); });
  }
};

namespace detail {

template <class F>
void record(EntropyReport& report, const char* what, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report.errors.push_back(std::string(what) + ": " + e.what());
  }
}

inline bool kernel_symmetric_on_grid(Region region, const ModelParams& params,
                                     const Normalization& norm, Mode mode) {
  const double a = region == Region::A ? 0.05 : 1.0;
  const double b = region == Region::A ? 1.0 : 3.0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double u = a + (b - a) * i / 10.0;
      const double v = a + (b - a) * j / 10.0;
      if (rho(region, u, v, params, norm, mode).log_value !=
          rho(region, v, u, params, norm, mode).log_value) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kSpectralTraceTolerance = 1e-6;
inline constexpr double kSchmidtTolerance = 1e-5;

/// Runs every computation for one lambda and collects checks. Failures of
/// individual stages are recorded in `errors` and the remaining stages still run.
inline EntropyReport entropy_report(const ModelParams& params, const ReportSettings& settings = {}) {
  EntropyReport rep;
  rep.lambda = params.lambda();
  rep.x0 = params.x0();
  rep.effective_lambda = params.effective_lambda();
  rep.settings = settings;
  const double lambda = rep.effective_lambda;
  rep.bounds_in_regime = lambda >= kRegimeLambdaMin;
  rep.kernel_in_range = lambda <= kKernelLambdaCap;
  rep.bound_leading = {BoundVariant::leading, leading_bound(lambda), lambda};
  rep.bound_subleading = {BoundVariant::subleading, subleading_bound(lambda), lambda};

  std::optional<Normalization> norm;
  detail::record(rep, "normalization", [&] {
    norm = normalization(params, settings.norm_mode, settings.tol);
    rep.log_c2 = norm->log_c2;
    rep.bound_intermediate = bound(BoundVariant::intermediate, params, *norm);
  });

  const bool exact_state = settings.norm_mode == Mode::exact && settings.kernel_mode == Mode::exact;
  std::optional<bool> symmetric;
  if (norm && rep.kernel_in_range) {
    const Normalization& nm = *norm;
    const Mode km = settings.kernel_mode;
    detail::record(rep, "trace_A", [&] { rep.trace_A = trace(Region::A, params, nm, km, settings.tol).value; });
    detail::record(rep, "trace_B", [&] { rep.trace_B = trace(Region::B, params, nm, km, settings.tol).value; });
    detail::record(rep, "kernel_symmetry", [&] {
      symmetric = detail::kernel_symmetric_on_grid(Region::A, params, nm, km) &&
                  detail::kernel_symmetric_on_grid(Region::B, params, nm, km);
    });
    detail::record(rep, "diagonal_A", [&] { rep.diagonal_A = diagonal_entropy(Region::A, params, nm, km, settings.tol); });
    detail::record(rep, "diagonal_B", [&] { rep.diagonal_B = diagonal_entropy(Region::B, params, nm, km, settings.tol); });
    if (settings.spectral) {
      detail::record(rep, "spectral_A", [&] { rep.spectral_A = spectral_entropy(Region::A, params, nm, settings.n_nodes, km); });
      detail::record(rep, "spectral_B", [&] { rep.spectral_B = spectral_entropy(Region::B, params, nm, settings.n_nodes, km); });
    }
  }

  auto add = [&](const char* name, std::optional<bool> v) { rep.checks.push_back({name, v}); };
  auto when = [](bool applicable, auto&& pred) -> std::optional<bool> {
    if (!applicable) return std::nullopt;
    return pred();
  };

  add("trace_A", when(exact_state && rep.trace_A.has_value(),
                      [&] { return std::abs(*rep.trace_A - 1.0) <= kTraceTolerance; }));
  add("trace_B", when(exact_state && rep.trace_B.has_value(),
                      [&] { return std::abs(*rep.trace_B - 1.0) <= kTraceTolerance; }));
  add("kernel_symmetry", symmetric);
  add("spectral_trace_A", when(exact_state && rep.spectral_A.has_value(), [&] {
        return std::abs(rep.spectral_A->raw_sum - 1.0) <= kSpectralTraceTolerance;
      }));
  add("spectral_trace_B", when(exact_state && rep.spectral_B.has_value(), [&] {
        return std::abs(rep.spectral_B->raw_sum - 1.0) <= kSpectralTraceTolerance;
      }));
  add("spectral_tail_A", when(rep.spectral_A.has_value(),
                              [&] { return rep.spectral_A->domain.tail_within_tolerance; }));
  add("spectral_tail_B", when(rep.spectral_B.has_value(),
                              [&] { return rep.spectral_B->domain.tail_within_tolerance; }));
  add("schmidt_symmetry",
      when(settings.kernel_mode == Mode::exact && rep.spectral_A && rep.spectral_B, [&] {
        const double a = rep.spectral_A->entropy;
        const double b = rep.spectral_B->entropy;
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 || std::abs(a - b) <= kSchmidtTolerance * scale;
      }));
  add("diagonal_A_le_intermediate",
      when(rep.bounds_in_regime && rep.diagonal_A && rep.bound_intermediate,
           [&] { return rep.diagonal_A->value <= rep.bound_intermediate->value; }));
  add("diagonal_B_le_intermediate",
      when(rep.bounds_in_regime && rep.diagonal_B && rep.bound_intermediate,
           [&] { return rep.diagonal_B->value <= rep.bound_intermediate->value; }));
  add("subleading_le_leading",
      when(rep.bounds_in_regime && subleading_correction_positive(lambda),
           [&] { return rep.bound_subleading.value <= rep.bound_leading.value; }));
  add("spectral_A_le_leading", when(rep.bounds_in_regime && rep.spectral_A.has_value(), [&] {
        return rep.spectral_A->entropy <= rep.bound_leading.value;
      }));
  return rep;
}

}  // namespace entlab
