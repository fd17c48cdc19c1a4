// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entlab/entropy.hpp"
#include "entlab/io.hpp"
#include "entlab/physics.hpp"
#include "entlab/quadrature.hpp"
#include "entlab/scan.hpp"
#include "entlab/specfun.hpp"

using namespace entlab;

namespace {

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "[violated: " << what << "] ";
    }
  }
};

double rel(double a, double b) { return relative_gap(a, b); }

// 1. Exact/asymptotic normalization ratio approaches 1 monotonically, within 0.5/lambda.
void normalization_asymptotics(Verdict& v) {
  double prev = INFINITY;
  for (double lambda : {10.0, 20.0, 50.0, 100.0}) {
    const ModelParams p(lambda);
    const double ratio = std::exp(normalization(p, Mode::exact).log_c2 - normalization(p, Mode::asymptotic).log_c2);
    const double dev = std::abs(ratio - 1.0);
    v.detail << "lambda=" << lambda << " ratio=" << format_double(ratio) << " (ratio-1)*lambda="
             << format_double((ratio - 1.0) * lambda) << "; ";
    v.require(dev < prev, "monotone approach at lambda=" + format_double(lambda));
    v.require(dev < 0.5 / lambda, "|ratio-1| < 0.5/lambda at lambda=" + format_double(lambda));
    prev = dev;
  }
}

// 2. Unit traces, symmetric kernels, non-negative Nystrom spectra.
void density_matrix_properties(Verdict& v) {
  double worst_trace = 0.0, min_eig = INFINITY;
  for (double lambda : {5.0, 10.0, 20.0}) {
    const ModelParams p(lambda);
    const auto n = normalization(p, Mode::exact);
    for (Region r : {Region::A, Region::B}) {
      worst_trace = std::max(worst_trace, std::abs(trace(r, p, n, Mode::exact).value - 1.0));
      v.require(detail::kernel_symmetric_on_grid(r, p, n, Mode::exact), "kernel symmetry");
      const auto s = spectral_entropy(r, p, n, 200);
      min_eig = std::min(min_eig, s.min_raw_eigenvalue);
    }
  }
  v.require(worst_trace <= 1e-8, "trace within 1e-8");
  v.require(min_eig >= -1e-10, "eigenvalues >= -1e-10");
  v.detail << "max|Tr-1|=" << format_double(worst_trace) << " min eigenvalue=" << format_double(min_eig);
}

// 3. Spectral entropies of A and B agree.
void schmidt_symmetry(Verdict& v) {
  for (double lambda : {5.0, 10.0, 20.0}) {
    const ModelParams p(lambda);
    const auto n = normalization(p, Mode::exact);
    const auto a = spectral_entropy(Region::A, p, n, 200);
    const auto b = spectral_entropy(Region::B, p, n, 200);
    const double gap = rel(a.entropy, b.entropy);
    v.require(b.domain.tail_mass < 1e-12, "B tail mass < 1e-12");
    v.require(gap <= 1e-5, "relative gap <= 1e-5 at lambda=" + format_double(lambda));
    v.detail << "lambda=" << lambda << " S=" << format_double(a.entropy) << " rel=" << format_double(gap) << "; ";
  }
}

// 4. Diagonal entropies of A and B converge; pinned values reproduced by both schemes.
void diagonal_symmetry(Verdict& v) {
  struct Pin {
    double lambda, s_a, s_b;
  };
  const Pin pins[] = {{10.0, 0.1676247639755945, 0.6891462126743701},
                      {20.0, -0.3592963576595544, -0.08164477553576455},
                      {50.0, -1.160001577519709, -1.043921250404819},
                      {100.0, -1.811220488509892, -1.752233922989487}};
  double prev = INFINITY;
  for (const auto& pin : pins) {
    const ModelParams p(pin.lambda);
    const auto n = normalization(p, Mode::exact);
    const double a = diagonal_entropy(Region::A, p, n, Mode::exact).value;
    const double b = diagonal_entropy(Region::B, p, n, Mode::exact).value;
    const double ga = diagonal_entropy_gauss(Region::A, p, n, Mode::exact).value;
    const double gb = diagonal_entropy_gauss(Region::B, p, n, Mode::exact).value;
    const double gap = std::abs(a - b);
    const std::string at = " at lambda=" + format_double(pin.lambda);
    v.require(std::abs(a - ga) <= 1e-8 && std::abs(b - gb) <= 1e-8, "dual-scheme agreement" + at);
    v.require(std::abs(a - pin.s_a) <= 1e-10 && std::abs(b - pin.s_b) <= 1e-10, "pinned values" + at);
    v.require(gap < prev, "monotone gap" + at);
    v.detail << "lambda=" << pin.lambda << " |S_A-S_B|=" << format_double(gap) << "; ";
    prev = gap;
  }
}

// 5. Bound chain.
void bound_chain(Verdict& v) {
  for (double lambda : {5.0, 10.0, 20.0, 50.0, 100.0}) {
    const ModelParams p(lambda);
    const auto n = normalization(p, Mode::exact);
    const double s_a = diagonal_entropy(Region::A, p, n, Mode::exact).value;
    v.require(s_a <= intermediate_bound(lambda, n.log_c2), "S_A <= intermediate at lambda=" + format_double(lambda));
    const double via = intermediate_bound(lambda, asymptotic_log_c2(lambda));
    v.require(rel(via, subleading_bound(lambda)) <= 1e-12, "intermediate reduces to subleading");
    v.require(leading_bound(lambda) == lambda * lambda / 3.0, "leading = lambda^2/3");
  }
  const double sub30 = subleading_bound(30.0);
  v.require(rel(sub30, 280.3001952712078505) <= 1e-14, "subleading(30) pinned value");
  v.require(leading_bound(30.0) == 300.0, "leading(30) = 300");
  v.detail << "subleading(30)=" << format_double(sub30) << " leading(30)=" << format_double(leading_bound(30.0));
}

// 6. Area-law slopes.
void area_law(Verdict& v) {
  std::vector<double> l, lead, sub;
  for (double lambda : lambda_grid(100.0, 1000.0, 50, Spacing::log)) {
    l.push_back(lambda);
    lead.push_back(leading_bound(lambda));
    sub.push_back(subleading_bound(lambda));
  }
  const double lead_slope = loglog_fit(l, lead).slope;
  const double sub_slope = loglog_fit(l, sub).slope;
  v.require(std::abs(lead_slope - 2.0) <= 1e-12, "leading slope 2 within 1e-12");
  v.require(sub_slope >= 1.9 && sub_slope <= 2.0, "subleading slope in [1.9, 2.0]");
  v.detail << "leading slope=" << format_double(lead_slope) << " subleading slope=" << format_double(sub_slope);
}

// 7. Holographic comparison.
void holographic(Verdict& v) {
  const auto s = build_scenario(kElectronMass, 13.6 * kElectronVolt, 1.0);
  const auto h = holographic_report(s);
  v.require(std::round(s.eta / 1e-53) == 989.0, "eta = 9.89e-51 to 3 figures");
  v.require(h.stronger_than_holographic, "eta < 1 flag");
  std::mt19937_64 rng(2018);
  std::uniform_real_distribution<double> lm(std::log(1e-31), std::log(1e-20));
  std::uniform_real_distribution<double> le(std::log(1e-22), std::log(1e-10));
  std::uniform_real_distribution<double> lr(std::log(1e-12), std::log(1e2));
  std::uniform_real_distribution<double> x0(0.05, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto r = build_scenario(std::exp(lm(rng)), std::exp(le(rng)), std::exp(lr(rng)), x0(rng));
    worst = std::max(worst, rel(r.eta, r.eta_physical));
  }
  v.require(worst <= 1e-12, "eta identity within 1e-12");
  v.detail << "eta=" << format_double(s.eta) << " max identity gap=" << format_double(worst);
}

// 8. Numerical infrastructure.
void infrastructure(Verdict& v) {
  double rec = 0.0;
  for (double s : {0.1, 1.0, 5.0, 20.0})
    for (int n = 1; n <= 6; ++n)
      rec = std::max(rec, rel(n * expn(n + 1, s), std::exp(-s) - s * expn(n, s)));
  v.require(rec < 1e-10, "E_n recurrence");

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double gl = 0.0;
  for (int n = 1; n <= 20; ++n) {
    std::vector<double> c(2 * n);
    for (double& x : c) x = coeff(rng);
    double exact = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      exact += c[k] / static_cast<double>(k + 1);
      scale += std::abs(c[k]);
    }
    const auto rule = gauss_legendre(n, 0.0, 1.0);
    double approx = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      double p = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) p = p * rule.nodes[i] + c[k];
      approx += rule.weights[i] * p;
    }
    gl = std::max(gl, std::abs(approx - exact) / scale);
  }
  v.require(gl < 1e-13, "Gauss-Legendre exactness");

  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
    bool semi;
  };
  const double pi = std::numbers::pi;
  const std::vector<Case> cases = {
      {[](double x) { return x * x; }, 0, 1, 1.0 / 3.0, false},
      {[](double x) { return std::sin(x); }, 0, 1, 1.0 - std::cos(1.0), false},
      {[](double x) { return std::exp(x); }, -1, 2, std::exp(2.0) - std::exp(-1.0), false},
      {[](double x) { return 1.0 / (1.0 + x * x); }, 0, 1, pi / 4.0, false},
      {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0, false},
      {[](double x) { return std::log(x); }, 0, 1, -1.0, false},
      {[](double x) { return std::exp(-20.0 / x); }, 0, 1, 9.4048564308581489887e-11, false},
      {[](double t) { return std::exp(-t); }, 0, 0, 1.0, true},
      {[](double y) { return y * y * std::exp(-2.0 * y); }, 1, 0, 1.25 * std::exp(-2.0), true},
      {[](double t) { return std::exp(-5.0 * t) / std::pow(t, 4); }, 1, 0, 7.8298084507742524328e-4, true},
  };
  int ok = 0;
  for (const auto& c : cases) {
    const double tol = 1e-12;
    const auto r = c.semi ? integrate_semiinf(c.f, c.a, tol) : integrate_finite(c.f, c.a, c.b, tol);
    if (std::abs(r.value - c.exact) <= std::max(tol, tol * std::abs(c.exact))) ++ok;
  }
  v.require(ok == static_cast<int>(cases.size()), "closed-form integrals");
  v.detail << "recurrence=" << format_double(rec) << " gauss-legendre=" << format_double(gl) << " integrals "
           << ok << "/" << cases.size();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Verdict&);
  };
  const Criterion criteria[] = {
      {"1 normalization asymptotics", normalization_asymptotics},
      {"2 density-matrix properties", density_matrix_properties},
      {"3 schmidt symmetry (spectral)", schmidt_symmetry},
      {"4 diagonal entropy convergence", diagonal_symmetry},
      {"5 bound chain", bound_chain},
      {"6 area-law slopes", area_law},
      {"7 holographic comparison", holographic},
      {"8 numerical infrastructure", infrastructure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail << "exception: " << e.what();
    }
    std::printf("%s  %s  %s\n", v.passed ? "PASS" : "FAIL", c.name, v.detail.str().c_str());
    std::fflush(stdout);
    if (!v.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
