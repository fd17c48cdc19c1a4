#pragma once

// Mapping from a physical bound state (mass m, binding energy |E|, boundary
// radius R) to the dimensionless decay parameter, and the comparison of the
// resulting area-law bound against the holographic bound A / (4 l_P^2).
// SI units throughout.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "entlab/entropy.hpp"

namespace entlab {

inline constexpr double kElectronMass = 9.1093837015e-31;  // kg, CODATA 2018
inline constexpr double kElectronVolt = 1.602176634e-19;   // J, exact

struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double G = 6.67430e-11;         // m^3 kg^-1 s^-2
  double c = 299792458.0;         // m / s

  double planck_length() const { return std::sqrt(hbar * G / (c * c * c)); }
  double planck_mass() const { return std::sqrt(hbar * c / G); }
};

inline PhysicalConstants codata2018() { return {}; }

class ConstantsParseError : public std::runtime_error {
 public:
  ConstantsParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

/// Reads `key = value` lines (keys: hbar, G, c) over `base`. Blank lines and
/// lines starting with '#' are ignored.
inline PhysicalConstants parse_constants(std::istream& in, PhysicalConstants base = codata2018()) {
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConstantsParseError("expected key = value", line_no);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string text = detail::trim(line.substr(eq + 1));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConstantsParseError("malformed number '" + text + "'", line_no);
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ConstantsParseError("constant '" + key + "' must be finite and positive", line_no);
    }
    if (key == "hbar") {
      base.hbar = value;
    } else if (key == "G") {
      base.G = value;
    } else if (key == "c") {
      base.c = value;
    } else {
      throw ConstantsParseError("unknown key '" + key + "'", line_no);
    }
  }
  return base;
}

inline PhysicalConstants load_constants_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file '" + path + "'");
  return parse_constants(in);
}

class UnitParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct UnitFactor {
  const char* suffix;
  double factor;
};

template <std::size_t N>
double parse_with_units(const std::string& text, const UnitFactor (&units)[N], const char* what) {
  const std::string s = trim(text);
  const char* begin = s.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw UnitParseError(std::string(what) + ": no number in '" + s + "'");
  const std::string unit = trim(std::string(end));
  if (unit.empty()) throw UnitParseError(std::string(what) + ": missing unit suffix in '" + s + "'");
  for (const auto& u : units) {
    if (unit == u.suffix) return value * u.factor;
  }
  throw UnitParseError(std::string(what) + ": unknown unit '" + unit + "'");
}

}  // namespace detail

/// "13.6eV", "2.18e-18 J", ... -> joules.
inline double parse_energy(const std::string& text) {
  static constexpr detail::UnitFactor units[] = {
      {"J", 1.0}, {"eV", kElectronVolt}, {"keV", 1e3 * kElectronVolt},
      {"MeV", 1e6 * kElectronVolt}, {"GeV", 1e9 * kElectronVolt}};
  return detail::parse_with_units(text, units, "energy");
}

/// "9.1093837015e-31kg", "1me" (electron masses), ... -> kilograms.
inline double parse_mass(const std::string& text) {
  static constexpr detail::UnitFactor units[] = {{"kg", 1.0}, {"g", 1e-3}, {"me", kElectronMass}};
  return detail::parse_with_units(text, units, "mass");
}

/// "1m", "5cm", ... -> metres.
inline double parse_length(const std::string& text) {
  static constexpr detail::UnitFactor units[] = {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"km", 1e3}};
  return detail::parse_with_units(text, units, "length");
}

struct PhysicalScenario {
  std::optional<double> mass;    // kg
  std::optional<double> energy;  // |E|, J
  double mass_energy = 0.0;      // m |E|, J kg
  double radius = 0.0;           // m
  double x0 = 1.0;
  double kappa = 0.0;            // 1 / m
  double gamma = 0.0;
  double lambda = 0.0;           // includes x0
  double eta = 0.0;              // gamma^2 / (3 pi)
  double eta_physical = 0.0;     // (2 / 3 pi) m |E| / (m_P^2 c^2)
  double area = 0.0;             // m^2
  PhysicalConstants constants;
};

namespace detail {

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(name) + " must be finite and positive");
  }
}

inline void require_x0(double x0) {
  if (!(x0 > 0.0 && x0 <= 1.0)) throw std::domain_error("x0 must lie in (0, 1]");
}

inline void fill_derived(PhysicalScenario& s) {
  const auto& k = s.constants;
  const double lp = k.planck_length();
  const double mp = k.planck_mass();
  s.gamma = s.kappa * lp;
  s.lambda = s.kappa * s.radius * s.x0;
  s.eta = s.gamma * s.gamma / (3.0 * std::numbers::pi);
  s.eta_physical = 2.0 / (3.0 * std::numbers::pi) * s.mass_energy / (mp * mp * k.c * k.c);
  s.area = 4.0 * std::numbers::pi * s.radius * s.radius;
}

}  // namespace detail

/// kappa = sqrt(2 m |E|) / hbar, gamma = kappa l_P, lambda = kappa R x0.
inline PhysicalScenario build_scenario(double mass, double energy_abs, double radius,
                                       double x0 = 1.0,
                                       const PhysicalConstants& constants = codata2018()) {
  detail::require_positive(mass, "mass");
  detail::require_positive(energy_abs, "|E|");
  detail::require_positive(radius, "R");
  detail::require_x0(x0);
  PhysicalScenario s;
  s.mass = mass;
  s.energy = energy_abs;
  s.mass_energy = mass * energy_abs;
  s.radius = radius;
  s.x0 = x0;
  s.constants = constants;
  s.kappa = std::sqrt(2.0 * s.mass_energy) / constants.hbar;
  detail::fill_derived(s);
  return s;
}

/// Geometric form: gamma and R / l_P given directly; m |E| is implied.
inline PhysicalScenario scenario_from_gamma(double gamma, double r_over_lp, double x0 = 1.0,
                                            const PhysicalConstants& constants = codata2018()) {
  detail::require_positive(gamma, "gamma");
  detail::require_positive(r_over_lp, "R / l_P");
  detail::require_x0(x0);
  PhysicalScenario s;
  s.constants = constants;
  const double lp = constants.planck_length();
  s.radius = r_over_lp * lp;
  s.x0 = x0;
  s.kappa = gamma / lp;
  const double p = constants.hbar * s.kappa;
  s.mass_energy = 0.5 * p * p;
  detail::fill_derived(s);
  return s;
}

struct HolographicReport {
  double area_law_bound = 0.0;        // eta_eff A / (4 l_P^2)
  double holographic_bound = 0.0;  // A / (4 l_P^2)
  double ratio = 0.0;              // eta_eff
  double eta = 0.0;
  double eta_effective = 0.0;      // (x0 gamma)^2 / (3 pi)
  bool stronger_than_holographic = false;
  double lambda_squared_over_3 = 0.0;
  double identity_residual = 0.0;  // relative gap between area_law_bound and lambda^2 / 3
  bool identity_holds = false;
  bool eta_identity_holds = false;  // gamma route vs m |E| route
  bool kernel_computable = false;
};

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kEtaIdentityTolerance = 1e-12;

inline double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// The observer position rescales lambda; the coefficient compared against
/// the holographic bound is rescaled by x0^2 to match.
inline HolographicReport holographic_report(const PhysicalScenario& s) {
  const double lp = s.constants.planck_length();
  HolographicReport r;
  r.holographic_bound = s.area / (4.0 * lp * lp);
  r.eta = s.eta;
  r.eta_effective = s.eta * s.x0 * s.x0;
  r.area_law_bound = r.eta_effective * r.holographic_bound;
  r.ratio = r.eta_effective;
  r.stronger_than_holographic = r.eta_effective < 1.0;
  r.lambda_squared_over_3 = leading_bound(s.lambda);
  r.identity_residual = relative_gap(r.area_law_bound, r.lambda_squared_over_3);
  r.identity_holds = r.identity_residual <= kIdentityTolerance;
  r.eta_identity_holds = relative_gap(s.eta, s.eta_physical) <= kEtaIdentityTolerance;
  r.kernel_computable = s.lambda <= kKernelLambdaCap;
  return r;
}

}  // namespace entlab
