#pragma once

// CSV and JSON serialization for reports, scans, spectra and physics output.
// Floats are written with 17 significant digits in CSV; JSON uses the
// library's shortest round-trip form. Neither contains timestamps.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entlab/entropy.hpp"
#include "entlab/physics.hpp"
#include "entlab/scan.hpp"

namespace entlab {

inline constexpr int kSchemaVersion = 1;

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

using nlohmann::json;

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
json optional_number(const std::optional<T>& v) {
  return v ? number_or_null(*v) : json(nullptr);
}

inline json to_json(const EntropyResult& r) {
  return {{"value", number_or_null(r.value)},
          {"region", to_string(r.region)},
          {"method", to_string(r.method)},
          {"mode", to_string(r.mode)},
          {"quadrature_error", number_or_null(r.quadrature_error)},
          {"nodes_used", r.nodes_used}};
}

inline json to_json(const NystromDomain& d) {
  return {{"lower", d.lower},
          {"upper", d.upper},
          {"tail_mass", number_or_null(d.tail_mass)},
          {"tail_within_tolerance", d.tail_within_tolerance}};
}

inline json to_json(const SpectralResult& r, std::size_t max_eigenvalues = 20) {
  json top = json::array();
  for (std::size_t i = 0; i < r.eigenvalues.size() && i < max_eigenvalues; ++i) {
    top.push_back(r.eigenvalues[i]);
  }
  return {{"entropy", number_or_null(r.entropy)},
          {"eigenvalue_sum", number_or_null(r.raw_sum)},
          {"min_eigenvalue", number_or_null(r.min_raw_eigenvalue)},
          {"discarded_negative_mass", r.discarded_negative_mass},
          {"jacobi_sweeps", r.sweeps},
          {"domain", to_json(r.domain)},
          {"top_eigenvalues", top}};
}

inline json to_json(const BoundResult& b) {
  return {{"variant", to_string(b.variant)}, {"value", number_or_null(b.value)}, {"lambda", b.lambda}};
}

}  // namespace detail

inline nlohmann::json report_to_json(const EntropyReport& rep) {
  using nlohmann::json;
  using namespace detail;
  json checks = json::object();
  for (const auto& c : rep.checks) checks[c.name] = c.passed ? json(*c.passed) : json(nullptr);
  json bounds = {{"leading", to_json(rep.bound_leading)},
                 {"subleading", to_json(rep.bound_subleading)},
                 {"intermediate", rep.bound_intermediate ? to_json(*rep.bound_intermediate) : json(nullptr)}};
  return {
      {"schema_version", kSchemaVersion},
      {"kind", "entropy_report"},
      {"lambda", rep.lambda},
      {"x0", rep.x0},
      {"effective_lambda", rep.effective_lambda},
      {"norm_mode", to_string(rep.settings.norm_mode)},
      {"kernel_mode", to_string(rep.settings.kernel_mode)},
      {"nodes", rep.settings.n_nodes},
      {"tol", rep.settings.tol},
      {"log_c2", optional_number(rep.log_c2)},
      {"trace_A", optional_number(rep.trace_A)},
      {"trace_B", optional_number(rep.trace_B)},
      {"diagonal_A", rep.diagonal_A ? to_json(*rep.diagonal_A) : json(nullptr)},
      {"diagonal_B", rep.diagonal_B ? to_json(*rep.diagonal_B) : json(nullptr)},
      {"spectral_A", rep.spectral_A ? to_json(*rep.spectral_A) : json(nullptr)},
      {"spectral_B", rep.spectral_B ? to_json(*rep.spectral_B) : json(nullptr)},
      {"bounds", bounds},
      {"bounds_in_regime", rep.bounds_in_regime},
      {"kernel_in_range", rep.kernel_in_range},
      {"checks", checks},
      {"errors", rep.errors},
      {"ok", rep.ok()},
  };
}

/// Key/value CSV rendering of a report: one `quantity,value` line per field.
inline void write_report_csv(std::ostream& out, const EntropyReport& rep) {
  auto opt = [](const auto& v, auto get) { return v ? format_double(get(*v)) : std::string("nan"); };
  out << "# schema_version=" << kSchemaVersion << "\n";
  out << "# norm_mode=" << to_string(rep.settings.norm_mode)
      << " kernel_mode=" << to_string(rep.settings.kernel_mode) << " nodes=" << rep.settings.n_nodes
      << " tol=" << format_double(rep.settings.tol) << "\n";
  out << "quantity,value\n";
  out << "lambda," << format_double(rep.lambda) << "\n";
  out << "x0," << format_double(rep.x0) << "\n";
  out << "effective_lambda," << format_double(rep.effective_lambda) << "\n";
  out << "log_c2," << opt(rep.log_c2, [](double v) { return v; }) << "\n";
  out << "trace_A," << opt(rep.trace_A, [](double v) { return v; }) << "\n";
  out << "trace_B," << opt(rep.trace_B, [](double v) { return v; }) << "\n";
  out << "S_diag_A," << opt(rep.diagonal_A, [](const EntropyResult& r) { return r.value; }) << "\n";
  out << "S_diag_B," << opt(rep.diagonal_B, [](const EntropyResult& r) { return r.value; }) << "\n";
  out << "S_spec_A," << opt(rep.spectral_A, [](const SpectralResult& r) { return r.entropy; }) << "\n";
  out << "S_spec_B," << opt(rep.spectral_B, [](const SpectralResult& r) { return r.entropy; }) << "\n";
  out << "bound_leading," << format_double(rep.bound_leading.value) << "\n";
  out << "bound_subleading," << format_double(rep.bound_subleading.value) << "\n";
  out << "bound_intermediate," << opt(rep.bound_intermediate, [](const BoundResult& b) { return b.value; })
      << "\n";
  out << "bounds_in_regime," << (rep.bounds_in_regime ? "true" : "false") << "\n";
  for (const auto& c : rep.checks) {
    out << "check:" << c.name << "," << (c.passed ? (*c.passed ? "pass" : "fail") : "n/a") << "\n";
  }
  for (const auto& e : rep.errors) out << "# error: " << e << "\n";
  out << "ok," << (rep.ok() ? "true" : "false") << "\n";
}

inline const char* kScanCsvHeader =
    "lambda,S_diag_A,S_diag_B,S_spec_A,S_spec_B,bound_leading,bound_subleading,"
    "bound_intermediate,trace_err_A,trace_err_B,flags";

inline void write_scan_csv(std::ostream& out, const ScanSettings& s, const std::vector<ScanRow>& rows,
                           const ScanSummary& summary) {
  out << "# schema_version=" << kSchemaVersion << "\n";
  out << "# lambda_min=" << format_double(s.lambda_min) << " lambda_max=" << format_double(s.lambda_max)
      << " points=" << s.points << " spacing=" << (s.spacing == Spacing::log ? "log" : "linear")
      << " x0=" << format_double(s.x0) << "\n";
  out << "# norm_mode=" << to_string(s.report.norm_mode) << " kernel_mode=" << to_string(s.report.kernel_mode)
      << " nodes=" << s.report.n_nodes << " tol=" << format_double(s.report.tol)
      << " spectral=" << (s.report.spectral ? "true" : "false") << "\n";
  out << kScanCsvHeader << "\n";
  for (const auto& r : rows) {
    out << format_double(r.lambda) << ',' << format_double(r.S_diag_A) << ',' << format_double(r.S_diag_B)
        << ',' << format_double(r.S_spec_A) << ',' << format_double(r.S_spec_B) << ','
        << format_double(r.bound_leading) << ',' << format_double(r.bound_subleading) << ','
        << format_double(r.bound_intermediate) << ',' << format_double(r.trace_err_A) << ','
        << format_double(r.trace_err_B) << ',' << r.flags << "\n";
  }
  out << "# fit leading: slope=" << format_double(summary.leading.slope)
      << " intercept=" << format_double(summary.leading.intercept) << " points=" << summary.leading.points
      << "\n";
  out << "# fit subleading_top_decade: slope=" << format_double(summary.subleading.slope)
      << " intercept=" << format_double(summary.subleading.intercept)
      << " points=" << summary.subleading.points << "\n";
}

inline nlohmann::json scan_to_json(const ScanSettings& s, const std::vector<ScanRow>& rows,
                                   const ScanSummary& summary) {
  using nlohmann::json;
  using detail::number_or_null;
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"lambda", r.lambda},
                   {"S_diag_A", number_or_null(r.S_diag_A)},
                   {"S_diag_B", number_or_null(r.S_diag_B)},
                   {"S_spec_A", number_or_null(r.S_spec_A)},
                   {"S_spec_B", number_or_null(r.S_spec_B)},
                   {"bound_leading", number_or_null(r.bound_leading)},
                   {"bound_subleading", number_or_null(r.bound_subleading)},
                   {"bound_intermediate", number_or_null(r.bound_intermediate)},
                   {"trace_err_A", number_or_null(r.trace_err_A)},
                   {"trace_err_B", number_or_null(r.trace_err_B)},
                   {"flags", r.flags}});
  }
  auto fit = [](const LinearFit& f) {
    return json{{"slope", f.slope}, {"intercept", f.intercept}, {"points", f.points}};
  };
  return {{"schema_version", kSchemaVersion},
          {"kind", "scan"},
          {"lambda_min", s.lambda_min},
          {"lambda_max", s.lambda_max},
          {"points", s.points},
          {"spacing", s.spacing == Spacing::log ? "log" : "linear"},
          {"x0", s.x0},
          {"rows", arr},
          {"fit", {{"leading", fit(summary.leading)}, {"subleading_top_decade", fit(summary.subleading)}}}};
}

inline void write_spectrum_csv(std::ostream& out, const SpectralResult& r, Region region, double lambda,
                               int nodes) {
  out << "# schema_version=" << kSchemaVersion << " region=" << to_string(region)
      << " lambda=" << format_double(lambda) << " nodes=" << nodes << "\n";
  out << "index,eigenvalue\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    out << i << ',' << format_double(r.eigenvalues[i]) << "\n";
  }
  out << "# sum=" << format_double(r.raw_sum) << " entropy=" << format_double(r.entropy) << "\n";
}

inline nlohmann::json spectrum_to_json(const SpectralResult& r, Region region, double lambda, int nodes) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "spectrum"},
          {"region", to_string(region)},
          {"lambda", lambda},
          {"nodes", nodes},
          {"eigenvalues", r.eigenvalues},
          {"sum", r.raw_sum},
          {"entropy", r.entropy},
          {"domain", detail::to_json(r.domain)}};
}

inline nlohmann::json physics_to_json(const PhysicalScenario& s, const HolographicReport& h) {
  using nlohmann::json;
  using detail::optional_number;
  return {{"schema_version", kSchemaVersion},
          {"kind", "physical"},
          {"constants",
           {{"hbar", s.constants.hbar},
            {"G", s.constants.G},
            {"c", s.constants.c},
            {"planck_length", s.constants.planck_length()},
            {"planck_mass", s.constants.planck_mass()}}},
          {"scenario",
           {{"mass", optional_number(s.mass)},
            {"energy_abs", optional_number(s.energy)},
            {"mass_energy", s.mass_energy},
            {"R", s.radius},
            {"x0", s.x0},
            {"kappa", s.kappa},
            {"gamma", s.gamma},
            {"lambda", s.lambda},
            {"eta", s.eta},
            {"eta_physical", s.eta_physical},
            {"area", s.area}}},
          {"holographic",
           {{"area_law_bound", h.area_law_bound},
            {"holographic_bound", h.holographic_bound},
            {"ratio", h.ratio},
            {"eta_effective", h.eta_effective},
            {"stronger_than_holographic", h.stronger_than_holographic},
            {"lambda_squared_over_3", h.lambda_squared_over_3},
            {"identity_residual", h.identity_residual},
            {"identity_holds", h.identity_holds},
            {"eta_identity_holds", h.eta_identity_holds},
            {"kernel_computable", h.kernel_computable}}}};
}

inline void write_physics_csv(std::ostream& out, const PhysicalScenario& s, const HolographicReport& h) {
  auto row = [&](const char* k, double v) { out << k << ',' << format_double(v) << "\n"; };
  auto flag = [&](const char* k, bool v) { out << k << ',' << (v ? "true" : "false") << "\n"; };
  out << "# schema_version=" << kSchemaVersion << "\n";
  out << "quantity,value\n";
  row("hbar", s.constants.hbar);
  row("G", s.constants.G);
  row("c", s.constants.c);
  row("planck_length", s.constants.planck_length());
  row("planck_mass", s.constants.planck_mass());
  row("mass", s.mass.value_or(NAN));
  row("energy_abs", s.energy.value_or(NAN));
  row("mass_energy", s.mass_energy);
  row("R", s.radius);
  row("x0", s.x0);
  row("kappa", s.kappa);
  row("gamma", s.gamma);
  row("lambda", s.lambda);
  row("eta", s.eta);
  row("eta_physical", s.eta_physical);
  row("area", s.area);
  row("area_law_bound", h.area_law_bound);
  row("holographic_bound", h.holographic_bound);
  row("ratio", h.ratio);
  flag("stronger_than_holographic", h.stronger_than_holographic);
  row("identity_residual", h.identity_residual);
  flag("identity_holds", h.identity_holds);
  flag("eta_identity_holds", h.eta_identity_holds);
  flag("kernel_computable", h.kernel_computable);
}

}  // namespace entlab
