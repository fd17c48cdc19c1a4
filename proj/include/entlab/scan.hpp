#pragma once

// Lambda-grid scans and log-log fits of the area-law bounds.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "entlab/entropy.hpp"

namespace entlab {

enum class Spacing { linear, log };

struct ScanSettings {
  double lambda_min = 10.0;
  double lambda_max = 100.0;
  int points = 10;
  Spacing spacing = Spacing::log;
  double x0 = 1.0;
  ReportSettings report;
  unsigned threads = 1;
};

struct ScanRow {
  double lambda = 0.0;
  double S_diag_A = NAN;
  double S_diag_B = NAN;
  double S_spec_A = NAN;
  double S_spec_B = NAN;
  double bound_leading = NAN;
  double bound_subleading = NAN;
  double bound_intermediate = NAN;
  double trace_err_A = NAN;
  double trace_err_B = NAN;
  std::string flags;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

struct ScanSummary {
  LinearFit leading;      // over every row
  LinearFit subleading;   // over rows with lambda >= lambda_max / 10
};

/// Ascending grid with both endpoints hit exactly.
inline std::vector<double> lambda_grid(double lo, double hi, int points, Spacing spacing) {
  if (!(lo > 0.0 && lo < hi)) throw std::domain_error("lambda_grid: need 0 < lambda_min < lambda_max");
  if (points < 2) throw std::domain_error("lambda_grid: need at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    grid[i] = spacing == Spacing::linear ? lo + (hi - lo) * t
                                         : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

/// Ordinary least squares y = slope x + intercept.
inline LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::domain_error("least_squares: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("least_squares: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, x.size()};
}

/// Fit of log(value) against log(lambda).
inline LinearFit loglog_fit(std::span<const double> lambdas, std::span<const double> values) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    lx.push_back(std::log(lambdas[i]));
    ly.push_back(std::log(values[i]));
  }
  return least_squares(lx, ly);
}

inline ScanRow scan_row(double lambda, const ScanSettings& settings) {
  ScanRow row;
  row.lambda = lambda;
  const ModelParams params(lambda, settings.x0);
  const double eff = params.effective_lambda();
  row.bound_leading = leading_bound(eff);
  row.bound_subleading = subleading_bound(eff);

  const EntropyReport rep = entropy_report(params, settings.report);
  if (rep.diagonal_A) row.S_diag_A = rep.diagonal_A->value;
  if (rep.diagonal_B) row.S_diag_B = rep.diagonal_B->value;
  if (rep.spectral_A) row.S_spec_A = rep.spectral_A->entropy;
  if (rep.spectral_B) row.S_spec_B = rep.spectral_B->entropy;
  if (rep.bound_intermediate) row.bound_intermediate = rep.bound_intermediate->value;
  if (rep.trace_A) row.trace_err_A = std::abs(*rep.trace_A - 1.0);
  if (rep.trace_B) row.trace_err_B = std::abs(*rep.trace_B - 1.0);

  std::vector<std::string> tags;
  if (!rep.bounds_in_regime) tags.emplace_back("out_of_regime");
  if (!rep.kernel_in_range) tags.emplace_back("kernel_out_of_range");
  for (const auto& c : rep.checks) {
    if (c.passed.has_value() && !*c.passed) tags.push_back("fail:" + c.name);
  }
  for (const auto& e : rep.errors) {
    // keep the stage name only; messages may contain separators
    tags.push_back("error:" + e.substr(0, e.find(':')));
  }
  if (tags.empty()) {
    row.flags = "ok";
  } else {
    for (std::size_t i = 0; i < tags.size(); ++i) row.flags += (i ? ";" : "") + tags[i];
  }
  return row;
}

/// Rows are computed independently (optionally on several threads) and
/// stored by grid index, so the output does not depend on scheduling.
inline std::vector<ScanRow> run_scan(const ScanSettings& settings) {
  const auto grid = lambda_grid(settings.lambda_min, settings.lambda_max, settings.points, settings.spacing);
  ModelParams(settings.lambda_min, settings.x0);  // validates x0 up front
  std::vector<ScanRow> rows(grid.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(settings.threads, grid.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = scan_row(grid[i], settings);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return rows;
}

inline ScanSummary summarize_scan(const std::vector<ScanRow>& rows, double lambda_max) {
  ScanSummary summary;
  std::vector<double> l, lead, l_top, sub_top;
  for (const auto& r : rows) {
    l.push_back(r.lambda);
    lead.push_back(r.bound_leading);
    if (r.lambda >= lambda_max / 10.0 && r.bound_subleading > 0.0) {
      l_top.push_back(r.lambda);
      sub_top.push_back(r.bound_subleading);
    }
  }
  summary.leading = loglog_fit(l, lead);
  if (l_top.size() >= 2) summary.subleading = loglog_fit(l_top, sub_top);
  return summary;
}

}  // namespace entlab
