#include <cmath>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"

#include "entlab/io.hpp"
#include "entlab/scan.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace entlab;

namespace {

ScanSettings bounds_only(double lo, double hi, int points) {
  ScanSettings s;
  s.lambda_min = lo;
  s.lambda_max = hi;
  s.points = points;
  s.report.spectral = false;
  return s;
}

}  // namespace

TEST_CASE("lambda grid", "[scan]") {
  const auto lin = lambda_grid(1.0, 5.0, 5, Spacing::linear);
  CHECK(lin == std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0});
  const auto lg = lambda_grid(10.0, 1000.0, 3, Spacing::log);
  CHECK(lg.front() == 10.0);
  CHECK_THAT(lg[1], WithinRel(100.0, 1e-14));
  CHECK(lg.back() == 1000.0);
  CHECK_THROWS_AS(lambda_grid(5.0, 1.0, 3, Spacing::log), std::domain_error);
  CHECK_THROWS_AS(lambda_grid(1.0, 5.0, 1, Spacing::log), std::domain_error);
}

TEST_CASE("least squares", "[scan]") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const auto f = least_squares(x, y);
  CHECK_THAT(f.slope, WithinRel(2.0, 1e-15));
  CHECK_THAT(f.intercept, WithinRel(1.0, 1e-15));
  CHECK(f.points == 4);
}

TEST_CASE("leading bound has log-log slope 2", "[scan]") {
  std::vector<double> l, v;
  for (double lambda : lambda_grid(10.0, 1e4, 25, Spacing::log)) {
    l.push_back(lambda);
    v.push_back(leading_bound(lambda));
  }
  const auto f = loglog_fit(l, v);
  CHECK_THAT(f.slope, WithinAbs(2.0, 1e-12));
  CHECK_THAT(f.intercept, WithinAbs(-std::log(3.0), 1e-11));
}

TEST_CASE("subleading log-log slope over the top decade", "[scan]") {
  std::vector<double> l, v;
  for (double lambda : lambda_grid(100.0, 1000.0, 50, Spacing::log)) {
    l.push_back(lambda);
    v.push_back(subleading_bound(lambda));
  }
  // The correction factor decreases on this range, so the slope sits just above 2.
  const auto f = loglog_fit(l, v);
  CHECK_THAT(f.slope, WithinAbs(2.0134, 5e-4));
}

TEST_CASE("scan rows and flags", "[scan]") {
  const auto s = bounds_only(1.0, 20.0, 4);
  const auto rows = run_scan(s);
  REQUIRE(rows.size() == 4);
  CHECK(rows.front().lambda == 1.0);
  CHECK(rows.back().lambda == 20.0);
  CHECK(rows.front().flags.find("out_of_regime") != std::string::npos);
  CHECK(rows.back().flags == "ok");
  CHECK(std::isnan(rows.back().S_spec_A));
  CHECK(rows.back().trace_err_A < 1e-8);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].lambda > rows[i - 1].lambda);
}

TEST_CASE("parallel scan is identical to serial", "[scan]") {
  auto s = bounds_only(5.0, 200.0, 8);
  const auto serial = run_scan(s);
  s.threads = 4;
  const auto parallel = run_scan(s);
  std::ostringstream a, b;
  write_scan_csv(a, s, serial, summarize_scan(serial, s.lambda_max));
  write_scan_csv(b, s, parallel, summarize_scan(parallel, s.lambda_max));
  CHECK(a.str() == b.str());
}

TEST_CASE("scan CSV layout", "[io]") {
  const auto s = bounds_only(10.0, 100.0, 3);
  const auto rows = run_scan(s);
  std::ostringstream out;
  write_scan_csv(out, s, rows, summarize_scan(rows, s.lambda_max));
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> data;
  std::string header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = line;
    } else {
      data.push_back(line);
    }
  }
  CHECK(header ==
        "lambda,S_diag_A,S_diag_B,S_spec_A,S_spec_B,bound_leading,bound_subleading,"
        "bound_intermediate,trace_err_A,trace_err_B,flags");
  REQUIRE(data.size() == 3);
  CHECK(data[0].rfind("10,", 0) == 0);
  const std::string key = "# fit leading: slope=";
  const auto at = out.str().find(key);
  REQUIRE(at != std::string::npos);
  CHECK_THAT(std::stod(out.str().substr(at + key.size())), WithinAbs(2.0, 1e-12));
}

TEST_CASE("doubles round-trip through text", "[io][property]") {
  for (double v : {0.1, 1.0 / 3.0, 280.3001952712078505, 9.893834013744387e-51, -1.811220488509892}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("report JSON", "[io]") {
  ReportSettings settings;
  settings.spectral = false;
  const auto rep = entropy_report(ModelParams(10.0), settings);
  const auto j = report_to_json(rep);
  CHECK(j["schema_version"] == 1);
  CHECK(j["lambda"] == 10.0);
  CHECK(j["spectral_A"].is_null());
  CHECK(j["diagonal_A"]["value"].get<double>() == rep.diagonal_A->value);
  CHECK(j["bounds"]["leading"]["value"].get<double>() == leading_bound(10.0));
  CHECK(j["checks"]["trace_A"] == true);
  CHECK(j["ok"] == true);
  // Serialized twice, byte-identical.
  CHECK(report_to_json(entropy_report(ModelParams(10.0), settings)).dump() == j.dump());
  // Full-precision round-trip.
  const auto back = nlohmann::json::parse(j.dump());
  CHECK(back["log_c2"].get<double>() == *rep.log_c2);
}

TEST_CASE("spectrum CSV footer", "[io]") {
  const ModelParams p(10.0);
  const auto r = spectral_entropy(Region::A, p, normalization(p, Mode::exact), 50);
  std::ostringstream out;
  write_spectrum_csv(out, r, Region::A, 10.0, 50);
  const std::string text = out.str();
  CHECK(text.find("index,eigenvalue\n0,") != std::string::npos);
  CHECK(text.find("# sum=") != std::string::npos);
  CHECK(spectrum_to_json(r, Region::A, 10.0, 50)["eigenvalues"].size() == 50);
}

TEST_CASE("physics JSON", "[io]") {
  const auto s = build_scenario(kElectronMass, 13.6 * kElectronVolt, 1.0);
  const auto j = physics_to_json(s, holographic_report(s));
  CHECK(j["schema_version"] == 1);
  CHECK(j.dump().find("stronger_than_holographic") != std::string::npos);
}
