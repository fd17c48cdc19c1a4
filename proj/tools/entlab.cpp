// entlab: command-line front end.
//
//   entlab entropy  --lambda 10 [--x0 1] [--mode exact|asym] [--format json|csv]
//   entlab scan     --lambda-min 10 --lambda-max 1000 --points 20 [--spacing log]
//   entlab spectrum --lambda 10 --region A [--nodes 200]
//   entlab bound    --lambda 30 [--variant all]
//   entlab physical --mass 1me --energy 13.6eV --radius 1m
//   entlab physical --gamma 1 --R-over-lp 10
//   entlab selftest [--level quick|full]
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "entlab/entropy.hpp"
#include "entlab/io.hpp"
#include "entlab/model.hpp"
#include "entlab/physics.hpp"
#include "entlab/scan.hpp"
#include "entlab/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;
constexpr const char* kConstantsEnv = "ENTLAB_CONSTANTS";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct Common {
  double x0 = 1.0;
  std::string mode = "exact";
  double tol = 1e-12;
  int nodes = 200;
  std::string format;
  std::string out;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--x0", c.x0, "observer position in (0, 1]")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--mode", c.mode, "normalization and kernel form")
      ->check(CLI::IsMember({"exact", "asym"}));
  cmd->add_option("--tol", c.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--nodes", c.nodes, "Nystrom node count")->check(CLI::Range(2, 100000));
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out, "write output to this path instead of stdout");
  cmd->add_flag("--verbose", c.verbose, "run metadata on stderr");
}

entlab::Mode parse_mode(const std::string& m) {
  return m == "asym" ? entlab::Mode::asymptotic : entlab::Mode::exact;
}

Format parse_format(const std::string& f) { return f == "csv" ? Format::csv : Format::json; }

// stdout unless --out is given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

entlab::ModelParams make_params(double lambda, double x0) {
  if (!(lambda > 0.0)) throw UsageError("--lambda must be > 0");
  try {
    return entlab::ModelParams(lambda, x0);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

entlab::ReportSettings report_settings(const Common& c) {
  entlab::ReportSettings rs;
  rs.norm_mode = parse_mode(c.mode);
  rs.kernel_mode = parse_mode(c.mode);
  rs.tol = c.tol;
  rs.n_nodes = c.nodes;
  return rs;
}

int cmd_entropy(double lambda, const Common& c) {
  const auto params = make_params(lambda, c.x0);
  const auto rep = entlab::entropy_report(params, report_settings(c));
  Output out(c.out);
  if (parse_format(c.format) == Format::json) {
    out.stream() << entlab::report_to_json(rep).dump(2) << "\n";
  } else {
    entlab::write_report_csv(out.stream(), rep);
  }
  return rep.ok() ? kExitOk : kExitNumerical;
}

struct ScanArgs {
  double lambda_min = 10.0;
  double lambda_max = 1000.0;
  int points = 20;
  std::string spacing = "log";
  unsigned threads = 1;
  bool no_spectral = false;
};

int cmd_scan(const ScanArgs& a, const Common& c) {
  if (!(a.lambda_min > 0.0 && a.lambda_min < a.lambda_max)) {
    throw UsageError("need 0 < --lambda-min < --lambda-max");
  }
  if (a.points < 2) throw UsageError("--points must be >= 2");
  make_params(a.lambda_min, c.x0);
  entlab::ScanSettings s;
  s.lambda_min = a.lambda_min;
  s.lambda_max = a.lambda_max;
  s.points = a.points;
  s.spacing = a.spacing == "linear" ? entlab::Spacing::linear : entlab::Spacing::log;
  s.x0 = c.x0;
  s.report = report_settings(c);
  s.report.spectral = !a.no_spectral;
  s.threads = a.threads;
  const auto rows = entlab::run_scan(s);
  const auto summary = entlab::summarize_scan(rows, s.lambda_max);
  Output out(c.out);
  if (parse_format(c.format) == Format::json) {
    out.stream() << entlab::scan_to_json(s, rows, summary).dump(2) << "\n";
  } else {
    entlab::write_scan_csv(out.stream(), s, rows, summary);
  }
  return kExitOk;
}

int cmd_spectrum(double lambda, const std::string& region_name, const Common& c) {
  const auto params = make_params(lambda, c.x0);
  const auto mode = parse_mode(c.mode);
  const auto region = region_name == "B" ? entlab::Region::B : entlab::Region::A;
  const auto norm = entlab::normalization(params, mode, c.tol);
  const auto spec = entlab::spectral_entropy(region, params, norm, c.nodes, mode);
  Output out(c.out);
  if (parse_format(c.format) == Format::json) {
    out.stream() << entlab::spectrum_to_json(spec, region, lambda, c.nodes).dump(2) << "\n";
  } else {
    entlab::write_spectrum_csv(out.stream(), spec, region, lambda, c.nodes);
  }
  return kExitOk;
}

int cmd_bound(double lambda, const std::string& variant, const Common& c) {
  const auto params = make_params(lambda, c.x0);
  const auto norm = entlab::normalization(params, parse_mode(c.mode), c.tol);
  std::vector<entlab::BoundResult> results;
  for (auto v : {entlab::BoundVariant::intermediate, entlab::BoundVariant::subleading,
                 entlab::BoundVariant::leading}) {
    if (variant == "all" || variant == entlab::to_string(v)) results.push_back(entlab::bound(v, params, norm));
  }
  Output out(c.out);
  if (parse_format(c.format) == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : results) arr.push_back(entlab::detail::to_json(b));
    nlohmann::json doc = {{"schema_version", entlab::kSchemaVersion},
                          {"kind", "bound"},
                          {"lambda", lambda},
                          {"x0", c.x0},
                          {"norm_mode", entlab::to_string(norm.mode)},
                          {"in_regime", params.effective_lambda() >= entlab::kRegimeLambdaMin},
                          {"bounds", arr}};
    out.stream() << doc.dump(2) << "\n";
  } else {
    out.stream() << "# schema_version=" << entlab::kSchemaVersion << "\n";
    out.stream() << "variant,lambda,value\n";
    for (const auto& b : results) {
      out.stream() << entlab::to_string(b.variant) << ',' << entlab::format_double(b.lambda) << ','
                   << entlab::format_double(b.value) << "\n";
    }
  }
  return kExitOk;
}

struct PhysicalArgs {
  std::optional<std::string> mass, energy, radius, constants;
  std::optional<double> gamma, r_over_lp;
};

int cmd_physical(const PhysicalArgs& a, const Common& c) {
  entlab::PhysicalConstants constants = entlab::codata2018();
  std::optional<std::string> constants_path = a.constants;
  if (!constants_path) {
    if (const char* env = std::getenv(kConstantsEnv); env && *env) constants_path = env;
  }
  if (constants_path) {
    try {
      constants = entlab::load_constants_file(*constants_path);
    } catch (const entlab::ConstantsParseError& e) {
      throw UsageError("constants file '" + *constants_path + "': " + e.what());
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }

  entlab::PhysicalScenario scenario;
  const bool geometric = a.gamma || a.r_over_lp;
  const bool physical = a.mass || a.energy || a.radius;
  if (geometric == physical) {
    throw UsageError("give either --mass/--energy/--radius or --gamma/--R-over-lp");
  }
  try {
    if (geometric) {
      if (!a.gamma || !a.r_over_lp) throw UsageError("--gamma and --R-over-lp go together");
      scenario = entlab::scenario_from_gamma(*a.gamma, *a.r_over_lp, c.x0, constants);
    } else {
      if (!a.mass || !a.energy || !a.radius) throw UsageError("--mass, --energy and --radius are all required");
      scenario = entlab::build_scenario(entlab::parse_mass(*a.mass), entlab::parse_energy(*a.energy),
                                        entlab::parse_length(*a.radius), c.x0, constants);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const auto report = entlab::holographic_report(scenario);
  Output out(c.out);
  if (parse_format(c.format) == Format::json) {
    out.stream() << entlab::physics_to_json(scenario, report).dump(2) << "\n";
  } else {
    entlab::write_physics_csv(out.stream(), scenario, report);
  }
  return report.identity_holds && report.eta_identity_holds ? kExitOk : kExitNumerical;
}

int cmd_selftest(const std::string& level) {
  const auto results =
      entlab::run_selftest(level == "full" ? entlab::SelfTestLevel::full : entlab::SelfTestLevel::quick);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
    if (r.passed) ++passed;
  }
  const bool all = passed == results.size();
  std::cout << (all ? "PASS " : "FAIL ") << passed << "/" << results.size() << "\n";
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement entropy of a two-region bound state: kernels, entropies, bounds"};
  app.require_subcommand(1);

  Common entropy_opts, scan_opts, spectrum_opts, bound_opts, physical_opts;
  double lambda = 0.0;

  auto* entropy = app.add_subcommand("entropy", "full report for one lambda");
  entropy->add_option("--lambda", lambda, "decay parameter")->required();
  add_common(entropy, entropy_opts, "json");

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "lambda grid with area-law fits");
  scan->add_option("--lambda-min", scan_args.lambda_min)->required();
  scan->add_option("--lambda-max", scan_args.lambda_max)->required();
  scan->add_option("--points", scan_args.points)->required();
  scan->add_option("--spacing", scan_args.spacing)->check(CLI::IsMember({"linear", "log"}));
  scan->add_option("--threads", scan_args.threads)->check(CLI::Range(1u, 256u));
  scan->add_flag("--no-spectral", scan_args.no_spectral, "skip the Nystrom eigenproblems");
  add_common(scan, scan_opts, "csv");

  std::string region = "A";
  auto* spectrum = app.add_subcommand("spectrum", "Nystrom eigenvalues of one reduced density matrix");
  spectrum->add_option("--lambda", lambda)->required();
  spectrum->add_option("--region", region)->check(CLI::IsMember({"A", "B"}));
  add_common(spectrum, spectrum_opts, "csv");

  std::string variant = "all";
  auto* bound = app.add_subcommand("bound", "analytic entropy bounds");
  bound->add_option("--lambda", lambda)->required();
  bound->add_option("--variant", variant)
      ->check(CLI::IsMember({"all", "intermediate", "subleading", "leading"}));
  add_common(bound, bound_opts, "json");

  PhysicalArgs phys;
  auto* physical = app.add_subcommand("physical", "map (m, |E|, R) to lambda and compare with A/4l_P^2");
  physical->add_option("--mass", phys.mass, "mass with unit suffix: kg, g, me");
  physical->add_option("--energy", phys.energy, "|E| with unit suffix: J, eV, keV, MeV, GeV");
  physical->add_option("--radius,--R", phys.radius, "boundary radius with unit suffix: m, cm, mm, km");
  physical->add_option("--gamma", phys.gamma, "dimensionless gamma = kappa l_P");
  physical->add_option("--R-over-lp", phys.r_over_lp, "R in Planck lengths");
  physical->add_option("--constants", phys.constants,
                       std::string("key=value constants file (hbar, G, c); env ") + kConstantsEnv);
  add_common(physical, physical_opts, "json");

  std::string level = "quick";
  auto* selftest = app.add_subcommand("selftest", "invariant batteries");
  selftest->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  const Common* verbose_source = nullptr;
  try {
    if (*entropy) {
      verbose_source = &entropy_opts;
      code = cmd_entropy(lambda, entropy_opts);
    } else if (*scan) {
      verbose_source = &scan_opts;
      code = cmd_scan(scan_args, scan_opts);
    } else if (*spectrum) {
      verbose_source = &spectrum_opts;
      code = cmd_spectrum(lambda, region, spectrum_opts);
    } else if (*bound) {
      verbose_source = &bound_opts;
      code = cmd_bound(lambda, variant, bound_opts);
    } else if (*physical) {
      verbose_source = &physical_opts;
      code = cmd_physical(phys, physical_opts);
    } else if (*selftest) {
      code = cmd_selftest(level);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  if (verbose_source && verbose_source->verbose) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "entlab " << app.get_subcommands().front()->get_name() << ": exit " << code << ", "
              << elapsed.count() << " s\n";
  }
  return code;
}
