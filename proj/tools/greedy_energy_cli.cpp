// greedy-energy: sequence generation, second-order series, invariant suites
// and limit constants from the command line.
//
// Exit status: 0 success, 1 verification failure, 2 usage or domain error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "greedy_energy/greedy_energy.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

greedy::io::Format parse_format(const std::string& s) {
  return s == "json" ? greedy::io::Format::json : greedy::io::Format::csv;
}

void emit(const greedy::io::Table& table, const std::string& out, const std::string& format,
          greedy::io::RunManifest manifest) {
  const auto f = parse_format(format);
  if (out.empty() || out == "-") {
    std::cout << greedy::io::render(table, f);
    return;
  }
  manifest.version = GREEDY_ENERGY_VERSION;
  greedy::io::write_with_manifest(out, table, f, std::move(manifest));
}

std::string sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct GenerateOpts {
  int d = 1;
  double lambda = 1.0;
  long long n = 0;
  std::string method;
  std::string out;
  std::string format = "csv";
  long long grid = 0;
  double tol = 1e-10;
};

int run_generate(const GenerateOpts& o) {
  const greedy::Lambda lambda(o.lambda);
  std::string method = o.method;
  if (method.empty()) method = (o.d == 1 && o.lambda < 2.0) ? "exact" : "numeric";
  if (method == "exact" && o.d != 1) throw UsageError("--method exact requires --d 1");
  if (method == "exact" && !(o.lambda < 2.0)) throw UsageError("--method exact requires 0 < lambda < 2");
  if (method == "exact" && (o.grid != 0)) throw UsageError("--grid only applies to --method numeric");

  greedy::io::RunManifest m;
  m.command = "generate";
  m.parameters = {{"d", o.d}, {"lambda", o.lambda}, {"n", o.n}, {"method", method}, {"format", o.format}};
  greedy::io::Table table;
  if (method == "exact") {
    table = greedy::io::exact_sequence_table(lambda, static_cast<std::uint64_t>(o.n));
  } else {
    greedy::GreedyConfig cfg(o.d, lambda, static_cast<std::size_t>(o.n));
    if (o.grid > 0) cfg.coarse_grid_size = static_cast<std::size_t>(o.grid);
    cfg.refine_tolerance = o.tol;
    m.parameters["grid"] = cfg.coarse_grid_size;
    m.parameters["tolerance"] = cfg.refine_tolerance;
    const auto pts = greedy::generate(cfg);
    table = greedy::io::numeric_sequence_table(pts, lambda);
  }
  emit(table, o.out, o.format, m);
  return kOk;
}

int run_second_order(double l, long long nmax, const std::string& out, const std::string& format) {
  if (!(l > 0.0 && l < 2.0)) throw UsageError("--lambda must lie in (0, 2)");
  const greedy::Lambda lambda(l);
  const auto rows = greedy::second_order_series(lambda, static_cast<std::uint64_t>(nmax));
  greedy::io::RunManifest m;
  m.command = "second-order";
  m.parameters = {{"lambda", l}, {"nmax", nmax}, {"format", format}};
  emit(greedy::io::second_order_table(rows), out, format, m);
  return kOk;
}

int run_verify(const std::string& suite, const std::string& profile) {
  const auto p = profile == "full" ? greedy::verify::Profile::full : greedy::verify::Profile::quick;
  const auto checks = greedy::verify::run(suite, p);
  int failed = 0;
  std::printf("%-6s %-10s %-72s %14s %14s %10s\n", "result", "suite", "check", "measured", "expected", "tolerance");
  for (const auto& c : checks) {
    std::printf("%-6s %-10s %-72s %14.6g %14.6g %10.3g\n", c.passed ? "PASS" : "FAIL", c.suite.c_str(),
                c.name.c_str(), c.measured, c.expected, c.tolerance);
    if (!c.passed) ++failed;
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed == 0 ? kOk : kVerifyFailed;
}

int run_constants(double l, int d, bool as_json, long long gbar_bound) {
  const greedy::Lambda lambda(l);
  if (d < 1) throw std::domain_error("--d must be >= 1");
  nlohmann::ordered_json j;
  j["lambda"] = l;
  j["d"] = d;
  if (l < 2.0) {
    j["continuous_energy"] = greedy::continuous_energy(lambda, d);
    j["zeta_neg"] = greedy::zeta_neg(lambda);
    j["second_order_constant"] = greedy::second_order_constant(lambda);
    if (d != 1) j["continuous_energy_circle"] = greedy::continuous_energy(lambda, 1);
  } else {
    j["maximal_energy"] = greedy::maximal_energy(lambda);
  }
  switch (lambda.regime()) {
    case greedy::Regime::below_one: {
      const auto gb = greedy::g_bar(l, static_cast<std::uint64_t>(gbar_bound));
      j["g_bar"] = gb.value;
      j["g_bar_witness_M"] = gb.argmax;
      j["g_bar_M_bound"] = gbar_bound;
      j["liminf_constant"] = gb.value * greedy::second_order_constant(lambda);
      break;
    }
    case greedy::Regime::one:
      j["lambda1_liminf_bound"] = greedy::subsequence_limit_lambda1(2);
      break;
    case greedy::Regime::one_to_two: {
      const auto s = greedy::s_lambda(lambda, 1e-12);
      j["s_lambda"] = s.value;
      j["s_lambda_remainder_bound"] = s.remainder_bound;
      break;
    }
    default:
      j["odd_N_deficit"] = greedy::collapse_deficit(lambda, 3);
      break;
  }
  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  for (const auto& [key, value] : j.items()) {
    std::string text;
    if (value.is_number_float()) text = sig12(value.get<double>());
    else text = value.dump();
    std::printf("%-26s %s\n", key.c_str(), text.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy lambda-energy sequences on spheres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GREEDY_ENERGY_VERSION));

  GenerateOpts gen;
  auto* generate = app.add_subcommand("generate", "greedy sequence, one row per point");
  generate->add_option("--d", gen.d, "sphere dimension")->check(CLI::PositiveNumber);
  generate->add_option("--lambda", gen.lambda, "energy exponent")->required();
  generate->add_option("--n", gen.n, "number of points")->required()->check(CLI::PositiveNumber);
  generate->add_option("--method", gen.method, "exact (d=1, lambda<2) or numeric")
      ->check(CLI::IsMember({"exact", "numeric"}));
  generate->add_option("--out", gen.out, "output file; stdout when omitted");
  generate->add_option("--format", gen.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  generate->add_option("--grid", gen.grid, "coarse grid size (numeric)")->check(CLI::Range(64LL, 1LL << 26));
  generate->add_option("--tol", gen.tol, "refinement tolerance (numeric)")->check(CLI::PositiveNumber);

  double so_lambda = 1.0;
  long long so_nmax = 0;
  std::string so_out, so_format = "csv";
  auto* second = app.add_subcommand("second-order", "H - N^2 I and U_N(a_N) - N I for 2 <= N <= nmax");
  second->add_option("--lambda", so_lambda, "energy exponent in (0, 2)")->required();
  second->add_option("--nmax", so_nmax, "largest N")->required()->check(CLI::Range(2LL, 1LL << 30));
  second->add_option("--out", so_out, "output file; stdout when omitted");
  second->add_option("--format", so_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string suite = "all", profile = "quick";
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"symmetry", "formulas", "bounds", "limits", "special", "all"}));
  verify->add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));

  double c_lambda = 1.0;
  int c_d = 1;
  bool c_json = false;
  long long c_gbar = 1LL << 20;
  auto* constants = app.add_subcommand("constants", "limit constants for one exponent");
  constants->add_option("--lambda", c_lambda, "energy exponent")->required();
  constants->add_option("--d", c_d, "sphere dimension");
  constants->add_flag("--json", c_json, "machine-readable output");
  constants->add_option("--gbar-bound", c_gbar, "largest odd M enumerated for g_bar")
      ->check(CLI::Range(3LL, 1LL << 32));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*second) return run_second_order(so_lambda, so_nmax, so_out, so_format);
    if (*verify) return run_verify(suite, profile);
    if (*constants) return run_constants(c_lambda, c_d, c_json, c_gbar);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
