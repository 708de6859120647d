#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <regex>

#include "mlswe/checks.hpp"
#include "mlswe/run.hpp"

namespace {

mlswe::RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  mlswe::Config user = mlswe::Config::load(path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw mlswe::ConfigError("override '" + kv + "' is not key=value");
    user.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return mlswe::resolve_config(user);
}

void print_summary(const mlswe::RunResult& r, std::ostream& out) {
  out << std::setprecision(6) << "scenario " << r.scenario << ": " << r.steps << " steps to t = " << r.t_final
      << " in " << r.wall_seconds << " s\n";
  out << "  min h = " << r.min_height << ", max alpha = " << r.max_alpha
      << ", max per-step entropy change / |S| = " << r.max_entropy_increase << '\n';
  for (std::size_t m = 0; m < r.lake_final.max.size(); ++m)
    out << "  layer " << m + 1 << ": lake-at-rest max " << r.lake_final.max[m] << ", mean " << r.lake_final.mean[m]
        << ", mass drift " << r.max_mass_drift[m] << '\n';
  for (std::size_t m = 0; m < r.l2_error.size(); ++m) out << "  L2 error h" << m + 1 << " = " << r.l2_error[m] << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-stable DG solver for multilayer shallow water equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MLSWE_VERSION);

  std::string config_path;
  std::vector<std::string> overrides;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "integrate one scenario");
  run->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--set", overrides, "override a config key (key=value)");
  run->add_flag("--quiet", quiet, "suppress progress output");

  std::string param;
  auto* sweep = app.add_subcommand("sweep", "run a scenario for a range of polynomial degrees");
  sweep->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "parameter range, e.g. N=3..15")->required();
  sweep->add_option("--set", overrides, "override a config key (key=value)");
  sweep->add_flag("--quiet", quiet, "suppress progress output");

  std::string suite;
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check", "run a property check suite");
  check->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"flux", "wb", "entropy", "positivity"}));
  check->add_option("--seed", seed, "random seed");

  auto* list = app.add_subcommand("list-scenarios", "list the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*list) {
      for (const auto& s : mlswe::scenarios()) std::cout << std::left << std::setw(20) << s.name << s.description << '\n';
      return 0;
    }
    if (*check) {
      bool ok = true;
      for (const auto& c : mlswe::run_check_suite(suite, seed)) {
        std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << std::setprecision(3) << c.value
                  << " (limit " << c.limit << ")\n";
        ok = ok && c.passed();
      }
      return ok ? 0 : 2;
    }
    std::ostream* log = quiet ? nullptr : &std::cout;
    if (*run) {
      const auto rc = load_run_config(config_path, overrides);
      print_summary(mlswe::run_scenario(rc, true, log), std::cout);
      return 0;
    }
    if (*sweep) {
      static const std::regex range(R"(N=(\d+)\.\.(\d+))");
      std::smatch m;
      if (!std::regex_match(param, m, range)) throw mlswe::ConfigError("--param must look like N=3..15");
      const auto rc = load_run_config(config_path, overrides);
      for (const auto& [N, r] : mlswe::run_sweep(rc, std::stoi(m[1]), std::stoi(m[2]), true, log)) {
        std::cout << "N = " << N << '\n';
        print_summary(r, std::cout);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
