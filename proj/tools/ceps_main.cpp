// Command-line front end: validates system descriptions, runs the checker
// suites, traces Cesaro means, and drives seeded generate-and-check
// campaigns. All stdout output is deterministic for a fixed (config, seed);
// timing goes to stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ceps/ceps.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string format = "json";
  std::string epsilon;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t horizon = 0;
  bool exhaustive = false;
};

int fail_input(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

ceps::SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ceps::ConfigError("cannot read config file \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ceps::parse_config(buffer.str());
}

void print_table(const nlohmann::json& report) {
  if (report.contains("validation"))
    std::cout << "validation: "
              << (report["validation"]["valid"].get<bool>() ? "valid"
                                                            : "INVALID")
              << "\n";
  if (report.contains("checks"))
    for (const auto& check : report["checks"])
      std::cout << "check " << check["name"].get<std::string>() << ": "
                << (check["passed"].get<bool>() ? "pass" : "FAIL")
                << " (verdict=" << check["verdict"].dump() << ")\n";
  if (report.contains("violations"))
    std::cout << "violations: " << report["violations"]["total"].dump() << "\n";
  if (report.contains("all_passed"))
    std::cout << "all_passed: " << report["all_passed"].dump() << "\n";
}

void emit(const ceps::RunResult& result, const std::string& format) {
  if (format == "table")
    print_table(result.report);
  else
    std::cout << result.report.dump(2) << "\n";
}

// Per-check parameter overrides from the command line, falling back to the
// config's own entry for that check.
ceps::CheckSpec spec_for(const ceps::SystemConfig& config,
                         const std::string& name, const CommonArgs& args) {
  ceps::CheckSpec spec;
  spec.name = name;
  for (const ceps::CheckSpec& configured : config.checks)
    if (configured.name == name) spec = configured;
  if (args.horizon != 0) spec.horizon = args.horizon;
  if (!args.epsilon.empty()) spec.epsilon = args.epsilon;
  if (args.seed_set) spec.seed = args.seed;
  if (args.exhaustive) spec.exhaustive = true;
  return spec;
}

int run_single_check(const std::string& name, const CommonArgs& args) {
  try {
    const ceps::SystemConfig config = load_config(args.config_path);
    const ceps::RunResult result =
        ceps::run_checks(config, {spec_for(config, name, args)});
    emit(result, args.format);
    return result.exit_code;
  } catch (const ceps::ConfigError& err) {
    return fail_input(err.what());
  }
}

std::vector<ceps::Rational> parse_coordinates(const std::string& text) {
  std::vector<ceps::Rational> coords;
  std::string token;
  std::stringstream stream(text);
  while (std::getline(stream, token, ','))
    coords.push_back(ceps::parse_rational(token));
  return coords;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional expectation preserving systems: exact ergodicity, "
               "mixing and independence checkers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ceps::kVersion));

  CommonArgs args;
  std::string element_text;
  std::size_t count = 100;
  std::size_t max_atoms = 8;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", args.config_path, "system description file")
          ->required();
    cmd->add_option("--format", args.format, "json|csv|table");
  };

  CLI::App* validate = app.add_subcommand("validate", "check TS = T");
  add_common(validate, true);

  CLI::App* ergodic = app.add_subcommand(
      "ergodic", "three-route ergodicity verdict with witnesses");
  add_common(ergodic, true);

  CLI::App* mixing =
      app.add_subcommand("mixing", "weak-mixing verdict with period averages");
  add_common(mixing, true);
  mixing->add_flag("--exhaustive", args.exhaustive,
                   "enumerate all band projection pairs");
  mixing->add_option("--seed", args.seed, "seed for sampled quantification")
      ->each([&](const std::string&) { args.seed_set = true; });

  CLI::App* independence = app.add_subcommand(
      "independence", "sequence independence and strong-law harness");
  add_common(independence, true);
  independence->add_option("--horizon", args.horizon,
                           "index horizon (default: period of tau)");

  CLI::App* report = app.add_subcommand(
      "report", "run the config's checks (or the full default suite)");
  add_common(report, true);
  report->add_option("--epsilon", args.epsilon,
                     "tolerance for the iterative check, as p/q");

  CLI::App* trace =
      app.add_subcommand("trace", "Cesaro means of an element, as CSV");
  add_common(trace, true);
  trace->add_option("--element", element_text,
                    "comma-separated rational coordinates")
      ->required();
  trace->add_option("--horizon", args.horizon, "number of means to emit");

  CLI::App* campaign = app.add_subcommand(
      "campaign", "seeded generate-and-check run over random systems");
  campaign->add_option("--seed", args.seed, "campaign seed")->required();
  campaign->add_option("--count", count, "number of systems");
  campaign->add_option("--max-atoms", max_atoms, "largest atom count");
  campaign->add_option("--format", args.format, "json|table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    if (validate->parsed()) {
      const ceps::SystemConfig config = load_config(args.config_path);
      const ceps::RunResult result = ceps::run_checks(config, {});
      emit(result, args.format);
      exit_code = result.report["validation"]["valid"].get<bool>() ? 0 : 1;
    } else if (ergodic->parsed()) {
      exit_code = run_single_check("ergodic", args);
    } else if (mixing->parsed()) {
      exit_code = run_single_check("mixing", args);
    } else if (independence->parsed()) {
      exit_code = run_single_check("independence", args);
    } else if (report->parsed()) {
      const ceps::SystemConfig config = load_config(args.config_path);
      const ceps::RunResult result = ceps::run_checks(config);
      emit(result, args.format);
      exit_code = result.exit_code;
    } else if (trace->parsed()) {
      const ceps::SystemConfig config = load_config(args.config_path);
      const ceps::CEPSystem sys = ceps::build_system(config);
      if (!sys.is_valid()) {
        std::cerr << "error: system fails validation; no trace emitted\n";
        exit_code = 1;
      } else {
        ceps::Element f{parse_coordinates(element_text)};
        std::cout << ceps::trace_csv(sys, f, args.horizon);
      }
    } else if (campaign->parsed()) {
      const ceps::RunResult result =
          ceps::random_campaign(args.seed, count, max_atoms);
      emit(result, args.format);
      exit_code = result.exit_code;
    }
  } catch (const ceps::ConfigError& err) {
    return fail_input(err.what());
  } catch (const std::invalid_argument& err) {
    return fail_input(err.what());
  } catch (const ceps::CapExceededError& err) {
    return fail_input(err.what());
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "elapsed: " << elapsed.count() << " ms\n";
  return exit_code;
}
