// fracmorrey: run check suites, list the catalog, describe checks.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "fracmorrey/catalog.hpp"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/suite.hpp"

namespace {

int listCatalog() {
  std::string kind;
  for (const fracmorrey::CatalogEntryInfo& e : fracmorrey::catalogListing()) {
    if (e.kind != kind) {
      kind = e.kind;
      std::cout << kind << "s:\n";
    }
    std::cout << "  " << e.name << "  " << e.description;
    if (!e.params.empty()) {
      std::cout << "  [";
      bool first = true;
      for (const auto& [k, v] : e.params) {
        std::cout << (first ? "" : ", ") << k << "=" << v;
        first = false;
      }
      std::cout << "]";
    }
    std::cout << "\n";
  }
  return 0;
}

int describe(const std::string& name) {
  try {
    const fracmorrey::CheckDescription d = fracmorrey::describeCheck(name);
    std::cout << d.name << "\n  " << d.summary << "\nparameters (defaults):\n" << d.defaults.dump(2) << "\n";
    return 0;
  } catch (const fracmorrey::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\navailable checks:\n";
    for (const auto& c : fracmorrey::registeredChecks()) std::cerr << "  " << c.name << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for fractional integrals with rough kernels on local Morrey spaces"};
  app.require_subcommand(1);

  std::string configPath;
  std::string outDir;
  int threads = 0;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run every check of a suite config");
  run->add_option("config", configPath, "YAML suite document")->required();
  run->add_option("--out", outDir, "Output directory (overrides suite.out)");
  run->add_option("--threads", threads, "Worker threads (overrides suite.threads)")->check(CLI::PositiveNumber);
  auto* seedOpt = run->add_option("--seed", seed, "Seed for sample-point jitter (overrides suite.seed)");

  app.add_subcommand("list-catalog", "List kernels, functions, symbols and weights");

  std::string checkName;
  auto* desc = app.add_subcommand("describe-check", "Show a check's parameters and defaults");
  desc->add_option("name", checkName, "Check name, e.g. checkCampanatoB")->required();

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list-catalog")) return listCatalog();
  if (app.got_subcommand("describe-check")) return describe(checkName);

  fracmorrey::SuiteConfig config;
  try {
    config = fracmorrey::loadConfig(configPath);
  } catch (const fracmorrey::ConfigError& e) {
    std::cerr << configPath << ": " << e.what() << "\n";
    return 2;
  }
  if (!outDir.empty()) config.settings.out = outDir;
  if (threads > 0) config.settings.threads = threads;
  if (*seedOpt) config.settings.seed = seed;
  for (const std::string& w : config.warnings) std::cerr << "warning: " << w << "\n";

  try {
    const fracmorrey::SuiteOutcome outcome = fracmorrey::runSuite(config, &std::cerr);
    std::cout << fracmorrey::summaryCsv(outcome.results);
    return outcome.exitCode;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
