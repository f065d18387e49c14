// Command-line front end. Talks to the library only through the C API.
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dcmoreau/dcmoreau.h"

int main(int argc, char** argv) {
  CLI::App app{"Difference-of-convex minimization through metric Moreau envelopes"};
  app.set_version_flag("--version", std::string(dcm_version()));
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  int table = 1;
  std::string suite;
  std::uint64_t seed = 42;
  int workers = 0;

  CLI::App* solve = app.add_subcommand("solve", "Run one configured solve and write its trace");
  solve->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", out_dir, "Directory for output files");

  CLI::App* reproduce = app.add_subcommand("reproduce", "Rerun a published results table");
  reproduce->add_option("--table", table, "Table number")->required()->check(CLI::IsMember({1, 2}));
  reproduce->add_option("--out", out_dir, "Directory for the comparison CSV");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid");
  sweep->add_option("--config", config, "JSON run configuration with a sweep section")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Directory for the sweep CSV");
  sweep->add_option("--workers", workers, "Concurrent cells (default from config)")
      ->check(CLI::PositiveNumber);

  CLI::App* validate = app.add_subcommand("validate", "Run a property-validation suite");
  validate->add_option("--suite", suite, "Suite name")->required();
  validate->add_option("--seed", seed, "Random seed");
  validate->add_option("--out", out_dir, "Directory for the report CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the config-error exit code.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*solve) return dcm_cmd_solve(config.c_str(), out_dir.c_str());
  if (*reproduce) return dcm_cmd_reproduce(table, out_dir.c_str());
  if (*sweep) return dcm_cmd_sweep(config.c_str(), out_dir.c_str(), workers);
  return dcm_cmd_validate(suite.c_str(), seed, out_dir.c_str());
}
