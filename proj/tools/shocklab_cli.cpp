#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shocklab/errors.hpp"
#include "shocklab/pipeline.hpp"
#include "shocklab/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Short-pulse shock formation laboratory for the radial quasilinear wave equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--set", overrides, "override a key: section.key=value (repeatable)");
  };
  add_common(app.add_subcommand("datagen", "build initial data and check the radiation bounds"));
  add_common(app.add_subcommand("evolve", "evolve to shock or t_end with the characteristic fan"));
  add_common(app.add_subcommand("burgers", "Burgers oracle for the fan machinery"));
  add_common(app.add_subcommand("sweep", "repeat datagen/evolve over r0 or delta"));

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  shocklab::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = shocklab::RunConfig::from_ini(config_path);
    for (const auto& o : overrides) cfg.set(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return shocklab::run_command(command, cfg, out_dir, std::cerr);
}
