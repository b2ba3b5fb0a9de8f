// topspin: stability of symmetric tops as a function of spin.
//
//   topspin classify -c run.cfg
//   topspin sweep    -c run.cfg -o out/
//   topspin selftest

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "topspin/commands.hpp"
#include "topspin/config.hpp"
#include "topspin/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spin-dependent stability of symmetric tops"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"classify", "classify the pole bifurcation and write report.txt"},
      {"branch", "trace the bifurcating branch into branch.csv"},
      {"sweep", "critical points over lambda_grid into diagram.csv"},
      {"simulate", "integrate from (u0, p0) into trajectory.csv"},
      {"probe", "perturbation test of each equilibrium"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("-c,--config", config_path, "run configuration file")->required();
    sub->add_option("-o,--output-dir", output_dir, "override output_dir from the config");
  }
  app.add_subcommand("selftest", "reproduce the reference results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? topspin::kExitOk : topspin::kExitConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  topspin::RunConfig cfg;
  if (name != "selftest") {
    try {
      cfg = topspin::load_config(config_path);
    } catch (const topspin::Error& e) {
      std::cerr << name << ": configuration error: " << e.what() << '\n';
      return topspin::kExitConfigError;
    }
    if (!output_dir.empty()) cfg.output_dir = output_dir;
  }
  return topspin::run_subcommand(name, cfg, std::cout, std::cerr);
}
