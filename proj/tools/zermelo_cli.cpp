// zermelo: command-line front end.
//
//   zermelo <verb> --config PATH [--out DIR] [--tol REL] [--grid N]
//
// Exit status 0 on success, 1 when validation fails, 2 when the
// configuration or the command line cannot be parsed.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zermelo/io/commands.hpp"
#include "zermelo/io/config.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<double> tol;
  std::optional<int> grid;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "problem configuration (YAML)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--tol", f.tol, "relative integration tolerance")->check(CLI::Range(1e-15, 1e-2));
  cmd->add_option("--grid", f.grid, "grid points per axis (validate, field)")->check(CLI::Range(2, 4001));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zermelo navigation with space-dependent ship speed"};
  app.require_subcommand(1);
  Flags flags;
  const char* verbs[][2] = {
      {"validate", "check the mild-wind condition on a grid over the domain"},
      {"field", "sample wind, speed and their margin on a grid"},
      {"geodesics", "integrate a fan of time-optimal paths for both metrics"},
      {"indicatrix", "compare unit indicatrices and reachable fronts"},
      {"compare", "shoot point pairs and compare transit times"},
  };
  for (const auto& v : verbs) add_flags(app.add_subcommand(v[0], v[1]), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : zermelo::io::kParseFailure;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    zermelo::io::RunConfig cfg = zermelo::io::load_config(flags.config);
    if (flags.tol) cfg.integration.rel = *flags.tol;
    if (flags.grid) cfg.validate_grid = cfg.field_grid = *flags.grid;
    return zermelo::io::run_command(verb, cfg, flags.out, std::cout);
  } catch (const zermelo::ParseError& e) {
    std::cerr << "zermelo: " << e.what() << '\n';
    return zermelo::io::kParseFailure;
  } catch (const std::exception& e) {
    std::cerr << "zermelo " << verb << ": " << e.what() << '\n';
    return zermelo::io::kValidationFailure;
  }
}
