// ossolve: asymptotic eigenvalues and eigenfunctions of the Orr-Sommerfeld
// equation on semi-infinite and infinite domains.

#include <clocale>
#include <string>

#include <CLI11.hpp>

#include "ossolve/cli.hpp"
#include "ossolve/version.hpp"

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"Orr-Sommerfeld asymptotic eigenvalue/eigenfunction solver"};
  app.set_version_flag("--version", std::string(ossolve::kVersion));
  app.require_subcommand(1);

  std::string config, out_dir = ".";
  for (const char* name :
       {"eigenvalues", "eigenfunction", "figures", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (default: .)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 returns 0 for --help/--version; anything else is usage error
    return (code == 0) ? 0 : ossolve::cli::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return ossolve::cli::run_command(command, config, out_dir);
}
