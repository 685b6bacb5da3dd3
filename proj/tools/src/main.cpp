#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"
#include "kinfty/error.hpp"

namespace cli = kinfty::cli;

int main(int argc, char** argv) {
  CLI::App app{"kinfty: simplicial sets, homotopy domains and the K-infinity lambda model"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the report as JSON");

  std::string source;
  cli::KanOptions kan;
  auto* kan_cmd = app.add_subcommand("kan-check", "Fill every horn up to a dimension");
  kan_cmd->add_option("complex", source, "delta:n, boundary:n, horn:n:i or a complex file")->required();
  kan_cmd->add_option("--dim", kan.dim, "Highest horn dimension")->capture_default_str();
  kan_cmd->add_flag("--inner", kan.inner_only, "Only inner horns");

  auto* dom_cmd = app.add_subcommand("domain-check", "Check the Homotopy Scott Domain properties");
  dom_cmd->add_option("domain", source, "nplus:d, chain:n, butterfly, point, fun:<builtin> or a file")->required();

  std::string term;
  std::string env;
  std::optional<std::string> config;
  auto* int_cmd = app.add_subcommand("interpret", "Interpret a lambda term in the tower");
  int_cmd->add_option("term", term, "Lambda term, e.g. '(\\z. x z) y'")->required();
  int_cmd->add_option("--env", env, "Variable bindings name=vertex,...");
  int_cmd->add_option("--config", config, "Tower config file");

  auto* ex_cmd = app.add_subcommand("example-4-1", "Run the beta/eta non-equivalence example end to end");
  ex_cmd->add_option("--config", config, "Tower config file (default: nplus(1), rep = example41, N = 3)");

  auto* info_cmd = app.add_subcommand("tower-info", "Summarize a tower and check its projection laws");
  info_cmd->add_option("--config", config, "Tower config file");

  for (auto* sub : {kan_cmd, dom_cmd, int_cmd, ex_cmd, info_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  try {
    cli::RunReport report;
    if (*kan_cmd)
      report = cli::cmd_kan_check(source, kan);
    else if (*dom_cmd)
      report = cli::cmd_domain_check(source);
    else if (*int_cmd)
      report = cli::cmd_interpret(term, env, config);
    else if (*ex_cmd)
      report = cli::cmd_example_4_1(config);
    else
      report = cli::cmd_tower_info(config);
    std::cout << (as_json ? cli::to_json(report) + "\n" : cli::to_text(report));
    return report.exit_code();
  } catch (const kinfty::TruncationOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kSemanticError;
  } catch (const kinfty::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInputError;
  } catch (const kinfty::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kSemanticError;
  }
}
