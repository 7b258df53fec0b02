/*
 * smallorb: construct small orbifolds over simple polytopes and compute
 * their invariants, cross-validating closed forms against exact chain and
 * quotient-complex computations.
 */

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "smallorb/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"small orbifolds over simple polytopes"};
  app.require_subcommand(1);

  smallorb::CommandOptions opts;
  const std::vector<std::string> with_input = {"validate", "search",  "hvector",
                                               "homology", "toric",   "ring",
                                               "pi1orb",   "oracle",  "crosscheck"};
  for (const auto& name : with_input) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", opts.input_path, "polytope document (path or - for stdin)")
        ->required();
    sub->add_option("--coeff", opts.coeff, "coefficient ring: Z, Q, Z2 or all")
        ->check(CLI::IsMember({"Z", "Q", "Z2", "all"}));
    sub->add_option("--seed", opts.seed, "seed for the randomized objective");
    if (name == "search")
      sub->add_option("--limit", opts.limit, "stop after this many functions");
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  }
  CLI::App* gen = app.add_subcommand("generate", "emit a built-in polytope document");
  gen->add_option("family", opts.family, "cube | polygon | simplex | prism | product")
      ->required();
  gen->add_option("params", opts.params, "family parameters");
  gen->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);
  opts.subcommand = app.get_subcommands().front()->get_name();

  smallorb::CommandResult result = smallorb::run_command(opts);
  std::cout << result.rendered;
  return result.exit_code;
}
