// qharr: invariants of quaternionic hyperplane arrangement complements.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qharr/cli.hpp"

int main(int argc, char** argv) {
  using qharr::cli::Command;
  using qharr::cli::Format;

  CLI::App app{"Cohomology and Orlik-Solomon invariants of quaternionic hyperplane arrangements"};
  app.require_subcommand(1);

  Command cmd;
  std::string format = "text";
  std::size_t m = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", cmd.file, "arrangement JSON file");
    sub->add_option("--catalog", cmd.catalog, "built-in arrangement: boolean, braid, generic, u23");
    sub->add_option("--n", cmd.n, "ambient quaternionic dimension for --catalog");
    sub->add_option("--m", m, "number of hyperplanes for --catalog generic");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", cmd.seed, "seed for randomized steps");
  };

  std::map<std::string, std::string> const verbs{
      {"info", "ambient dimension, hyperplanes, rank and circuits"},
      {"lattice", "intersection lattice with Moebius values"},
      {"poincare", "Poincare polynomial and Betti table"},
      {"os", "Orlik-Solomon graded dimensions from three engines and the nbc basis"},
      {"verify-recurrence", "check P = P' + t^3 P'' at every hyperplane"},
      {"validate-form", "numeric checks of the 3-form omega and its pullbacks"},
  };
  for (auto const& [verb, help] : verbs) {
    CLI::App* sub = app.add_subcommand(verb, help);
    add_common(sub);
    if (verb == "validate-form") sub->add_option("--samples", cmd.samples, "quadrature samples");
    sub->callback([&cmd, verb = verb] { cmd.verb = verb; });
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : qharr::cli::kExitUsage;
  }
  cmd.format = format == "json" ? Format::Json : Format::Text;
  if (m != 0) cmd.m = m;
  return qharr::cli::run(cmd, std::cout, std::cerr);
}
