#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "simctx/cli.hpp"
#include "simctx/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Contextuality analysis of simplicial distributions"};
  app.require_subcommand(1);

  std::string semiring, format = "table", out, from, to;
  std::size_t cap = 32;
  bool show_float = false;
  std::vector<std::string> inputs;

  const std::map<std::string, std::string> about{
      {"validate", "check a scenario, model or empirical model file"},
      {"check", "decide noncontextuality and print a witness"},
      {"cf", "contextual fraction with its decomposition"},
      {"strong", "strong contextuality and the support"},
      {"wi", "weak invertibility in the convolution monoid"},
      {"if", "invertible fraction"},
      {"isupp", "units that occur in some decomposition"},
      {"mult", "product of two models"},
      {"inverse", "two-sided inverse, if any"},
      {"vertices", "vertices of the polytope of a scenario"},
      {"chsh", "CHSH correlators and inequalities"},
      {"realize", "empirical model to simplicial distribution"},
      {"homotopy", "homotopies between two deterministic labelings"},
      {"glue", "glue two distributions along interface maps"},
  };
  for (const std::string& name : simctx::verb_names()) {
    CLI::App* sub = app.add_subcommand(name, about.count(name) ? about.at(name) : "");
    sub->add_option("inputs", inputs, "input file(s)")->required();
    sub->add_option("--semiring", semiring, "rational, boolean or real")->check(CLI::IsMember({"rational", "boolean", "real"}));
    sub->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--out", out, "write the report to a file");
    sub->add_flag("--float", show_float, "append decimal approximations");
    if (name == "vertices") sub->add_option("--cap", cap, "largest variable count to enumerate");
    if (name == "homotopy") {
      sub->add_option("--from", from, "labeling at the 0 end, e.g. x=0,y=0")->required();
      sub->add_option("--to", to, "labeling at the 1 end")->required();
    }
  }

  CLI11_PARSE(app, argc, argv);

  simctx::Command cmd;
  cmd.verb = simctx::parse_verb(app.get_subcommands().front()->get_name());
  cmd.inputs = inputs;
  cmd.format = format == "json" ? simctx::OutputFormat::Json : simctx::OutputFormat::Table;
  if (!semiring.empty()) cmd.semiring = simctx::parse_semiring_kind(semiring);
  cmd.cap = cap;
  if (!out.empty()) cmd.out = out;
  cmd.show_float = show_float;
  cmd.from = from;
  cmd.to = to;
  return simctx::run(cmd, std::cout, std::cerr);
}
