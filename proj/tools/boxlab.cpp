#include "boxlab/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace boxlab;

int main(int argc, char** argv) {
  CLI::App app{"boxlab: minimal hidden-variable dimension of two-party boxes"};
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "classify a box or state");
  a->add_option("input", analyze.input, "box/state JSON file or werner:V=q, erasure:V=q, bb84:V=q, example2")
      ->required();
  a->add_option("--dimA", analyze.dimA, "untrusted-side dimension (default 2)");
  a->add_option("--dimB", analyze.dimB, "trusted-side dimension (default 2)");

  ReproduceOptions repro;
  auto* r = app.add_subcommand("reproduce", "regenerate a reference result and compare");
  r->add_option("target", repro.target)->required()->check(CLI::IsMember(reproduce_targets()));
  r->add_option("--v", repro.v, "visibility as p/q (default 1/2)");

  std::string mindim_input, model = "lhvlhs";
  auto* m = app.add_subcommand("mindim", "minimum hidden-variable dimension");
  m->add_option("input", mindim_input)->required();
  m->add_option("--model", model)->check(CLI::IsMember({"lhv", "lhvlhs"}));

  CLI11_PARSE(app, argc, argv);

  CommandResult res;
  try {
    if (a->parsed()) res = run_analyze(analyze, std::cerr);
    else if (r->parsed()) res = run_reproduce(repro, std::cerr);
    else res = run_mindim(mindim_input, model, SearchOptions{}, std::cerr);
  } catch (const std::exception& e) {
    res = error_result(e, std::cerr);
  }
  std::cout << res.output.dump(2) << std::endl;
  return res.exit_code;
}
