#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

int main(int argc, char** argv) {
  using namespace bsw::cli;
  CLI::App app{"Towers over free groups: constructions, closures and test sequences"};
  app.require_subcommand(1);

  Options     opts;
  std::string input;
  std::string fixtures;

  std::map<std::string, std::string> help = {
      {"build", "validate a tower spec and print a summary (--emit: canonical spec)"},
      {"present", "print the canonical presentation of a tower or GAD file"},
      {"twin", "build the twin tower"},
      {"closure", "glue closure embeddings into the abelian flats"},
      {"symmetrize", "symmetric closure of the twin tower"},
      {"complete", "completion of a GAD file along its morphism eta"},
      {"testseq", "emit test-sequence points"},
      {"extend", "decide whether peg exponents extend over a closure"},
      {"oracle", "decide triviality of a word"},
      {"verify-fixtures", "run the fixture suite"},
  };
  for (auto const& name : command_names()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    if (name == "verify-fixtures") {
      sub->add_option("dir", fixtures, "fixture directory (default: $BSW_FIXTURES)");
      continue;
    }
    sub->add_option("spec", input, "spec file")->required();
    sub->add_option("--level", opts.level, "level for present");
    sub->add_option("--n", opts.n, "sequence indices")->delimiter(',');
    sub->add_option("--seed", opts.seed, "seed for test-sequence points");
    sub->add_option("--budget", opts.budget, "indices tried by the limit oracle");
    sub->add_option("--p", opts.p, "peg exponents p1,...,pm");
    sub->add_option("--embeddings", opts.embeddings, "closure-embedding file");
    sub->add_option("--word", opts.word, "word for oracle");
    sub->add_option("--flat", opts.flat, "closure flat for extend");
    sub->add_flag("--assume-valid", opts.assume_valid, "accept Unknown validity verdicts");
    sub->add_flag("--emit", opts.emit, "build: print the canonical spec");
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  opts.fixtures = fixtures;
  auto* sub     = app.get_subcommands().front();
  try {
    auto res = run(sub->get_name(), input, opts);
    std::cout << res.out;
    std::cerr << res.err;
    return res.code;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMismatch;
  }
}
