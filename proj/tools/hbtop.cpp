#include <CLI11.hpp>

#include "hbtop/cli/app.hpp"
#include "hbtop/cli/generators.hpp"

namespace {

void add_out(CLI::App* sub, hbtop::cli::RunConfig& c) {
  sub->add_option("--out", c.output, "Write the JSON report here instead of standard output");
}

void add_seeded(CLI::App* sub, hbtop::cli::RunConfig& c) {
  sub->add_option("--count", c.count, "Number of generated instances")->capture_default_str();
  sub->add_option("--seed", c.seed, "64-bit seed for instance generation")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using hbtop::cli::RunConfig;
  CLI::App app{"Finite checks of the poset topology and dimension bookkeeping behind the handlebody group results"};
  app.require_subcommand(1);
  RunConfig c;

  auto* homology = app.add_subcommand("homology", "Reduced integral homology of complexes (.cx) and posets (.hasse)");
  homology->add_option("--in", c.inputs, "Input files")->required();
  add_out(homology, c);

  auto* rgb = app.add_subcommand("rgb-check", "Boundary suspension and recolouring checks on marked complexes");
  rgb->add_option("--in", c.inputs, "Marked complex files (.marked); omit to generate instances");
  add_seeded(rgb, c);
  rgb->add_option("--max-vertices", c.max_vertices, "Base vertices of generated complexes (1..5)")
      ->capture_default_str();
  add_out(rgb, c);

  std::string lemmas;
  for (const auto& id : hbtop::cli::lemma_ids()) lemmas += (lemmas.empty() ? "" : ", ") + id;
  auto* suite = app.add_subcommand("lemma-suite", "Seeded instances of one lemma");
  suite->add_option("--lemma", c.lemma, "One of: " + lemmas)->required();
  add_seeded(suite, c);
  add_out(suite, c);

  auto* dims = app.add_subcommand("dims", "Dimension table with duality and Birman identities");
  dims->add_option("--gmax", c.gmax)->capture_default_str();
  dims->add_option("--bmax", c.bmax)->capture_default_str();
  dims->add_option("--pmax", c.pmax)->capture_default_str();
  add_out(dims, c);

  auto* cut = app.add_subcommand("cutdata", "Enumerate cut data of a closed handlebody and their link types");
  cut->add_option("--g", c.genus, "Genus (1..5)")->capture_default_str();
  cut->add_option("--kmax", c.kmax, "Largest number of discs (1..6)")->capture_default_str();
  add_out(cut, c);

  auto* strat = app.add_subcommand("strat-check", "Stratification checks");
  strat->add_option("--in", c.inputs, "A complex (.cx) or poset (.hasse); omit to generate instances");
  strat->add_option("--poset", c.poset_input, "Poset for an explicit labelling");
  strat->add_option("--labels", c.labels_input, "Face labels: '<element> <vertices...>' per line");
  add_seeded(strat, c);
  add_out(strat, c);

  CLI11_PARSE(app, argc, argv);
  c.command = app.get_subcommands().front()->get_name();
  return hbtop::cli::run_and_write(c);
}
