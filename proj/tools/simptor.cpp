#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "simptor/commands.hpp"
#include "simptor/errors.hpp"
#include "simptor/io.hpp"
#include "simptor/verify.hpp"

using namespace simptor;

int main(int argc, char** argv) {
  CLI::App app{"Finite simplicial groups and chain complexes of groups"};
  app.require_subcommand(1);

  Caps caps;
  std::string format = "json";
  std::string output;
  std::optional<std::size_t> max_order, level_cap, iso_cap;
  std::optional<std::uint64_t> hom_cap;
  app.add_option("--max-order", max_order, "Largest group order accepted");
  app.add_option("--level-cap", level_cap, "Largest simplicial level");
  app.add_option("--iso-cap", iso_cap, "Largest order for brute-force isomorphism search");
  app.add_option("--hom-cap", hom_cap, "Largest number of hom families in chain-map enumeration");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", output, "Write to this file instead of stdout");

  std::string input;
  int n = 0, D = 0;
  std::string theory, group, upper = "id", lower = "zero", suite = "all";
  std::uint64_t seed = 7;

  auto* build = app.add_subcommand("build", "Parse, validate and print an object in canonical form");
  build->add_option("-i,--input", input, "JSON file, inline JSON or builtin (Z4, D4, S3, dis(G,D), ind(G,D), em(A,n,D))")->required();
  auto* moore = app.add_subcommand("moore", "Moore complex of a simplicial group");
  moore->add_option("-i,--input", input)->required();
  auto* homotopy = app.add_subcommand("homotopy", "Homotopy groups of a simplicial group, or homology of a complex");
  homotopy->add_option("-i,--input", input)->required();
  auto* radical = app.add_subcommand("radical", "Torsion part and quotient for a radical");
  radical->add_option("-i,--input", input)->required();
  radical->add_option("--theory", theory, "cok, ker (complexes) or geq, ngeq (simplicial)")
      ->required()
      ->check(CLI::IsMember({"cok", "ker", "geq", "ngeq"}));
  radical->add_option("-n", n)->required()->check(CLI::Range(0, 64));
  auto* cot = app.add_subcommand("cot", "Cotruncation cot_n / Cot_n");
  cot->add_option("-i,--input", input)->required();
  cot->add_option("-n", n)->required()->check(CLI::Range(0, 64));
  auto* cosk = app.add_subcommand("cosk", "Coskeleton cosk_n / Cosk_n");
  cosk->add_option("-i,--input", input)->required();
  cosk->add_option("-n", n)->required()->check(CLI::Range(0, 64));
  auto* lattice = app.add_subcommand("lattice", "Tower of torsion subobjects");
  lattice->add_option("-i,--input", input)->required();
  auto* em = app.add_subcommand("em", "Eilenberg-MacLane simplicial group K(A,n)");
  em->add_option("--group", group)->required();
  em->add_option("-n,--n", n)->required()->check(CLI::Range(1, 64));
  em->add_option("-D,--D", D)->required()->check(CLI::Range(0, 64));
  auto* pi = app.add_subcommand("pi", "Fundamental simplicial group upper(X)/lower(X)");
  pi->add_option("-i,--input", input)->required();
  pi->add_option("--upper", upper, "id, geq:<n> or ngeq:<n>");
  pi->add_option("--lower", lower, "zero, geq:<m> or ngeq:<m>");
  auto* verify = app.add_subcommand("verify", "Run the theorem suites over the seeded corpus");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suite_choices));
  verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Error err(ErrorCode::kParseError, e.what());
    std::cerr << dump_canonical(error_json(err));
    return exit_status(err.code());
  }

  try {
    caps = Caps::from_env();
    if (max_order) caps.max_order = *max_order;
    if (level_cap) caps.level_cap = *level_cap;
    if (iso_cap) caps.iso_cap = *iso_cap;
    if (hom_cap) caps.hom_family_cap = *hom_cap;

    CommandOutput out;
    if (*build) {
      out = run_build(load_input(input, caps));
    } else if (*moore) {
      out = run_moore(load_input(input, caps));
    } else if (*homotopy) {
      out = run_homotopy(load_input(input, caps));
    } else if (*radical) {
      out = run_radical(load_input(input, caps), theory, n);
    } else if (*cot) {
      out = run_cot(load_input(input, caps), n);
    } else if (*cosk) {
      out = run_cosk(load_input(input, caps), n, caps);
    } else if (*lattice) {
      out = run_lattice(load_input(input, caps));
    } else if (*em) {
      out = run_em(group, n, D, caps);
    } else if (*pi) {
      out = run_pi(load_input(input, caps), upper, lower);
    } else if (*verify) {
      out = run_verify(suite, seed, caps);
    }

    std::string rendered = format == "json" ? dump_canonical(out.value) : out.text;
    if (output.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream f(output);
      if (!f) fail(ErrorCode::kInvalidArgument, "cannot write " + output);
      f << rendered;
    }
    return out.status;
  } catch (const Error& e) {
    std::cerr << dump_canonical(error_json(e));
    return exit_status(e.code());
  }
}
