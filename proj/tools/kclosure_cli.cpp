// kclosure: command-line front end for the verification campaigns.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 resource cap.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kclosure/campaigns.hpp"

namespace {

using namespace kclosure;

enum Exit { kPass = 0, kCheckFailed = 1, kBadInput = 2, kCapExceeded = 3 };

struct GroupArgs {
  std::string file;
  std::size_t degree = 0;
  std::vector<std::string> gens;

  PermGroup load() const {
    if (!file.empty()) {
      if (degree || !gens.empty())
        throw InputError("give either a group file or --degree/--gens, not both");
      return read_group_file(file);
    }
    if (!degree) throw InputError("no group given: pass a group file or --degree and --gens");
    return group_from_strings(degree, gens);
  }
};

void add_group_options(CLI::App *cmd, GroupArgs &g) {
  cmd->add_option("group,--group", g.file,
                  "group file: {\"degree\": n, \"generators\": [\"(1,2)\", ...]}");
  cmd->add_option("--degree", g.degree, "number of points");
  cmd->add_option("--gens", g.gens, "generators in cycle notation, e.g. \"(1,2,3)(4,5)\"");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Wielandt k-closures of permutation groups and checks on abelian groups"};
  app.set_version_flag("--version", std::string(kArtifactVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string report_path;
  std::optional<std::uint64_t> seed;
  CampaignOptions options;
  app.add_option("--format", format, "report on standard output: json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--report", report_path, "also write the JSON report to this file");
  app.add_option("--seed", seed, "seed for campaigns that sample");
  app.add_option("--cap-tuples", options.caps.max_tuples, "largest tuple table (degree^k)")
      ->capture_default_str();
  app.add_option("--cap-brute", options.caps.brute_force_degree,
                 "largest degree checked by filtering all of Sym(Omega)")
      ->capture_default_str();
  app.add_option("--cap-degree-k2", options.caps.max_degree_k2,
                 "largest degree for closure search with k <= 2")
      ->capture_default_str();
  app.add_option("--cap-degree-k3", options.caps.max_degree_k3,
                 "largest degree for closure search with k >= 3")
      ->capture_default_str();
  app.add_option("--cap-elements", options.caps.max_elements,
                 "largest group listed element by element")
      ->capture_default_str();
  app.add_option("--jobs", options.jobs, "threads for independent items")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  GroupArgs closure_group, product_group;
  std::size_t k = 2;
  std::string orders;
  std::size_t max_points = 12;

  auto *closure = app.add_subcommand("closure", "k-closure of a group");
  add_group_options(closure, closure_group);
  closure->add_option("--k", k, "arity")->capture_default_str();

  auto *witness = app.add_subcommand("witness", "non-closed faithful action of an abelian group");
  witness->add_option("--orders", orders, "cyclic factor orders, e.g. 2,6")->required();

  auto *thm2 = app.add_subcommand(
      "verify-thm2", "(n+1)-closure of every small faithful action, and the witness");
  thm2->add_option("--orders", orders, "cyclic factor orders")->required();
  thm2->add_option("--max-points", max_points, "largest action degree")->capture_default_str();

  auto *product = app.add_subcommand(
      "verify-product", "k-closure of an abelian group against its Sylow closures");
  add_group_options(product, product_group);
  product->add_option("--k", k, "arity")->capture_default_str();

  auto *lemmas = app.add_subcommand(
      "verify-lemmas", "stabilizer restriction and Hall-orbit properties");
  lemmas->add_option("--orders", orders, "cyclic factor orders")->required();
  lemmas->add_option("--max-points", max_points, "largest action degree")
      ->capture_default_str();
  lemmas->add_option("--subset-limit", options.subset_limit,
                     "orbit subsets per Sylow subgroup before sampling")
      ->capture_default_str();
  lemmas->add_option("--action-limit", options.action_limit,
                     "actions examined (0 = all); sampling needs --seed")
      ->capture_default_str();

  auto *self_test = app.add_subcommand("self-test", "worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kBadInput;
  }
  options.seed = seed;

  try {
    VerificationReport report;
    if (closure->parsed()) {
      report = cmd_closure(closure_group.load(), k, options);
    } else if (witness->parsed()) {
      report = cmd_witness(parse_orders(orders), options);
    } else if (thm2->parsed()) {
      report = cmd_verify_thm2(parse_orders(orders), max_points, options);
    } else if (product->parsed()) {
      report = cmd_verify_product(product_group.load(), k, options);
    } else if (lemmas->parsed()) {
      report = cmd_verify_lemmas(parse_orders(orders), max_points, options);
    } else if (self_test->parsed()) {
      report = cmd_self_test(options);
    }

    if (format == "json")
      std::cout << report.to_json().dump(2) << '\n';
    else
      std::cout << report.to_text();
    if (!report_path.empty()) {
      std::ofstream out(report_path);
      if (!out) throw InputError("cannot write report to " + report_path);
      out << report.to_json().dump(2) << '\n';
    }
    return report.passed() ? kPass : kCheckFailed;
  } catch (const CapExceeded &e) {
    std::cerr << "kclosure: cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const ParseError &e) {
    std::cerr << "kclosure: parse error at position " << e.position() << ": " << e.what()
              << '\n';
    return kBadInput;
  } catch (const InputError &e) {
    std::cerr << "kclosure: " << e.what() << '\n';
    return kBadInput;
  }
}
