#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "report.hpp"

int main(int argc, char** argv) {
  using snfc::cli::JobSpec;
  CLI::App app{"Secure network function computation: bounds, constructions and verification", "snfc"};
  app.require_subcommand(1);
  JobSpec job;

  auto common = [&job](CLI::App* sub) {
    sub->add_option("--network", job.network, "Network file");
    sub->add_option("--target-matrix", job.target_matrix, "Target matrix T (s x k)");
    sub->add_option("--security-matrix", job.security_matrix, "Security matrix Upsilon");
    sub->add_option("--target-table", job.target_table, "Tabular target function");
    sub->add_option("--security-table", job.security_table, "Tabular security function");
    sub->add_option("--code", job.code, "Code document (linear or tabular JSON)");
    sub->add_option("--field", job.field, "Field order, as p, p^m or q");
    sub->add_option("--level", job.level, "Security level r")->each([&job](const std::string&) { job.level_given = true; });
    sub->add_option("--rate", job.rate, "Base-code rate R (default C_min)");
    sub->add_option("--seed", job.seed, "Random seed");
    sub->add_option("--limit-edges", job.limit_edges, "Edge cap for subset enumeration");
    sub->add_option("--limit-nodes", job.limit_nodes, "Node cap for the cut-lattice walk");
    sub->add_option("--edge-alphabet", job.edge_alphabet, "Edge alphabet size |B| for tabular bounds");
    sub->add_option("--retry-budget", job.retry_budget, "Base-code attempts");
    sub->add_option("--search-budget", job.search_budget, "Random transform trials after the sequential scheme fails (0 disables)");
    sub->add_option("--mi-budget", job.mi_budget, "Largest enumeration for exhaustive checks");
    sub->add_option("--out", job.out, "Write the JSON document here instead of stdout");
  };
  for (const char* name : {"bound", "construct", "verify", "oracle", "report"}) {
    static const std::map<std::string, std::string> help{
        {"bound", "Upper bounds on the secure computing capacity"},
        {"construct", "Build a secure linear code"},
        {"verify", "Check computability and security of a code"},
        {"oracle", "Brute-force bound values for cross-checking"},
        {"report", "Bound, construction and verification in one run"}};
    auto* sub = app.add_subcommand(name, help.at(name));
    common(sub);
    sub->callback([&job, name] { job.command = name; });
  }

  snfc::cli::JobResult result;
  try {
    app.parse(argc, argv);
    result = snfc::cli::run(job);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    result = snfc::cli::usage_error(e.what());
  }

  if (!job.out.empty() && result.exit_code == 0) {
    std::ofstream out(job.out);
    if (!out) {
      std::cerr << "cannot write '" << job.out << "'\n";
      return 1;
    }
    out << result.json;
  } else {
    (result.exit_code == 0 ? std::cout : std::cerr) << result.json;
  }
  return result.exit_code;
}
