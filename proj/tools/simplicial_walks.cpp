// Command-line front end: simplicial_walks <command> --complex FILE [options]

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "simplicial/report.hpp"

int main(int argc, char** argv) {
  using simplicial::OutputFormat;

  CLI::App app{"Random walks, Hodge Laplacians and signed graphs on simplicial complexes"};
  simplicial::Request req;
  std::string format = "json";
  int dim = -1;
  std::string start;

  app.add_option("command", req.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(simplicial::known_commands()));
  app.add_option("--complex", req.complex_path, "Facet file")->required();
  app.add_option("--dim", dim, "Dimension d (command specific default)")->check(CLI::NonNegativeNumber);
  app.add_option("-p,--laziness", req.laziness, "Laziness p in [0,1]")->check(CLI::Range(0.0, 1.0));
  app.add_option("--steps", req.steps, "Number of steps T");
  app.add_option("--seed", req.seed, "Monte Carlo seed");
  app.add_option("--chains", req.chains, "Monte Carlo chains")->check(CLI::PositiveNumber);
  app.add_option("--workers", req.workers, "Monte Carlo threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--weights", req.weights, "Weight function")
      ->check(CLI::IsMember({"one", "normalized", "recip-deg"}));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--start", start, "Start state, e.g. +[0,1] or [2]");
  app.add_option("--walk", req.walk, "Walk for converge/montecarlo")
      ->check(CLI::IsMember({"up", "down", "graph", "vertex"}));

  CLI11_PARSE(app, argc, argv);

  if (dim >= 0) req.dim = dim;
  if (!start.empty()) req.start = start;
  static const std::map<std::string, OutputFormat> formats = {
      {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"text", OutputFormat::text}};
  req.format = formats.at(format);

  const simplicial::Outcome outcome = simplicial::run(req);
  std::cout << simplicial::render(outcome, req);
  if (!outcome.diagnostic.empty()) std::cerr << "error: " << outcome.diagnostic << '\n';
  return outcome.exit_code;
}
