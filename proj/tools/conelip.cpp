#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "conelip/cli.hpp"

namespace {

void add_common(CLI::App* sub, conelip::cli::RunConfig& cfg, double& tol) {
  sub->add_option("--input,-i", cfg.input, "JSON input document");
  sub->add_option("--output,-o", cfg.output, "report path (default: stdout)");
  sub->add_option("--seed", cfg.seed, "random seed (default: $CONELIP_SEED or 1)");
  sub->add_option("--pairs", cfg.pairs, "oracle pairs / sample count")->check(CLI::PositiveNumber);
  sub->add_option("--tolerance", tol, "tolerance override");
}

}  // namespace

int main(int argc, char** argv) {
  conelip::cli::RunConfig cfg;
  if (const char* env = std::getenv("CONELIP_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CONELIP_SEED is not an unsigned integer\n";
      return 2;
    }
  }
  double tol = -1.0;

  CLI::App app{"Lipschitz certificates for convex maps into ordered vector spaces"};
  app.require_subcommand(1);

  auto* certify = app.add_subcommand("certify", "issue a Lipschitz certificate and cross-check it");
  add_common(certify, cfg, tol);

  auto* verify = app.add_subcommand("verify", "run the convexity invariant suite on maps");
  add_common(verify, cfg, tol);

  auto* pathology = app.add_subcommand("pathology", "reproduce the counterexample constructions");
  add_common(pathology, cfg, tol);
  pathology->add_flag("--vesely", cfg.vesely, "block-cone construction, steps 1-3");
  pathology->add_flag("--polynomial", cfg.polynomial, "discontinuous functional on polynomials");
  pathology->add_option("--n", cfg.n, "polynomial degree, or n_max for the block construction");
  pathology->add_option("--blocks", cfg.blocks, "number of blocks (1..30)");
  pathology->add_option("--lambda", cfg.lambda);
  pathology->add_option("--alpha", cfg.alpha);
  pathology->add_option("--samples", cfg.samples, "grid size for the sampled polynomial norm");
  pathology->add_option("--csv", cfg.csv, "CSV table path");

  auto* lattice = app.add_subcommand("lattice-check", "residual table of the lattice identities");
  add_common(lattice, cfg, tol);
  lattice->add_option("--dim", cfg.dim, "dimension of random samples");
  lattice->add_option("--csv", cfg.csv, "CSV table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (tol >= 0.0) cfg.tolerance = tol;
  if (certify->parsed()) cfg.command = conelip::cli::Command::certify;
  if (verify->parsed()) cfg.command = conelip::cli::Command::verify;
  if (pathology->parsed()) cfg.command = conelip::cli::Command::pathology;
  if (lattice->parsed()) cfg.command = conelip::cli::Command::lattice_check;
  return conelip::cli::run(cfg, std::cout, std::cerr);
}
