#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace conelip::cli {

enum class Command { certify, verify, pathology, lattice_check };

struct RunConfig {
  Command command = Command::certify;
  std::string input;   ///< JSON document; optional for pathology and lattice-check
  std::string output;  ///< empty: standard output
  std::string csv;     ///< pathology / lattice-check table
  std::uint64_t seed = 1;
  std::size_t pairs = 10000;
  std::optional<double> tolerance;
  // pathology
  bool vesely = false;
  bool polynomial = false;
  int n = 6;
  int blocks = 30;
  double lambda = 0.5;
  double alpha = 1.25;
  std::size_t samples = 100000;
  // lattice-check
  int dim = 8;
};

/// Exit status: 0 when every check passes, 1 when a certificate is refused
/// or a check fails, 2 for unreadable or malformed input.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace conelip::cli
