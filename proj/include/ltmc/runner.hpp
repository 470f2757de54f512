#pragma once
// Command orchestration: materialize the pieces an ExperimentConfig
// describes, run one named experiment, and emit CSV artifacts plus summary
// lines. All numeric CSV content flows through the fixed 17-digit float
// format, and every module reduction is slot-ordered, so identical
// (config, seed, flags) produce byte-identical files at any thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltmc/config.hpp"

namespace ltmc {

// command-line overrides applied on top of the [run] section
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<std::size_t> n;
  std::optional<double> t;
};

struct RunOutcome {
  std::vector<std::string> artifacts;  // files written, in creation order
  std::vector<std::string> lines;      // human-readable summary lines
  bool accepted = true;  // false only when an acceptance criterion failed
};

// command is one of: simulate, characteristics, estimate-u, check-measure,
// convergence, couple, acceptance. Throws config_error for section gaps,
// std::invalid_argument / invalid_run_error / diverged_path_error as the
// underlying modules do.
RunOutcome run_command(const std::string& command, const ExperimentConfig& cfg,
                       const RunOverrides& overrides,
                       const std::string& out_dir);

}  // namespace ltmc
