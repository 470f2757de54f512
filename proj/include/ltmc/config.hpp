#pragma once
// INI-style experiment configuration: [section] headers, key = value lines,
// '#' comments, comma-separated vectors, and name(args) constructor forms.
// Parsing validates everything it can and collects every problem with its
// line number before failing, so one pass over the error list fixes a file.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltmc/diffusion.hpp"
#include "ltmc/measures.hpp"

namespace ltmc {

// Symbols are described structurally here and materialized by the runner,
// because a smoothed symbol needs the effective grid density, which command
// line flags may override after parsing.
enum class SymbolMode { none, smoothed, constant, gaussian_bump };

struct SymbolSpec {
  SymbolMode mode = SymbolMode::none;
  double value = 1.0;      // constant symbol level
  double amplitude = 1.0;  // gaussian bump peak
  double width = 1.0;      // gaussian bump width
  Vec center;              // gaussian bump center; empty means origin
};

enum class TerminalKind { one, gauss, ball };

struct TerminalSpec {
  TerminalKind kind = TerminalKind::one;
  double radius = 1.0;  // ball indicator radius
};

struct RunSettings {
  double t = 1.0;
  Vec x;  // start point; empty means the origin of the working dimension
  std::size_t n = 64;
  std::size_t paths = 10000;
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  std::vector<std::size_t> n_list = {4, 16, 64, 256};
  std::vector<double> deltas = {0.5, 0.25, 0.1, 0.05, 0.01, 0.001};
  std::vector<double> radii;  // mass-scaling radii; empty skips that table
  std::size_t substeps = 128;
  bool antithetic = false;
  TerminalSpec terminal;
};

struct ExperimentConfig {
  bool has_diffusion = false;
  DiffusionModel model;  // valid only when has_diffusion
  InnovationLaw law = InnovationLaw::standard_gaussian();
  std::optional<Measure> measure;
  SymbolSpec symbol;
  RunSettings run;
};

// Parses and validates; throws config_error carrying one message per issue,
// each prefixed with the offending line number.
ExperimentConfig parse_config(const std::string& text);

// Sections required per command; throws config_error naming the gaps.
void require_for_command(const ExperimentConfig& cfg, const std::string& command);

}  // namespace ltmc
