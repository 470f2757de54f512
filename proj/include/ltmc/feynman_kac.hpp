#pragma once
// Exponential-weight estimators along Euler chains: Monte Carlo values of
// E[ exp(-functional over [0,t]) * g(chain at t) ], the discrete counterpart
// of a killed/weighted semigroup applied to the terminal function g.

#include <cstdint>
#include <functional>
#include <vector>

#include "ltmc/diffusion.hpp"
#include "ltmc/symbols.hpp"

namespace ltmc {

struct FeynmanKacQuery {
  DiffusionModel model;
  InnovationLaw law = InnovationLaw::standard_gaussian();
  Symbol symbol;
  std::function<double(const Vec&)> terminal;  // g; evaluated at the chain value at t
  Vec x0;
  double t = 1.0;
  std::size_t n = 16;
  std::size_t paths = 1000;
  std::uint64_t seed = 1;
  // pair 2i with the innovation-mirrored 2i+1 and average within pairs;
  // the standard error is then computed across pair averages
  bool antithetic = false;
};

struct FeynmanKacEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t paths_used = 0;  // surviving paths (or pairs when antithetic)
  std::size_t diverged = 0;
};

// Parallel over paths into per-path slots, sequential reduction: the result
// is independent of the thread count. Throws invalid_run_error when more
// than 0.1% of paths diverge (an antithetic pair is dropped whole).
FeynmanKacEstimate feynman_kac_estimate(const FeynmanKacQuery& q);

// Same estimator with the terminal replaced by the region indicator:
// the weighted probability of ending inside the region.
FeynmanKacEstimate killed_transition_estimate(
    FeynmanKacQuery q, const std::function<bool(const Vec&)>& region);

// Repeats the estimate across grid densities with replicate seeds derived
// deterministically from the base seed.
struct ConvergenceRow {
  std::size_t n = 0;
  double mean = 0.0;
  double spread = 0.0;  // standard error across replicates
  std::vector<double> estimates;
};
std::vector<ConvergenceRow> convergence_study(const FeynmanKacQuery& base,
                                              const std::vector<std::size_t>& n_list,
                                              std::size_t replicates);

}  // namespace ltmc
