#pragma once
// Additive functionals of Euler chains: Riemann sums of a symbol along the
// chain, piecewise-linear (broken-line) interpolation in both time
// arguments, Monte Carlo sampling of the functional's law, and the matching
// Brownian-side expectations used as comparison targets.

#include <cstdint>
#include <vector>

#include "ltmc/diffusion.hpp"
#include "ltmc/measures.hpp"
#include "ltmc/symbols.hpp"

namespace ltmc {

// cumulative[j] holds (1/n) * sum over k < j of F(X(k/n)); differences of
// this array give the functional over any pair of grid times.
struct CumulativeFunctional {
  std::size_t n = 1;
  std::size_t steps = 0;
  std::vector<double> cumulative;  // size steps + 1
  double horizon() const {
    return static_cast<double>(steps) / static_cast<double>(n);
  }
};

// Evaluates the symbol along the path rows. Throws invalid_run_error if the
// symbol is negative anywhere on the path: the exponential-weight estimators
// downstream assume a killing rate, not a potential of arbitrary sign.
CumulativeFunctional accumulate_functional(const ChainPath& path, const Symbol& f);

// (1/n) * sum of F(X(k/n)) over grid points with s <= k/n < t
double functional_value(const CumulativeFunctional& cf, double s, double t);

// Interpolates the functional linearly inside the cells containing s and t:
// writing j and k for the first grid indices at or past s and t, the value is
// the functional over [(j-1)/n, (k-1)/n) MINUS the s-side fraction of cell j
// plus the t-side fraction of cell k. The subtraction is what makes the
// surface vanish on the diagonal and continuous across cell boundaries.
double broken_line_value(const CumulativeFunctional& cf, double s, double t);

struct FunctionalSample {
  std::vector<double> values;  // per surviving path, in path order
  std::size_t paths_requested = 0;
  std::size_t diverged = 0;
};

// Law of the broken-line functional over [s, t] across independent chains.
// Paths are simulated in parallel into per-path slots; the result does not
// depend on the thread count. Throws invalid_run_error when more than 0.1%
// of the paths diverge.
FunctionalSample sample_broken_line(const DiffusionModel& model,
                                    const InnovationLaw& law, const Vec& x0,
                                    const Symbol& f, double s, double t,
                                    std::size_t n, std::size_t paths,
                                    std::uint64_t seed);

// Expected occupation integral of the Brownian motion started at x: the
// measure integrated against the heat-kernel time integral over [s, t].
double brownian_characteristic(const Measure& mu, const Vec& x, double s,
                               double t, double rel_tol = 1e-10);

// Expected Riemann sum of the symbol along the Brownian grid skeleton of
// density n, summed term by term: each grid term reduces to a time slab of
// the heat kernel through the semigroup property of the transition density.
// Supports measure-backed smoothed symbols (matched or not) and constant
// symbols; refuses other direct symbols rather than guessing.
double brownian_chain_characteristic(const Symbol& f, const Vec& x, double t,
                                     std::size_t n, double rel_tol = 1e-10);

// Expected occupation integral over [0, t] for a list of shrinking horizons;
// the small-t behaviour of this profile is the regularity diagnostic for a
// measure at the probe point.
struct RegularityRow {
  double t = 0.0;
  double value = 0.0;
};
std::vector<RegularityRow> regularity_profile(const Measure& mu, const Vec& x,
                                              const std::vector<double>& ts);

}  // namespace ltmc
