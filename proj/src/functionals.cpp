#include "ltmc/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltmc/errors.hpp"
#include "ltmc/parallel.hpp"

namespace ltmc {

CumulativeFunctional accumulate_functional(const ChainPath& path, const Symbol& f) {
  if (!f.eval) throw std::invalid_argument("accumulate_functional: symbol has no evaluator");
  if (f.dim != path.dim)
    throw std::invalid_argument("accumulate_functional: dimension mismatch");
  CumulativeFunctional cf;
  cf.n = path.n;
  cf.steps = path.steps;
  cf.cumulative.resize(path.steps + 1);
  cf.cumulative[0] = 0.0;
  const double inv_n = 1.0 / static_cast<double>(path.n);
  Vec x(path.dim);
  for (std::size_t k = 0; k < path.steps; ++k) {
    const double* row = path.row(k);
    x.assign(row, row + path.dim);
    const double v = f.eval(x);
    if (!(v >= 0.0))
      throw invalid_run_error("accumulate_functional: symbol is negative on the path");
    cf.cumulative[k + 1] = cf.cumulative[k] + v * inv_n;
  }
  return cf;
}

namespace {

void check_window(const CumulativeFunctional& cf, double s, double t) {
  if (!(s >= 0.0) || !(t >= s))
    throw std::invalid_argument("functional window must satisfy 0 <= s <= t");
  if (t > cf.horizon() * (1.0 + 1e-12) + 1e-300)
    throw std::out_of_range("functional window ends past the stored horizon");
}

}  // namespace

double functional_value(const CumulativeFunctional& cf, double s, double t) {
  check_window(cf, s, t);
  const double n = static_cast<double>(cf.n);
  const std::size_t j = std::min(ceil_grid_index(n * s), cf.steps);
  const std::size_t k = std::min(ceil_grid_index(n * t), cf.steps);
  return cf.cumulative[k] - cf.cumulative[j];
}

double broken_line_value(const CumulativeFunctional& cf, double s, double t) {
  check_window(cf, s, t);
  const double n = static_cast<double>(cf.n);
  // first grid index at or past the argument, clamped into the last cell
  const std::size_t j =
      std::min(static_cast<std::size_t>(std::floor(n * s)) + 1, cf.steps);
  const std::size_t k =
      std::min(static_cast<std::size_t>(std::floor(n * t)) + 1, cf.steps);
  const double cell_j = cf.cumulative[j] - cf.cumulative[j - 1];
  const double cell_k = cf.cumulative[k] - cf.cumulative[k - 1];
  const double base = cf.cumulative[k - 1] - cf.cumulative[j - 1];
  const double s_frac = n * s - static_cast<double>(j - 1);
  const double t_frac = n * t - static_cast<double>(k - 1);
  return base - s_frac * cell_j + t_frac * cell_k;
}

FunctionalSample sample_broken_line(const DiffusionModel& model,
                                    const InnovationLaw& law, const Vec& x0,
                                    const Symbol& f, double s, double t,
                                    std::size_t n, std::size_t paths,
                                    std::uint64_t seed) {
  if (paths == 0) throw std::invalid_argument("sample_broken_line: need at least one path");
  if (!(s >= 0.0) || !(t > s))
    throw std::invalid_argument("sample_broken_line: need 0 <= s < t");
  std::vector<double> slots(paths);
  std::vector<unsigned char> status(paths, 0);  // 0 ok, 1 diverged, 2 bad symbol
  parallel_for(paths, [&](std::size_t p) {
    try {
      ChainPath path = simulate_chain(model, law, x0, t, n, seed, p);
      CumulativeFunctional cf = accumulate_functional(path, f);
      slots[p] = broken_line_value(cf, s, t);
    } catch (const diverged_path_error&) {
      status[p] = 1;
      slots[p] = std::numeric_limits<double>::quiet_NaN();
    } catch (const invalid_run_error&) {
      status[p] = 2;
    }
  });
  FunctionalSample out;
  out.paths_requested = paths;
  out.values.reserve(paths);
  for (std::size_t p = 0; p < paths; ++p) {
    if (status[p] == 2)
      throw invalid_run_error("sample_broken_line: symbol is negative on a sampled path");
    if (status[p] == 1) {
      ++out.diverged;
      continue;
    }
    out.values.push_back(slots[p]);
  }
  if (1000 * out.diverged > paths)
    throw invalid_run_error("sample_broken_line: more than 0.1% of paths diverged");
  return out;
}

double brownian_characteristic(const Measure& mu, const Vec& x, double s,
                               double t, double rel_tol) {
  if (!(s >= 0.0) || !(t > s))
    throw std::invalid_argument("brownian_characteristic: need 0 <= s < t");
  RadialKernel k;
  const std::size_t dim = mu.dim();
  k.eval = [s, t, dim](double r) {
    double v = heat_kernel_time_integral(r, t, dim);
    if (s > 0.0) v -= heat_kernel_time_integral(r, s, dim);
    return v;
  };
  k.negligible_radius = std::sqrt(100.0 * t);
  return integrate_kernel(mu, k, x, std::numeric_limits<double>::infinity(),
                          rel_tol);
}

double brownian_chain_characteristic(const Symbol& f, const Vec& x, double t,
                                     std::size_t n, double rel_tol) {
  if (!(t > 0.0))
    throw std::invalid_argument("brownian_chain_characteristic: t must be positive");
  if (n == 0)
    throw std::invalid_argument("brownian_chain_characteristic: n must be positive");
  const double nd = static_cast<double>(n);
  const std::size_t terms = ceil_grid_index(nd * t);
  if (!f.source) {
    // probe constancy cheaply; honest refusal beats a silently wrong number
    const Vec zero(f.dim, 0.0);
    const Vec probe(f.dim, 0.7);
    const double c = f.eval(zero);
    if (std::abs(f.eval(probe) - c) > 1e-12 * std::max(1.0, std::abs(c)))
      throw std::invalid_argument(
          "brownian_chain_characteristic: unsupported non-constant direct symbol");
    return c * static_cast<double>(terms) / nd;
  }
  if (f.level == 0)
    throw std::invalid_argument("brownian_chain_characteristic: source without a level");
  const Measure& mu = *f.source;
  const double depth = 1.0 / static_cast<double>(f.level);
  double total = 0.0;
  for (std::size_t k = 0; k < terms; ++k) {
    // the expectation of the smoothed symbol at the Brownian point at time
    // k/n collapses, by the semigroup property of the transition density, to
    // a heat-kernel time slab over [k/n, k/n + depth]
    const double lo = static_cast<double>(k) / nd;
    const double hi = lo + depth;
    RadialKernel slab;
    slab.eval = [lo, hi, &mu](double r) {
      double v = heat_kernel_time_integral(r, hi, mu.dim());
      if (lo > 0.0) v -= heat_kernel_time_integral(r, lo, mu.dim());
      return v;
    };
    slab.negligible_radius = std::sqrt(100.0 * hi);
    total += integrate_kernel(mu, slab, x,
                              std::numeric_limits<double>::infinity(), rel_tol);
  }
  return total * static_cast<double>(f.level) / nd;
}

std::vector<RegularityRow> regularity_profile(const Measure& mu, const Vec& x,
                                              const std::vector<double>& ts) {
  std::vector<RegularityRow> rows;
  for (double t : ts) {
    if (!(t > 0.0))
      throw std::invalid_argument("regularity_profile: horizons must be positive");
    rows.push_back({t, brownian_characteristic(mu, x, 0.0, t)});
  }
  return rows;
}

}  // namespace ltmc
