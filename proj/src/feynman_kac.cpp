#include "ltmc/feynman_kac.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltmc/errors.hpp"
#include "ltmc/functionals.hpp"
#include "ltmc/parallel.hpp"
#include "ltmc/rng.hpp"
#include "ltmc/stats.hpp"

namespace ltmc {

namespace {

void validate_query(const FeynmanKacQuery& q) {
  if (q.model.dim == 0 || !q.model.drift || !q.model.diffusion)
    throw std::invalid_argument("feynman_kac_estimate: incomplete model");
  if (!q.symbol.eval || q.symbol.dim != q.model.dim)
    throw std::invalid_argument("feynman_kac_estimate: symbol missing or wrong dimension");
  if (!q.terminal) throw std::invalid_argument("feynman_kac_estimate: no terminal function");
  if (q.x0.size() != q.model.dim)
    throw std::invalid_argument("feynman_kac_estimate: start point dimension mismatch");
  if (!(q.t > 0.0)) throw std::invalid_argument("feynman_kac_estimate: t must be positive");
  if (q.n == 0 || q.paths == 0)
    throw std::invalid_argument("feynman_kac_estimate: n and paths must be positive");
  if (q.antithetic && q.paths % 2 != 0)
    throw std::invalid_argument("feynman_kac_estimate: antithetic pairing needs an even path count");
}

}  // namespace

FeynmanKacEstimate feynman_kac_estimate(const FeynmanKacQuery& q) {
  validate_query(q);
  std::vector<double> slots(q.paths);
  std::vector<unsigned char> status(q.paths, 0);  // 0 ok, 1 diverged, 2 bad symbol
  parallel_for(q.paths, [&](std::size_t p) {
    const std::uint64_t path_index = q.antithetic ? p / 2 : p;
    const bool mirror = q.antithetic && (p % 2 == 1);
    try {
      ChainPath path = simulate_chain(q.model, q.law, q.x0, q.t, q.n, q.seed,
                                      path_index, mirror);
      CumulativeFunctional cf = accumulate_functional(path, q.symbol);
      const double phi = functional_value(cf, 0.0, q.t);
      slots[p] = std::exp(-phi) * q.terminal(path_value(path, q.t));
    } catch (const diverged_path_error&) {
      status[p] = 1;
      slots[p] = std::numeric_limits<double>::quiet_NaN();
    } catch (const invalid_run_error&) {
      status[p] = 2;
    }
  });

  FeynmanKacEstimate out;
  std::vector<double> values;
  values.reserve(q.paths);
  if (q.antithetic) {
    for (std::size_t i = 0; i < q.paths; i += 2) {
      if (status[i] == 2 || status[i + 1] == 2)
        throw invalid_run_error("feynman_kac_estimate: symbol is negative on a sampled path");
      if (status[i] == 1 || status[i + 1] == 1) {
        out.diverged += (status[i] == 1) + (status[i + 1] == 1);
        continue;
      }
      values.push_back(0.5 * (slots[i] + slots[i + 1]));
    }
  } else {
    for (std::size_t p = 0; p < q.paths; ++p) {
      if (status[p] == 2)
        throw invalid_run_error("feynman_kac_estimate: symbol is negative on a sampled path");
      if (status[p] == 1) {
        ++out.diverged;
        continue;
      }
      values.push_back(slots[p]);
    }
  }
  if (1000 * out.diverged > q.paths)
    throw invalid_run_error("feynman_kac_estimate: more than 0.1% of paths diverged");
  if (values.empty())
    throw invalid_run_error("feynman_kac_estimate: no surviving paths");
  SampleSummary s = summarize(values);
  out.estimate = s.mean;
  out.std_error = s.std_error;
  out.paths_used = values.size();
  return out;
}

FeynmanKacEstimate killed_transition_estimate(
    FeynmanKacQuery q, const std::function<bool(const Vec&)>& region) {
  if (!region) throw std::invalid_argument("killed_transition_estimate: no region");
  q.terminal = [region](const Vec& x) { return region(x) ? 1.0 : 0.0; };
  return feynman_kac_estimate(q);
}

std::vector<ConvergenceRow> convergence_study(const FeynmanKacQuery& base,
                                              const std::vector<std::size_t>& n_list,
                                              std::size_t replicates) {
  if (n_list.empty())
    throw std::invalid_argument("convergence_study: no grid densities");
  if (replicates == 0)
    throw std::invalid_argument("convergence_study: need at least one replicate");
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : n_list) {
    ConvergenceRow row;
    row.n = n;
    for (std::size_t r = 0; r < replicates; ++r) {
      FeynmanKacQuery q = base;
      q.n = n;
      q.seed = mix64(base.seed + 0x9e3779b97f4a7c15ULL * (r + 1));
      row.estimates.push_back(feynman_kac_estimate(q).estimate);
    }
    SampleSummary s = summarize(row.estimates);
    row.mean = s.mean;
    row.spread = replicates > 1 ? s.std_error : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ltmc
