#include "ltmc/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ltmc/errors.hpp"
#include "ltmc/parallel.hpp"
#include "ltmc/stats.hpp"

namespace ltmc {

namespace {

// absolute floor in the martingale ratio; covers exactly-coupled constant
// profiles where both mean and standard error are pure rounding dust
constexpr double kDegenerateFloor = 1e-12;

// rounding allowance added to the envelope check: a constant coefficient has
// a zero envelope, but the two legs still differ by accumulated rounding
constexpr double kRoundingFloor = 1e-18;

void require_scalar_driftless(const CouplingConfig& cfg, const char* who) {
  if (cfg.model.dim != 1) {
    throw std::invalid_argument(std::string(who) +
                                ": analysis profile is one-dimensional");
  }
  // probe a handful of points; the declared profile must have zero drift
  for (double p : {0.0, 1.0, -1.0, 2.7, cfg.x0[0]}) {
    const Vec a = cfg.model.drift(Vec{p});
    if (a.size() != 1 || a[0] != 0.0) {
      throw std::invalid_argument(std::string(who) +
                                  ": requires zero drift");
    }
  }
}

void check_finite(const Vec& x, std::size_t step, const char* leg) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "non-finite %s state after step %zu", leg,
                    step);
      throw diverged_path_error(step, buf);
    }
  }
}

// Runs body(p) over paths with per-slot status bytes; rethrows the first
// failure sequentially so the outcome is thread-count independent.
template <typename Body>
void run_paths(std::size_t paths, const Body& body) {
  std::vector<unsigned char> status(paths, 0);
  std::vector<std::size_t> bad_step(paths, 0);
  parallel_for(paths, [&](std::size_t p) {
    try {
      body(p);
    } catch (const diverged_path_error& e) {
      status[p] = 1;
      bad_step[p] = e.step();
    } catch (const std::exception&) {
      status[p] = 2;
    }
  });
  for (std::size_t p = 0; p < paths; ++p) {
    if (status[p] == 1) {
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "coupled path %zu diverged after step %zu", p, bad_step[p]);
      throw diverged_path_error(bad_step[p], buf);
    }
    if (status[p] == 2)
      throw invalid_run_error("coupled path evaluation failed");
  }
}

}  // namespace

void validate_coupling_config(const CouplingConfig& cfg) {
  if (cfg.model.dim == 0 || !cfg.model.drift || !cfg.model.diffusion)
    throw std::invalid_argument("coupling: incomplete diffusion model");
  if (cfg.x0.size() != cfg.model.dim)
    throw std::invalid_argument("coupling: start point dimension mismatch");
  if (cfg.n == 0) throw std::invalid_argument("coupling: n must be positive");
  if (!(cfg.t_max > 0.0))
    throw std::invalid_argument("coupling: horizon must be positive");
  if (cfg.paths == 0)
    throw std::invalid_argument("coupling: need at least one path");
  if (cfg.substeps < 100)
    throw std::invalid_argument("coupling: substep ratio must be at least 100");
  if (cfg.block_size != 1)
    throw std::invalid_argument(
        "coupling: only block size 1 (shared-driver Gaussian pairing) is "
        "implemented");
  if (cfg.wasserstein_eps != 0.0)
    throw std::invalid_argument(
        "coupling: nonzero pairing slack is not implemented; the shared "
        "driver couples exactly");
}

CoupledPair coupled_paths(const CouplingConfig& cfg, std::size_t path_index) {
  validate_coupling_config(cfg);
  const std::size_t d = cfg.model.dim;
  const std::size_t steps =
      ceil_grid_index(static_cast<double>(cfg.n) * cfg.t_max);
  const double dt_fine =
      1.0 / (static_cast<double>(cfg.n) * static_cast<double>(cfg.substeps));
  const double root_fine = std::sqrt(dt_fine);
  const double root_n = std::sqrt(static_cast<double>(cfg.n));

  CoupledPair pair;
  for (ChainPath* leg : {&pair.chain, &pair.diffusion}) {
    leg->n = cfg.n;
    leg->steps = steps;
    leg->dim = d;
    leg->values.resize((steps + 1) * d);
    std::copy(cfg.x0.begin(), cfg.x0.end(), leg->values.begin());
  }

  Vec x = cfg.x0;  // chain leg
  Vec y = cfg.x0;  // fine diffusion leg
  Vec dw(d), sum_dw(d), xi(d), y_next(d);
  for (std::size_t k = 1; k <= steps; ++k) {
    RngStream rng(cfg.seed, path_index, k);
    std::fill(sum_dw.begin(), sum_dw.end(), 0.0);
    for (std::size_t r = 0; r < cfg.substeps; ++r) {
      for (std::size_t j = 0; j < d; ++j) {
        dw[j] = rng.gaussian() * root_fine;
        sum_dw[j] += dw[j];
      }
      const Vec a = cfg.model.drift(y);
      const Mat b = cfg.model.diffusion(y);
      for (std::size_t i = 0; i < d; ++i) {
        double diff = 0.0;
        for (std::size_t j = 0; j < d; ++j) diff += b(i, j) * dw[j];
        y_next[i] = y[i] + a[i] * dt_fine + diff;
      }
      y = y_next;
    }
    check_finite(y, k, "diffusion-leg");
    for (std::size_t j = 0; j < d; ++j) xi[j] = root_n * sum_dw[j];
    x = euler_step(cfg.model, x, xi, cfg.n);
    check_finite(x, k, "chain-leg");
    std::copy(x.begin(), x.end(), pair.chain.values.begin() + k * d);
    std::copy(y.begin(), y.end(), pair.diffusion.values.begin() + k * d);
  }
  return pair;
}

double coupling_envelope(double lipschitz, double coeff_bound, double t_max,
                         std::size_t n) {
  if (!(lipschitz >= 0.0) || !(coeff_bound > 0.0) || !(t_max > 0.0) || n == 0)
    throw std::invalid_argument("coupling_envelope: bad parameters");
  const double l2 = lipschitz * lipschitz;
  return 4.0 * l2 * coeff_bound * coeff_bound * t_max /
         static_cast<double>(n) * std::exp(4.0 * l2 * t_max);
}

MartingaleReport martingale_check(const CouplingConfig& cfg,
                                  std::size_t paths) {
  validate_coupling_config(cfg);
  require_scalar_driftless(cfg, "martingale_check");
  if (paths < 2)
    throw std::invalid_argument("martingale_check: need at least two paths");

  const std::size_t steps =
      ceil_grid_index(static_cast<double>(cfg.n) * cfg.t_max);
  std::vector<double> increments(paths * steps, 0.0);
  std::vector<double> final_gap(paths, 0.0);
  run_paths(paths, [&](std::size_t p) {
    const CoupledPair pair = coupled_paths(cfg, p);
    double prev = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double gap = pair.chain.row(k)[0] - pair.diffusion.row(k)[0];
      increments[p * steps + (k - 1)] = gap - prev;
      prev = gap;
    }
    final_gap[p] = prev;
  });

  MartingaleReport rep;
  rep.paths = paths;
  rep.step_mean.resize(steps);
  rep.step_std_error.resize(steps);
  std::vector<double> column(paths);
  bool ok = true;
  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t p = 0; p < paths; ++p)
      column[p] = increments[p * steps + k];
    const SampleSummary s = summarize(column);
    rep.step_mean[k] = s.mean;
    rep.step_std_error[k] = s.std_error;
    const double ratio =
        std::abs(s.mean) / (4.0 * s.std_error + kDegenerateFloor);
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_step = k + 1;
    }
    if (ratio > 1.0) ok = false;
  }
  const SampleSummary fin = summarize(final_gap);
  rep.final_mean = fin.mean;
  rep.final_std_error = fin.std_error;
  if (std::abs(fin.mean) > 4.0 * fin.std_error + kDegenerateFloor) ok = false;
  rep.ok = ok;
  return rep;
}

CouplingErrorReport coupling_error_report(const CouplingConfig& cfg,
                                          std::size_t paths) {
  validate_coupling_config(cfg);
  require_scalar_driftless(cfg, "coupling_error_report");
  if (paths < 2)
    throw std::invalid_argument(
        "coupling_error_report: need at least two paths");

  const std::size_t steps =
      ceil_grid_index(static_cast<double>(cfg.n) * cfg.t_max);
  std::vector<double> max_sq(paths, 0.0);
  std::vector<double> final_sq(paths, 0.0);
  run_paths(paths, [&](std::size_t p) {
    const CoupledPair pair = coupled_paths(cfg, p);
    double worst = 0.0;
    double last = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double gap = pair.chain.row(k)[0] - pair.diffusion.row(k)[0];
      last = gap * gap;
      worst = std::max(worst, last);
    }
    max_sq[p] = worst;
    final_sq[p] = last;
  });

  CouplingErrorReport rep;
  rep.n = cfg.n;
  rep.t_max = cfg.t_max;
  rep.lipschitz = cfg.model.lipschitz_const;
  rep.coeff_bound = cfg.model.sup_bound;
  rep.paths = paths;
  rep.substeps = cfg.substeps;
  const SampleSummary sm = summarize(max_sq);
  const SampleSummary sf = summarize(final_sq);
  rep.empirical_max_sq = sm.mean;
  rep.max_sq_std_error = sm.std_error;
  rep.empirical_final_sq = sf.mean;
  rep.final_sq_std_error = sf.std_error;
  rep.envelope =
      coupling_envelope(rep.lipschitz, rep.coeff_bound, cfg.t_max, cfg.n);
  rep.fine_leg_envelope = coupling_envelope(rep.lipschitz, rep.coeff_bound,
                                            cfg.t_max, cfg.n * cfg.substeps);
  rep.gammas = {0.1, 0.3, 1.0};
  bool ok = rep.empirical_max_sq <= rep.envelope + kRoundingFloor;
  for (double g : rep.gammas) {
    std::size_t hits = 0;
    for (double v : max_sq)
      if (v >= g * g) ++hits;
    const double prob =
        static_cast<double>(hits) / static_cast<double>(paths);
    rep.empirical_prob.push_back(prob);
    rep.chebyshev_bound.push_back(rep.envelope / (g * g));
    if (prob > rep.chebyshev_bound.back()) ok = false;
  }
  rep.ok = ok;
  return rep;
}

}  // namespace ltmc
