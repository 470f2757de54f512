#include "ltmc/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "ltmc/acceptance.hpp"
#include "ltmc/coupling.hpp"
#include "ltmc/csv.hpp"
#include "ltmc/errors.hpp"
#include "ltmc/feynman_kac.hpp"
#include "ltmc/functionals.hpp"
#include "ltmc/stats.hpp"
#include "ltmc/symbols.hpp"

namespace ltmc {

namespace {

std::string note(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

struct Effective {
  double t;
  std::size_t n;
  std::size_t paths;
  std::uint64_t seed;
};

Effective effective(const RunSettings& run, const RunOverrides& ov) {
  return {ov.t.value_or(run.t), ov.n.value_or(run.n),
          ov.paths.value_or(run.paths), ov.seed.value_or(run.seed)};
}

Vec start_point(const Vec& x, std::size_t dim, const char* who) {
  if (x.empty()) return Vec(dim, 0.0);
  if (x.size() != dim)
    throw std::invalid_argument(std::string(who) +
                                ": [run] x does not match the working "
                                "dimension " +
                                std::to_string(dim));
  return x;
}

std::string artifact_path(const std::string& out_dir, const char* name) {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / name).string();
}

Symbol materialize_symbol(const ExperimentConfig& cfg, std::size_t dim,
                          std::size_t n) {
  switch (cfg.symbol.mode) {
    case SymbolMode::smoothed:
      return smoothed_symbol(*cfg.measure, n);
    case SymbolMode::constant:
      return constant_symbol(dim, cfg.symbol.value);
    case SymbolMode::gaussian_bump: {
      Vec center = cfg.symbol.center.empty() ? Vec(dim, 0.0) : cfg.symbol.center;
      if (center.size() != dim)
        throw std::invalid_argument(
            "symbol center does not match the working dimension");
      return gaussian_bump_symbol(dim, cfg.symbol.amplitude, cfg.symbol.width,
                                  std::move(center));
    }
    case SymbolMode::none:
      break;
  }
  throw std::invalid_argument("no symbol configured");
}

std::function<double(const Vec&)> materialize_terminal(const TerminalSpec& ts) {
  switch (ts.kind) {
    case TerminalKind::one:
      return [](const Vec&) { return 1.0; };
    case TerminalKind::gauss:
      return [](const Vec& y) { return std::exp(-0.5 * norm2_sq(y)); };
    case TerminalKind::ball: {
      const double r = ts.radius;
      return [r](const Vec& y) { return norm2(y) <= r ? 1.0 : 0.0; };
    }
  }
  throw std::invalid_argument("unknown terminal kind");
}

RunOutcome run_simulate(const ExperimentConfig& cfg, const RunOverrides& ov,
                        const std::string& out_dir) {
  RunOutcome rc;
  const Effective eff = effective(cfg.run, ov);
  const std::size_t dim = cfg.model.dim;
  const Vec x0 = start_point(cfg.run.x, dim, "simulate");

  std::vector<Vec> probes = {x0, Vec(dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) {
    Vec p = x0;
    p[i] += 1.0;
    probes.push_back(p);
    p[i] -= 2.0;
    probes.push_back(p);
  }
  const CoefficientReport coef = validate_coefficients(cfg.model, probes);
  rc.lines.push_back(std::string("coefficient checks: ellipticity ") +
                     (coef.ellipticity_ok ? "ok" : "FAILED") + ", lipschitz " +
                     (coef.lipschitz_ok ? "ok" : "FAILED") + ", bound " +
                     (coef.bound_ok ? "ok" : "FAILED"));
  const InnovationReport inn =
      validate_innovation(cfg.law, dim, 20000, eff.seed);
  rc.lines.push_back(std::string("innovation checks: mean ") +
                     (inn.mean_ok ? "ok" : "FAILED") + ", covariance " +
                     (inn.covariance_ok ? "ok" : "FAILED") +
                     ", third moment " +
                     (inn.third_moment_finite ? "finite" : "FAILED"));

  const std::string path = artifact_path(out_dir, "paths.csv");
  CsvWriter csv(path);
  std::vector<std::string> cols = {"path", "k", "t"};
  for (std::size_t i = 0; i < dim; ++i) cols.push_back("x" + std::to_string(i));
  csv.header(cols);
  std::size_t steps = 0;
  for (std::size_t p = 0; p < eff.paths; ++p) {
    const ChainPath chain =
        simulate_chain(cfg.model, cfg.law, x0, eff.t, eff.n, eff.seed, p);
    steps = chain.steps;
    for (std::size_t k = 0; k <= chain.steps; ++k) {
      std::vector<double> row = {static_cast<double>(p),
                                 static_cast<double>(k),
                                 static_cast<double>(k) / static_cast<double>(eff.n)};
      for (std::size_t i = 0; i < dim; ++i) row.push_back(chain.row(k)[i]);
      csv.row(row);
    }
  }
  rc.artifacts.push_back(path);
  rc.lines.push_back(note("simulated %.0f paths of %.0f steps",
                          static_cast<double>(eff.paths),
                          static_cast<double>(steps)));
  return rc;
}

RunOutcome run_characteristics(const ExperimentConfig& cfg,
                               const RunOverrides& ov,
                               const std::string& out_dir) {
  RunOutcome rc;
  const Effective eff = effective(cfg.run, ov);
  const Measure& mu = *cfg.measure;
  const std::size_t dim = mu.dim();
  const Vec x = start_point(cfg.run.x, dim, "characteristics");

  std::vector<std::string> cols = {"n", "t"};
  for (std::size_t i = 0; i < dim; ++i) cols.push_back("x" + std::to_string(i));
  cols.insert(cols.end(), {"value", "std_error", "paths", "diverged_count"});
  auto fixed = [&](double n_col, double value, double se, double paths,
                   double diverged) {
    std::vector<double> row = {n_col, eff.t};
    for (double xi : x) row.push_back(xi);
    row.insert(row.end(), {value, se, paths, diverged});
    return row;
  };

  // diffusion-side expectation: the time-integrated heat kernel against mu
  const double exact = brownian_characteristic(mu, x, 0.0, eff.t);
  {
    const std::string path = artifact_path(out_dir, "characteristics_exact.csv");
    CsvWriter csv(path);
    csv.header(cols);
    csv.row(fixed(0.0, exact, 0.0, 0.0, 0.0));
    rc.artifacts.push_back(path);
  }
  rc.lines.push_back(note("diffusion-side value %.10g at t = %.6g", exact, eff.t));

  // chain-side expectations across the configured density ladder
  {
    const std::string path = artifact_path(out_dir, "characteristics_chain.csv");
    CsvWriter csv(path);
    csv.header(cols);
    for (std::size_t n : cfg.run.n_list) {
      const Symbol f = smoothed_symbol(mu, n);
      const double v = brownian_chain_characteristic(f, x, eff.t, n);
      csv.row(fixed(static_cast<double>(n), v, 0.0, 0.0, 0.0));
      rc.lines.push_back(note("chain n = %.0f: value %.10g (gap %.3g)",
                              static_cast<double>(n), v, std::abs(v - exact)));
    }
    rc.artifacts.push_back(path);
  }

  // Monte Carlo along simulated chains at the working density
  {
    const Symbol f = smoothed_symbol(mu, eff.n);
    const FunctionalSample sample = sample_broken_line(
        DiffusionModel::brownian(dim), InnovationLaw::standard_gaussian(), x, f,
        0.0, eff.t, eff.n, eff.paths, eff.seed);
    const SampleSummary s = summarize(sample.values);
    const double chain_ref = brownian_chain_characteristic(f, x, eff.t, eff.n);
    const std::string path = artifact_path(out_dir, "characteristics_mc.csv");
    CsvWriter csv(path);
    csv.header(cols);
    csv.row(fixed(static_cast<double>(eff.n), s.mean, s.std_error,
                  static_cast<double>(sample.values.size()),
                  static_cast<double>(sample.diverged)));
    rc.artifacts.push_back(path);
    rc.lines.push_back(note("monte carlo mean %.10g +- %.3g", s.mean,
                            s.std_error));
    if (s.std_error > 0.0)
      rc.lines.push_back(note("gap to chain expectation: %.3g standard errors",
                              std::abs(s.mean - chain_ref) / s.std_error));
  }
  return rc;
}

RunOutcome run_estimate(const ExperimentConfig& cfg, const RunOverrides& ov,
                        const std::string& out_dir) {
  RunOutcome rc;
  const Effective eff = effective(cfg.run, ov);
  const std::size_t dim = cfg.model.dim;

  FeynmanKacQuery q;
  q.model = cfg.model;
  q.law = cfg.law;
  q.symbol = materialize_symbol(cfg, dim, eff.n);
  q.terminal = materialize_terminal(cfg.run.terminal);
  q.x0 = start_point(cfg.run.x, dim, "estimate-u");
  q.t = eff.t;
  q.n = eff.n;
  q.paths = eff.paths;
  q.seed = eff.seed;
  q.antithetic = cfg.run.antithetic;

  const std::string path = artifact_path(out_dir, "estimate_u.csv");
  CsvWriter csv(path);
  std::vector<std::string> cols = {"n", "t"};
  for (std::size_t i = 0; i < dim; ++i) cols.push_back("x" + std::to_string(i));
  cols.insert(cols.end(), {"estimate", "std_error", "paths", "replicate"});
  csv.header(cols);
  for (std::size_t r = 0; r < cfg.run.replicates; ++r) {
    FeynmanKacQuery rep = q;
    if (cfg.run.replicates > 1)
      rep.seed = mix64(q.seed + 0x9e3779b97f4a7c15ULL * (r + 1));
    const FeynmanKacEstimate est = feynman_kac_estimate(rep);
    std::vector<double> row = {static_cast<double>(eff.n), eff.t};
    for (double xi : q.x0) row.push_back(xi);
    row.insert(row.end(),
               {est.estimate, est.std_error,
                static_cast<double>(est.paths_used), static_cast<double>(r + 1)});
    csv.row(row);
    rc.lines.push_back(note("replicate %.0f: estimate %.10g +- %.3g",
                            static_cast<double>(r + 1), est.estimate,
                            est.std_error));
  }
  rc.artifacts.push_back(path);
  return rc;
}

RunOutcome run_check_measure(const ExperimentConfig& cfg,
                             const RunOverrides& ov,
                             const std::string& out_dir) {
  (void)ov;
  RunOutcome rc;
  const Measure& mu = *cfg.measure;
  const ProbeGrid grid = ProbeGrid::for_measure(mu);
  rc.lines.push_back(note("total mass %.10g, support radius %.6g",
                          mu.total_mass(), mu.support_radius()));

  const SupResult uniform = uniform_potential_sup(mu, grid);
  rc.lines.push_back(
      note("unit-ball weighted potential sup %.10g", uniform.value));

  const std::vector<PotentialRow> table =
      small_ball_potential_table(mu, grid, cfg.run.deltas);
  const std::string path = artifact_path(out_dir, "small_ball.csv");
  CsvWriter csv(path);
  std::vector<std::string> cols = {"delta", "sup_value"};
  for (std::size_t i = 0; i < mu.dim(); ++i)
    cols.push_back("argmax_x" + std::to_string(i));
  csv.header(cols);
  for (const PotentialRow& row : table) {
    std::vector<double> cells = {row.delta, row.sup};
    for (double c : row.argmax) cells.push_back(c);
    csv.row(cells);
  }
  rc.artifacts.push_back(path);
  const bool vanishing = table.back().sup < 0.25 * table.front().sup;
  rc.lines.push_back(note("small-ball sup falls %.10g -> %.10g",
                          table.front().sup, table.back().sup));
  rc.lines.push_back(std::string("uniform vanishing trend: ") +
                     (vanishing ? "yes" : "no"));

  if (!cfg.run.radii.empty()) {
    const MassScalingFit fit = mass_scaling_fit(mu, grid, cfg.run.radii);
    const std::string mpath = artifact_path(out_dir, "mass_scaling.csv");
    CsvWriter mcsv(mpath);
    mcsv.header({"radius", "sup_mass"});
    for (std::size_t i = 0; i < fit.radii.size(); ++i)
      mcsv.row({fit.radii[i], fit.sup_masses[i]});
    rc.artifacts.push_back(mpath);
    rc.lines.push_back(note("mass scaling exponent %.6g, prefactor %.6g",
                            fit.exponent, fit.prefactor));
  }
  return rc;
}

RunOutcome run_convergence(const ExperimentConfig& cfg, const RunOverrides& ov,
                           const std::string& out_dir) {
  RunOutcome rc;
  const Effective eff = effective(cfg.run, ov);
  const std::size_t dim = cfg.model.dim;

  FeynmanKacQuery base;
  base.model = cfg.model;
  base.law = cfg.law;
  base.terminal = materialize_terminal(cfg.run.terminal);
  base.x0 = start_point(cfg.run.x, dim, "convergence");
  base.t = eff.t;
  base.paths = eff.paths;
  base.seed = eff.seed;
  base.antithetic = cfg.run.antithetic;

  const std::string path = artifact_path(out_dir, "convergence.csv");
  CsvWriter csv(path);
  std::vector<std::string> cols = {"n", "t"};
  for (std::size_t i = 0; i < dim; ++i) cols.push_back("x" + std::to_string(i));
  cols.insert(cols.end(), {"estimate", "std_error", "paths", "replicate"});
  csv.header(cols);
  for (std::size_t n : cfg.run.n_list) {
    std::vector<double> estimates;
    for (std::size_t r = 0; r < cfg.run.replicates; ++r) {
      FeynmanKacQuery q = base;
      q.n = n;
      q.symbol = materialize_symbol(cfg, dim, n);
      q.seed = mix64(base.seed + 0x9e3779b97f4a7c15ULL * (r + 1));
      const FeynmanKacEstimate est = feynman_kac_estimate(q);
      estimates.push_back(est.estimate);
      std::vector<double> row = {static_cast<double>(n), eff.t};
      for (double xi : base.x0) row.push_back(xi);
      row.insert(row.end(),
                 {est.estimate, est.std_error,
                  static_cast<double>(est.paths_used),
                  static_cast<double>(r + 1)});
      csv.row(row);
    }
    const SampleSummary s = summarize(estimates);
    rc.lines.push_back(note("n = %.0f: mean %.10g, spread %.3g",
                            static_cast<double>(n), s.mean,
                            estimates.size() > 1 ? s.std_error : 0.0));
  }
  rc.artifacts.push_back(path);
  return rc;
}

RunOutcome run_couple(const ExperimentConfig& cfg, const RunOverrides& ov,
                      const std::string& out_dir) {
  RunOutcome rc;
  const Effective eff = effective(cfg.run, ov);

  CouplingConfig cc;
  cc.model = cfg.model;
  cc.x0 = start_point(cfg.run.x, cfg.model.dim, "couple");
  cc.n = eff.n;
  cc.t_max = eff.t;
  cc.paths = eff.paths;
  cc.seed = eff.seed;
  cc.substeps = cfg.run.substeps;

  const CouplingErrorReport rep = coupling_error_report(cc, eff.paths);
  const std::string path = artifact_path(out_dir, "coupling.csv");
  CsvWriter csv(path);
  csv.header({"n", "t", "lipschitz", "bound", "empirical_max_sq", "envelope",
              "gamma", "empirical_prob", "exceedance_bound"});
  for (std::size_t i = 0; i < rep.gammas.size(); ++i) {
    csv.row({static_cast<double>(rep.n), rep.t_max, rep.lipschitz,
             rep.coeff_bound, rep.empirical_max_sq, rep.envelope,
             rep.gammas[i], rep.empirical_prob[i], rep.chebyshev_bound[i]});
  }
  rc.artifacts.push_back(path);
  rc.lines.push_back(note("empirical max-square %.6g vs envelope %.6g",
                          rep.empirical_max_sq, rep.envelope));
  rc.lines.push_back(note("terminal mean-square %.6g (+- %.2g)",
                          rep.empirical_final_sq, rep.final_sq_std_error));
  rc.lines.push_back(note("fine-leg bias envelope %.3g", rep.fine_leg_envelope));
  rc.lines.push_back(std::string("within envelope: ") +
                     (rep.ok ? "yes" : "NO"));
  return rc;
}

RunOutcome run_acceptance(const std::string& out_dir) {
  RunOutcome rc;
  const std::vector<CriterionResult> results = run_all_criteria(out_dir);
  for (const CriterionResult& r : results) {
    char head[160];
    std::snprintf(head, sizeof head, "criterion %02d [%s] %s", r.id,
                  r.pass ? "PASS" : "FAIL", r.name.c_str());
    rc.lines.push_back(head);
    for (const CriterionCheck& c : r.checks)
      rc.lines.push_back(std::string("  - ") + (c.pass ? "pass" : "FAIL") +
                         ": " + c.label + " (" + c.detail + ")");
    for (const std::string& a : r.artifacts) rc.artifacts.push_back(a);
    if (!r.pass) rc.accepted = false;
  }
  return rc;
}

}  // namespace

RunOutcome run_command(const std::string& command, const ExperimentConfig& cfg,
                       const RunOverrides& overrides,
                       const std::string& out_dir) {
  require_for_command(cfg, command);
  if (command == "simulate") return run_simulate(cfg, overrides, out_dir);
  if (command == "characteristics")
    return run_characteristics(cfg, overrides, out_dir);
  if (command == "estimate-u") return run_estimate(cfg, overrides, out_dir);
  if (command == "check-measure")
    return run_check_measure(cfg, overrides, out_dir);
  if (command == "convergence") return run_convergence(cfg, overrides, out_dir);
  if (command == "couple") return run_couple(cfg, overrides, out_dir);
  if (command == "acceptance") return run_acceptance(out_dir);
  throw config_error({"unknown command '" + command + "'"});
}

}  // namespace ltmc
