#include "ltmc/pde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltmc/csv.hpp"
#include "ltmc/errors.hpp"
#include "ltmc/parallel.hpp"

namespace ltmc {

double sample_field(const GridField& field, const Vec& x) {
  const std::size_t dim = field.box.dim();
  if (x.size() != dim) throw std::invalid_argument("sample_field: dimension mismatch");
  if (!field.box.contains(x)) throw std::out_of_range("sample_field: point outside the grid box");
  const std::size_t pts = field.points_per_axis;
  std::size_t base[2] = {0, 0};
  double frac[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < dim; ++i) {
    const double h = (field.box.hi[i] - field.box.lo[i]) / static_cast<double>(pts - 1);
    double pos = (x[i] - field.box.lo[i]) / h;
    std::size_t b = static_cast<std::size_t>(pos);
    if (b >= pts - 1) b = pts - 2;
    base[i] = b;
    frac[i] = pos - static_cast<double>(b);
  }
  if (dim == 1) {
    const double lo = field.values[base[0]];
    const double hi = field.values[base[0] + 1];
    return lo + frac[0] * (hi - lo);
  }
  auto at = [&](std::size_t i, std::size_t j) { return field.values[i * pts + j]; };
  const double v00 = at(base[0], base[1]);
  const double v01 = at(base[0], base[1] + 1);
  const double v10 = at(base[0] + 1, base[1]);
  const double v11 = at(base[0] + 1, base[1] + 1);
  const double lo = v00 + frac[1] * (v01 - v00);
  const double hi = v10 + frac[1] * (v11 - v10);
  return lo + frac[0] * (hi - lo);
}

namespace {

struct NodeData {
  std::vector<double> potential;
  std::vector<double> diffusion;
  std::vector<double> drift;  // dim components per node, interleaved
  double sup_terminal = 0.0;
  double max_diffusion = 0.0;
  double max_potential = 0.0;
};

NodeData tabulate(const ParabolicProblem& p, std::vector<double>& u0) {
  const std::size_t pts = p.points_per_axis;
  const std::size_t count = p.dim == 1 ? pts : pts * pts;
  NodeData d;
  d.potential.resize(count);
  d.diffusion.resize(count);
  d.drift.resize(count * p.dim);
  u0.resize(count);
  Vec x(p.dim);
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (p.dim == 1) {
      x[0] = p.box.lo[0] + (p.box.hi[0] - p.box.lo[0]) *
                               static_cast<double>(idx) / static_cast<double>(pts - 1);
    } else {
      x[0] = p.box.lo[0] + (p.box.hi[0] - p.box.lo[0]) *
                               static_cast<double>(idx / pts) / static_cast<double>(pts - 1);
      x[1] = p.box.lo[1] + (p.box.hi[1] - p.box.lo[1]) *
                               static_cast<double>(idx % pts) / static_cast<double>(pts - 1);
    }
    const double v = p.potential ? p.potential(x) : 0.0;
    if (!(v >= 0.0))
      throw std::invalid_argument("solve_parabolic: potential must be nonnegative");
    const double s = p.diffusion_sq ? p.diffusion_sq(x) : 1.0;
    if (!(s > 0.0))
      throw std::invalid_argument("solve_parabolic: squared diffusion must be positive");
    d.potential[idx] = v;
    d.diffusion[idx] = s;
    if (p.drift) {
      Vec a = p.drift(x);
      for (std::size_t c = 0; c < p.dim; ++c) d.drift[idx * p.dim + c] = a[c];
    }
    u0[idx] = p.terminal(x);
    d.sup_terminal = std::max(d.sup_terminal, std::abs(u0[idx]));
    d.max_diffusion = std::max(d.max_diffusion, s);
    d.max_potential = std::max(d.max_potential, v);
  }
  return d;
}

}  // namespace

ParabolicSolution solve_parabolic(const ParabolicProblem& p, double t) {
  if (p.dim != 1 && p.dim != 2)
    throw std::invalid_argument("solve_parabolic: dim must be 1 or 2");
  if (!p.terminal) throw std::invalid_argument("solve_parabolic: no terminal function");
  if (p.box.dim() != p.dim) throw std::invalid_argument("solve_parabolic: box dimension mismatch");
  if (p.points_per_axis < 3) throw std::invalid_argument("solve_parabolic: need at least 3 points");
  if (!(t > 0.0)) throw std::invalid_argument("solve_parabolic: t must be positive");

  const std::size_t pts = p.points_per_axis;
  double h[2] = {0.0, 0.0};
  double inv_h2_sum = 0.0;
  for (std::size_t i = 0; i < p.dim; ++i) {
    h[i] = (p.box.hi[i] - p.box.lo[i]) / static_cast<double>(pts - 1);
    if (!(h[i] > 0.0)) throw std::invalid_argument("solve_parabolic: empty box");
    inv_h2_sum += 1.0 / (h[i] * h[i]);
  }

  std::vector<double> u;
  NodeData data = tabulate(p, u);

  double dt_bound = 0.5 / (data.max_diffusion * inv_h2_sum);
  if (data.max_potential > 0.0)
    dt_bound = std::min(dt_bound, 0.1 / data.max_potential);
  const std::size_t steps =
      static_cast<std::size_t>(std::ceil(t / (0.9 * dt_bound)));
  const double dt = t / static_cast<double>(steps);

  std::vector<double> next(u.size());
  const double grow_limit = 1.01 * data.sup_terminal + 1e-300;

  if (p.dim == 1) {
    for (std::size_t s = 0; s < steps; ++s) {
      next[0] = u[0];
      next[pts - 1] = u[pts - 1];
      double running_max = 0.0;
      for (std::size_t i = 1; i + 1 < pts; ++i) {
        const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h[0] * h[0]);
        const double grad = (u[i + 1] - u[i - 1]) / (2.0 * h[0]);
        next[i] = u[i] + dt * (0.5 * data.diffusion[i] * lap +
                               data.drift[i] * grad - data.potential[i] * u[i]);
        running_max = std::max(running_max, std::abs(next[i]));
      }
      if (running_max > grow_limit)
        throw instability_error("solve_parabolic: solution exceeded the terminal bound");
      u.swap(next);
    }
  } else {
    std::vector<double> row_max(pts, 0.0);
    for (std::size_t s = 0; s < steps; ++s) {
      parallel_for(pts, [&](std::size_t i) {
        double rmax = 0.0;
        if (i == 0 || i == pts - 1) {
          for (std::size_t j = 0; j < pts; ++j) next[i * pts + j] = u[i * pts + j];
        } else {
          next[i * pts] = u[i * pts];
          next[i * pts + pts - 1] = u[i * pts + pts - 1];
          for (std::size_t j = 1; j + 1 < pts; ++j) {
            const std::size_t idx = i * pts + j;
            const double lap =
                (u[idx - pts] - 2.0 * u[idx] + u[idx + pts]) / (h[0] * h[0]) +
                (u[idx - 1] - 2.0 * u[idx] + u[idx + 1]) / (h[1] * h[1]);
            const double gx = (u[idx + pts] - u[idx - pts]) / (2.0 * h[0]);
            const double gy = (u[idx + 1] - u[idx - 1]) / (2.0 * h[1]);
            next[idx] = u[idx] + dt * (0.5 * data.diffusion[idx] * lap +
                                       data.drift[idx * 2] * gx +
                                       data.drift[idx * 2 + 1] * gy -
                                       data.potential[idx] * u[idx]);
            rmax = std::max(rmax, std::abs(next[idx]));
          }
        }
        row_max[i] = rmax;
      });
      double running_max = 0.0;
      for (double r : row_max) running_max = std::max(running_max, r);
      if (running_max > grow_limit)
        throw instability_error("solve_parabolic: solution exceeded the terminal bound");
      u.swap(next);
    }
  }

  ParabolicSolution sol;
  sol.field.box = p.box;
  sol.field.points_per_axis = pts;
  sol.field.values = std::move(u);
  sol.t = t;
  sol.time_steps = steps;
  sol.dt = dt;
  return sol;
}

void write_field_csv(const GridField& field, const std::string& path) {
  const std::size_t dim = field.box.dim();
  const std::size_t pts = field.points_per_axis;
  if (dim == 0 || pts < 2 || field.values.empty())
    throw std::invalid_argument("write_field_csv: empty field");
  CsvWriter csv(path);
  std::vector<std::string> cols;
  for (std::size_t i = 0; i < dim; ++i) cols.push_back("x" + std::to_string(i));
  cols.push_back("value");
  csv.header(cols);
  double h[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < dim; ++i)
    h[i] = (field.box.hi[i] - field.box.lo[i]) / static_cast<double>(pts - 1);
  std::vector<double> row(dim + 1);
  for (std::size_t idx = 0; idx < field.values.size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = dim; i-- > 0;) {
      row[i] = field.box.lo[i] + static_cast<double>(rest % pts) * h[i];
      rest /= pts;
    }
    row[dim] = field.values[idx];
    csv.row(row);
  }
}

CrossCheckResult cross_validate(const FeynmanKacQuery& query,
                                const ParabolicProblem& problem,
                                double rel_tol) {
  CrossCheckResult r;
  FeynmanKacEstimate mc = feynman_kac_estimate(query);
  ParabolicSolution fd = solve_parabolic(problem, query.t);
  r.mc_estimate = mc.estimate;
  r.mc_std_error = mc.std_error;
  r.fd_value = sample_field(fd.field, query.x0);
  r.gap = std::abs(r.mc_estimate - r.fd_value);
  r.tolerance = std::max(3.0 * mc.std_error, rel_tol * std::abs(r.fd_value));
  r.ok = r.gap <= r.tolerance;
  return r;
}

}  // namespace ltmc
