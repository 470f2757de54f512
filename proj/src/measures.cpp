#include "ltmc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltmc/quadrature.hpp"
#include "ltmc/stats.hpp"

namespace ltmc {

double admissibility_weight(double r, std::size_t dim) {
  if (!(r > 0.0)) throw std::invalid_argument("admissibility_weight: r must be positive");
  if (dim < 2) throw std::invalid_argument("admissibility_weight: dim must be >= 2");
  if (dim == 2) return std::max(-std::log(r), 1.0);
  return std::pow(r, 2.0 - static_cast<double>(dim));
}

RadialKernel admissibility_weight_kernel(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("admissibility_weight_kernel: dim must be >= 2");
  RadialKernel k;
  k.eval = [dim](double r) { return admissibility_weight(r, dim); };
  if (dim == 2) k.kink_radius = std::exp(-1.0);  // where the log meets the floor
  return k;
}

Measure Measure::circle(Vec center, double radius, double weight) {
  if (center.size() != 2) throw std::invalid_argument("Measure::circle: center must be planar");
  if (!(radius > 0.0)) throw std::invalid_argument("Measure::circle: radius must be positive");
  if (!(weight >= 0.0)) throw std::invalid_argument("Measure::circle: weight must be nonnegative");
  Measure m;
  m.layers_.push_back({std::move(center), radius, weight});
  return m;
}

Measure Measure::density(std::function<double(const Vec&)> density, Box box,
                         std::size_t resolution) {
  if (box.dim() != 2) throw std::invalid_argument("Measure::density: box must be planar");
  for (std::size_t i = 0; i < 2; ++i)
    if (!(box.hi[i] > box.lo[i]))
      throw std::invalid_argument("Measure::density: box must have positive extent");
  if (resolution < 2) throw std::invalid_argument("Measure::density: resolution too small");
  DensityComponent d;
  d.density = std::move(density);
  d.box = std::move(box);
  d.resolution = resolution;
  const double hx = (d.box.hi[0] - d.box.lo[0]) / static_cast<double>(resolution);
  const double hy = (d.box.hi[1] - d.box.lo[1]) / static_cast<double>(resolution);
  double mass = 0.0;
  Vec y(2);
  for (std::size_t i = 0; i < resolution; ++i) {
    y[0] = d.box.lo[0] + (static_cast<double>(i) + 0.5) * hx;
    for (std::size_t j = 0; j < resolution; ++j) {
      y[1] = d.box.lo[1] + (static_cast<double>(j) + 0.5) * hy;
      const double v = d.density(y);
      if (!(v >= 0.0))
        throw std::invalid_argument("Measure::density: density must be nonnegative");
      mass += v;
    }
  }
  d.mass = mass * hx * hy;
  Measure m;
  m.densities_.push_back(std::move(d));
  return m;
}

Measure Measure::mixture(const std::vector<Measure>& parts) {
  if (parts.empty()) throw std::invalid_argument("Measure::mixture: no parts");
  Measure m;
  for (const Measure& p : parts) {
    m.layers_.insert(m.layers_.end(), p.layers_.begin(), p.layers_.end());
    m.densities_.insert(m.densities_.end(), p.densities_.begin(), p.densities_.end());
  }
  return m;
}

double Measure::total_mass() const {
  double s = 0.0;
  for (const auto& l : layers_) s += l.weight;
  for (const auto& d : densities_) s += d.mass;
  return s;
}

double Measure::support_radius() const {
  double r = 0.0;
  for (const auto& l : layers_) r = std::max(r, norm2(l.center) + l.radius);
  for (const auto& d : densities_) {
    Vec c(2);
    for (int i = 0; i < 4; ++i) {
      c[0] = (i & 1) ? d.box.hi[0] : d.box.lo[0];
      c[1] = (i & 2) ? d.box.hi[1] : d.box.lo[1];
      r = std::max(r, norm2(c));
    }
  }
  return r;
}

Measure nested_circles_measure(int k_max) {
  if (k_max < 1 || k_max > 6)
    throw std::invalid_argument("nested_circles_measure: k_max must be in 1..6");
  std::vector<Measure> parts;
  for (int k = 1; k <= k_max; ++k)
    parts.push_back(Measure::circle({0.0, 0.0}, std::ldexp(1.0, -k * k),
                                    std::pow(static_cast<double>(k), -4.0)));
  return Measure::mixture(parts);
}

Measure marching_circles_measure(int k_max) {
  if (k_max < 1 || k_max > 6)
    throw std::invalid_argument("marching_circles_measure: k_max must be in 1..6");
  std::vector<Measure> parts;
  for (int k = 1; k <= k_max; ++k)
    parts.push_back(Measure::circle({1.0 / static_cast<double>(k), 0.0},
                                    std::ldexp(1.0, -k * k),
                                    std::pow(static_cast<double>(k), -2.0)));
  return Measure::mixture(parts);
}

namespace {

// Half-angle psi of the arc of a circle (center distance d, radius r) lying
// within rho <= bound of the reference point; the chord parametrization
// rho^2 = (d-r)^2 + 4 d r sin^2(psi/2) is exact and cancellation-free.
double arc_half_angle(double d, double r, double bound) {
  const double rho_min = std::abs(d - r);
  if (rho_min > bound) return 0.0;
  if (d + r <= bound) return kPi;
  const double s2 = (bound * bound - rho_min * rho_min) / (4.0 * d * r);
  if (s2 >= 1.0) return kPi;
  if (s2 <= 0.0) return 0.0;
  return 2.0 * std::asin(std::sqrt(s2));
}

double layer_kernel_integral(const CircleLayer& layer, const RadialKernel& kernel,
                             const Vec& x, double delta, double rel_tol) {
  const double bound = std::min(delta, kernel.negligible_radius);
  if (!(bound > 0.0) || layer.weight == 0.0) return 0.0;
  const double d = dist2(x, layer.center);
  const double r = layer.radius;
  if (std::abs(d - r) > bound) return 0.0;
  if (d == 0.0) return layer.weight * kernel.eval(r);  // rho is constant
  const double psi_max = arc_half_angle(d, r, bound);
  if (!(psi_max > 0.0)) return 0.0;

  const double rho_min_sq = (d - r) * (d - r);
  auto integrand = [&](double psi) {
    const double s = std::sin(0.5 * psi);
    return kernel.eval(std::sqrt(rho_min_sq + 4.0 * d * r * s * s));
  };
  std::vector<double> knots{0.0};
  if (kernel.kink_radius > std::abs(d - r) && kernel.kink_radius < d + r) {
    const double psi_k = arc_half_angle(d, r, kernel.kink_radius);
    if (psi_k > 0.0 && psi_k < psi_max) knots.push_back(psi_k);
  }
  knots.push_back(psi_max);
  quad::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-300;
  return layer.weight / kPi * quad::integrate(integrand, knots, opt).value;
}

double box_distance(const Box& box, const Vec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double d = std::max({box.lo[i] - x[i], x[i] - box.hi[i], 0.0});
    s += d * d;
  }
  return std::sqrt(s);
}

double density_kernel_integral(const DensityComponent& comp,
                               const RadialKernel& kernel, const Vec& x,
                               double delta, double rel_tol) {
  double far = 0.0;
  Vec c(2);
  for (int i = 0; i < 4; ++i) {
    c[0] = (i & 1) ? comp.box.hi[0] : comp.box.lo[0];
    c[1] = (i & 2) ? comp.box.hi[1] : comp.box.lo[1];
    far = std::max(far, dist2(x, c));
  }
  const double bound = std::min({delta, kernel.negligible_radius, far});
  if (!(bound > 0.0) || box_distance(comp.box, x) > bound) return 0.0;

  constexpr int kAngles = 128;
  static const std::vector<Vec> dirs = [] {
    std::vector<Vec> v;
    for (int j = 0; j < kAngles; ++j) {
      const double th = kTwoPi * (static_cast<double>(j) + 0.5) / kAngles;
      v.push_back({std::cos(th), std::sin(th)});
    }
    return v;
  }();
  Vec y(2);
  auto integrand = [&](double rho) {
    double shell = 0.0;
    for (const Vec& w : dirs) {
      y[0] = x[0] + rho * w[0];
      y[1] = x[1] + rho * w[1];
      if (comp.box.contains(y)) shell += comp.density(y);
    }
    if (shell == 0.0) return 0.0;
    return kernel.eval(rho) * rho * shell * (kTwoPi / kAngles);
  };
  std::vector<double> knots{0.0};
  if (kernel.kink_radius > 0.0 && kernel.kink_radius < bound)
    knots.push_back(kernel.kink_radius);
  knots.push_back(bound);
  quad::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-300;
  // the angular sum makes the shell profile only piecewise smooth near the
  // box boundary, so cap the panel budget instead of chasing tiny jumps
  opt.max_panels = 600;
  return quad::integrate(integrand, knots, opt).value;
}

double layer_ball_mass(const CircleLayer& layer, const Vec& x, double r) {
  const double d = dist2(x, layer.center);
  if (d == 0.0) return layer.radius <= r ? layer.weight : 0.0;
  return layer.weight * arc_half_angle(d, layer.radius, r) / kPi;
}

}  // namespace

double integrate_kernel(const Measure& mu, const RadialKernel& kernel,
                        const Vec& x, double delta, double rel_tol) {
  if (x.size() != 2) throw std::invalid_argument("integrate_kernel: x must be planar");
  if (!kernel.eval) throw std::invalid_argument("integrate_kernel: kernel has no evaluator");
  double total = 0.0;
  for (const auto& l : mu.layers())
    total += layer_kernel_integral(l, kernel, x, delta, rel_tol);
  for (const auto& d : mu.densities())
    total += density_kernel_integral(d, kernel, x, delta, rel_tol);
  return total;
}

double integrate(const Measure& mu, const std::function<double(const Vec&)>& g,
                 double rel_tol) {
  double total = 0.0;
  quad::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-300;
  for (const auto& l : mu.layers()) {
    if (l.weight == 0.0) continue;
    auto integrand = [&](double th) {
      return g({l.center[0] + l.radius * std::cos(th),
                l.center[1] + l.radius * std::sin(th)});
    };
    const std::vector<double> knots{0.0, 0.5 * kPi, kPi, 1.5 * kPi, kTwoPi};
    total += l.weight / kTwoPi * quad::integrate(integrand, knots, opt).value;
  }
  for (const auto& d : mu.densities()) {
    const double hx = (d.box.hi[0] - d.box.lo[0]) / static_cast<double>(d.resolution);
    const double hy = (d.box.hi[1] - d.box.lo[1]) / static_cast<double>(d.resolution);
    double s = 0.0;
    Vec y(2);
    for (std::size_t i = 0; i < d.resolution; ++i) {
      y[0] = d.box.lo[0] + (static_cast<double>(i) + 0.5) * hx;
      for (std::size_t j = 0; j < d.resolution; ++j) {
        y[1] = d.box.lo[1] + (static_cast<double>(j) + 0.5) * hy;
        s += g(y) * d.density(y);
      }
    }
    total += s * hx * hy;
  }
  return total;
}

double ball_mass(const Measure& mu, const Vec& x, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball_mass: radius must be nonnegative");
  double total = 0.0;
  for (const auto& l : mu.layers()) total += layer_ball_mass(l, x, r);
  for (const auto& d : mu.densities()) {
    const double hx = (d.box.hi[0] - d.box.lo[0]) / static_cast<double>(d.resolution);
    const double hy = (d.box.hi[1] - d.box.lo[1]) / static_cast<double>(d.resolution);
    double s = 0.0;
    Vec y(2);
    for (std::size_t i = 0; i < d.resolution; ++i) {
      y[0] = d.box.lo[0] + (static_cast<double>(i) + 0.5) * hx;
      for (std::size_t j = 0; j < d.resolution; ++j) {
        y[1] = d.box.lo[1] + (static_cast<double>(j) + 0.5) * hy;
        if (dist2(x, y) <= r) s += d.density(y);
      }
    }
    total += s * hx * hy;
  }
  return total;
}

double circle_log_potential(const CircleLayer& layer, const Vec& x) {
  const double d = dist2(x, layer.center);
  return -layer.weight * std::log(std::max(layer.radius, d));
}

void ProbeGrid::add(const Vec& p) {
  for (const Vec& q : points)
    if (dist2(p, q) < 1e-12) return;
  points.push_back(p);
}

ProbeGrid ProbeGrid::for_measure(const Measure& mu) {
  ProbeGrid g;
  g.add({0.0, 0.0});
  for (const auto& l : mu.layers()) {
    g.add(l.center);
    for (int j = 0; j < 8; ++j) {
      const double th = kPi * j / 4.0;
      g.add({l.center[0] + l.radius * std::cos(th),
             l.center[1] + l.radius * std::sin(th)});
    }
    for (int j = 0; j < 4; ++j) {
      const double th = kPi * j / 2.0;
      g.add({l.center[0] + 0.5 * l.radius * std::cos(th),
             l.center[1] + 0.5 * l.radius * std::sin(th)});
      g.add({l.center[0] + 2.0 * l.radius * std::cos(th),
             l.center[1] + 2.0 * l.radius * std::sin(th)});
    }
  }
  const auto& ls = mu.layers();
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j)
      g.add({0.5 * (ls[i].center[0] + ls[j].center[0]),
             0.5 * (ls[i].center[1] + ls[j].center[1])});
  for (const auto& d : mu.densities()) {
    for (int i = 0; i < 4; ++i)
      g.add({(i & 1) ? d.box.hi[0] : d.box.lo[0],
             (i & 2) ? d.box.hi[1] : d.box.lo[1]});
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        g.add({d.box.lo[0] + 0.25 * i * (d.box.hi[0] - d.box.lo[0]),
               d.box.lo[1] + 0.25 * j * (d.box.hi[1] - d.box.lo[1])});
  }
  return g;
}

SupResult sup_over_points(const std::vector<Vec>& points,
                          const std::function<double(const Vec&)>& f,
                          const std::vector<double>& refine_scales) {
  if (points.empty()) throw std::invalid_argument("sup_over_points: no points");
  SupResult best{f(points[0]), points[0]};
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double v = f(points[i]);
    if (v > best.value) best = {v, points[i]};
  }
  const double diag = std::sqrt(0.5);
  const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                             {diag, diag}, {diag, -diag}, {-diag, diag}, {-diag, -diag}};
  for (double s : refine_scales) {
    SupResult ring = best;
    for (const auto& d : dirs) {
      const Vec p{best.argmax[0] + s * d[0], best.argmax[1] + s * d[1]};
      const double v = f(p);
      if (v > ring.value) ring = {v, p};
    }
    best = ring;
  }
  return best;
}

SupResult uniform_potential_sup(const Measure& mu, const ProbeGrid& grid) {
  const RadialKernel w = admissibility_weight_kernel(mu.dim());
  auto f = [&](const Vec& x) { return integrate_kernel(mu, w, x, 1.0, 1e-8); };
  return sup_over_points(grid.points, f, {0.3, 0.05, 0.01});
}

std::vector<PotentialRow> small_ball_potential_table(
    const Measure& mu, const ProbeGrid& grid, const std::vector<double>& deltas) {
  if (deltas.empty())
    throw std::invalid_argument("small_ball_potential_table: no radii");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0))
      throw std::invalid_argument("small_ball_potential_table: radii must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw std::invalid_argument("small_ball_potential_table: radii must decrease");
  }
  const RadialKernel w = admissibility_weight_kernel(mu.dim());

  // discover refinement points at every radius first, then evaluate all rows
  // on the shared point set so the column is monotone by construction
  ProbeGrid shared = grid;
  for (double delta : deltas) {
    auto f = [&](const Vec& x) { return integrate_kernel(mu, w, x, delta, 1e-8); };
    SupResult s = sup_over_points(shared.points, f, {0.5 * delta, 0.1 * delta, 0.02 * delta});
    shared.add(s.argmax);
  }
  std::vector<PotentialRow> rows;
  for (double delta : deltas) {
    auto f = [&](const Vec& x) { return integrate_kernel(mu, w, x, delta, 1e-8); };
    SupResult s = sup_over_points(shared.points, f, {});
    rows.push_back({delta, s.value, s.argmax});
  }
  return rows;
}

MassScalingFit mass_scaling_fit(const Measure& mu, const ProbeGrid& grid,
                                const std::vector<double>& radii) {
  if (radii.size() < 4)
    throw std::invalid_argument("mass_scaling_fit: need at least four radii");
  double lo = radii[0], hi = radii[0];
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("mass_scaling_fit: radii must be positive");
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (hi / lo < 100.0)
    throw std::invalid_argument("mass_scaling_fit: radii must span at least two decades");

  MassScalingFit fit;
  fit.radii = radii;
  std::sort(fit.radii.begin(), fit.radii.end(), std::greater<>());
  std::vector<double> log_r, log_m;
  for (double r : fit.radii) {
    auto f = [&](const Vec& x) { return ball_mass(mu, x, r); };
    SupResult s = sup_over_points(grid.points, f, {0.5 * r, 0.1 * r});
    fit.sup_masses.push_back(s.value);
    if (s.value > 0.0) {
      log_r.push_back(std::log(r));
      log_m.push_back(std::log(s.value));
    }
  }
  if (log_r.size() >= 2) {
    LineFit line = fit_line(log_r, log_m);
    fit.exponent = line.slope;
    fit.prefactor = std::exp(line.intercept);
    fit.valid = true;
  }
  return fit;
}

double tail_majorant(double y, std::size_t dim, double alpha) {
  if (!(y > 0.0)) throw std::invalid_argument("tail_majorant: y must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("tail_majorant: alpha must be positive");
  if (dim < 2) throw std::invalid_argument("tail_majorant: dim must be >= 2");
  const double half = 0.5 * static_cast<double>(dim);
  auto f = [=](double u) {
    return std::pow(u, half - 2.0) *
           (std::exp(-alpha * u) + 1.0 / (1.0 + std::pow(u, half)));
  };
  quad::Options opt;
  opt.rel_tol = 1e-11;
  return quad::integrate_to_inf(f, y, opt).value;
}

double truncated_potential_majorant(double z, double delta, std::size_t dim,
                                    double alpha, double c1) {
  if (!(z > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("truncated_potential_majorant: z and delta must be positive");
  const double m = static_cast<double>(dim);
  return std::pow(2.0, 0.5 * m) * c1 * std::pow(z, 2.0 - m) *
         tail_majorant(z * z / delta, dim, alpha);
}

}  // namespace ltmc
