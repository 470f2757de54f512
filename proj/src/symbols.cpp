#include "ltmc/symbols.hpp"

#include <cmath>
#include <stdexcept>

#include "ltmc/quadrature.hpp"
#include "ltmc/special.hpp"

namespace ltmc {

double heat_kernel_time_integral(double r, double t_max, std::size_t dim) {
  if (!(r > 0.0)) throw std::invalid_argument("heat_kernel_time_integral: r must be positive");
  if (!(t_max > 0.0)) throw std::invalid_argument("heat_kernel_time_integral: t_max must be positive");
  if (dim < 2) throw std::invalid_argument("heat_kernel_time_integral: dim must be >= 2");
  const double m = static_cast<double>(dim);
  const double x = r * r / (2.0 * t_max);
  const double gamma_tail = upper_gamma(0.5 * m - 1.0, x);
  if (gamma_tail == 0.0) return 0.0;
  return std::pow(kTwoPi, -0.5 * m) * std::pow(2.0 / (r * r), 0.5 * m - 1.0) *
         gamma_tail;
}

RadialKernel heat_time_kernel(double t_max, std::size_t dim) {
  RadialKernel k;
  k.eval = [t_max, dim](double r) {
    return heat_kernel_time_integral(r, t_max, dim);
  };
  k.negligible_radius = std::sqrt(100.0 * t_max);
  return k;
}

Symbol constant_symbol(std::size_t dim, double value) {
  if (dim == 0) throw std::invalid_argument("constant_symbol: dim must be positive");
  if (!(value >= 0.0)) throw std::invalid_argument("constant_symbol: value must be nonnegative");
  Symbol s;
  s.dim = dim;
  s.eval = [value](const Vec&) { return value; };
  return s;
}

Symbol gaussian_bump_symbol(std::size_t dim, double amplitude, double width,
                            Vec center) {
  if (dim == 0) throw std::invalid_argument("gaussian_bump_symbol: dim must be positive");
  if (!(amplitude >= 0.0))
    throw std::invalid_argument("gaussian_bump_symbol: amplitude must be nonnegative");
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump_symbol: width must be positive");
  if (center.size() != dim)
    throw std::invalid_argument("gaussian_bump_symbol: center dimension mismatch");
  Symbol s;
  s.dim = dim;
  s.eval = [amplitude, width, center](const Vec& x) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
      const double d = x[i] - center[i];
      d2 += d * d;
    }
    return amplitude * std::exp(-d2 / (width * width));
  };
  return s;
}

Symbol smoothed_symbol(const Measure& mu, std::size_t n, double rel_tol) {
  if (n == 0) throw std::invalid_argument("smoothed_symbol: n must be positive");
  Symbol s;
  s.dim = mu.dim();
  s.level = n;
  s.source = std::make_shared<Measure>(mu);
  const RadialKernel kernel = heat_time_kernel(1.0 / static_cast<double>(n), mu.dim());
  const double scale = static_cast<double>(n);
  auto source = s.source;
  s.eval = [source, kernel, scale, rel_tol](const Vec& x) {
    return scale * integrate_kernel(*source, kernel, x,
                                    std::numeric_limits<double>::infinity(), rel_tol);
  };
  return s;
}

double symbol_sup(const Symbol& s, const ProbeGrid& grid) {
  if (!s.eval) throw std::invalid_argument("symbol_sup: symbol has no evaluator");
  std::vector<double> scales;
  if (s.level > 0) {
    const double h = 1.0 / std::sqrt(static_cast<double>(s.level));
    scales = {2.0 * h, 0.5 * h, 0.1 * h};
  } else {
    scales = {0.5, 0.1, 0.02};
  }
  return sup_over_points(grid.points, s.eval, scales).value;
}

double symbol_step_bound(const Symbol& s, const ProbeGrid& grid, std::size_t n) {
  if (n == 0) throw std::invalid_argument("symbol_step_bound: n must be positive");
  return symbol_sup(s, grid) / static_cast<double>(n);
}

std::vector<TestFunction> default_test_functions() {
  return {
      {"gauss", [](const Vec& y) { return std::exp(-norm2_sq(y)); }},
      {"quadratic", [](const Vec& y) { return norm2_sq(y); }},
  };
}

namespace {

// angular average of f on the circle of radius rho about y (trapezoid rule;
// spectrally accurate for the smooth test functions used here)
double angular_mean(const std::function<double(const Vec&)>& f, const Vec& y,
                    double rho) {
  constexpr int kAngles = 64;
  double s = 0.0;
  Vec p(2);
  for (int j = 0; j < kAngles; ++j) {
    const double th = kTwoPi * (static_cast<double>(j) + 0.5) / kAngles;
    p[0] = y[0] + rho * std::cos(th);
    p[1] = y[1] + rho * std::sin(th);
    s += f(p);
  }
  return s / kAngles;
}

}  // namespace

std::vector<WeakConvergenceRow> weak_convergence_report(
    const Measure& mu, const std::vector<std::size_t>& ns,
    const std::vector<TestFunction>& fs, double rel_tol) {
  if (ns.empty()) throw std::invalid_argument("weak_convergence_report: no levels");
  std::vector<WeakConvergenceRow> rows;
  quad::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-300;

  std::vector<double> direct;
  direct.reserve(fs.size());
  for (const auto& f : fs) direct.push_back(integrate(mu, f.fn, rel_tol));

  for (std::size_t n : ns) {
    if (n == 0) throw std::invalid_argument("weak_convergence_report: levels must be positive");
    const double t_max = 1.0 / static_cast<double>(n);
    const RadialKernel kernel = heat_time_kernel(t_max, 2);
    const double cutoff = kernel.negligible_radius;
    WeakConvergenceRow row;
    row.n = n;

    // Lebesgue mass of F_n/n, reduced over spheres: the smoothing profile
    // integrates to one exactly, so the gap reports quadrature truncation
    const double radial =
        quad::integrate([&](double rho) { return kernel.eval(rho) * rho; },
                        {0.0, cutoff}, opt)
            .value;
    const double profile_mass = static_cast<double>(n) * kTwoPi * radial;
    row.mass_gap = mu.total_mass() * std::abs(profile_mass - 1.0);

    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto& f = fs[i].fn;
      auto smoothed = [&](const Vec& y) {
        auto integrand = [&](double rho) {
          const double k = kernel.eval(rho);
          if (k == 0.0) return 0.0;
          return k * rho * angular_mean(f, y, rho);
        };
        return static_cast<double>(n) * kTwoPi *
               quad::integrate(integrand, {0.0, cutoff}, opt).value;
      };
      const double against = integrate(mu, smoothed, rel_tol);
      row.integral_gaps.push_back(std::abs(against - direct[i]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ltmc
