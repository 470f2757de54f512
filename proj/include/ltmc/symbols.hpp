#pragma once
// Occupation symbols: the nonnegative functions F whose Riemann sums along a
// chain form additive functionals. A smoothed symbol is built from a measure
// by convolving with the time-integrated heat kernel at depth 1/n; dividing
// by n then recovers the measure weakly as n grows, which is the property the
// diagnostics here quantify.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ltmc/linalg.hpp"
#include "ltmc/measures.hpp"

namespace ltmc {

// integral over (0, t_max] of the Gaussian transition density at radius r,
// in closed form through the upper incomplete gamma function
double heat_kernel_time_integral(double r, double t_max, std::size_t dim);

// the same integral packaged as a radial kernel; negligible beyond
// sqrt(100 t_max), where the gamma tail has decayed below 1e-20
RadialKernel heat_time_kernel(double t_max, std::size_t dim);

struct Symbol {
  std::size_t dim = 0;
  std::size_t level = 0;  // smoothing level n; 0 for direct symbols
  std::function<double(const Vec&)> eval;
  std::shared_ptr<const Measure> source;  // set for smoothed symbols
};

Symbol constant_symbol(std::size_t dim, double value);
Symbol gaussian_bump_symbol(std::size_t dim, double amplitude, double width,
                            Vec center);
Symbol smoothed_symbol(const Measure& mu, std::size_t n, double rel_tol = 1e-8);

// sup of the symbol over the probe points, refined near the argmax at the
// smoothing scale (or at order-one scales for direct symbols)
double symbol_sup(const Symbol& s, const ProbeGrid& grid);

// per-step contribution bound sup F / n of the symbol along a chain of
// grid density n
double symbol_step_bound(const Symbol& s, const ProbeGrid& grid, std::size_t n);

struct TestFunction {
  std::string name;
  std::function<double(const Vec&)> fn;
};
std::vector<TestFunction> default_test_functions();

// Gaps |integral of f against F_n/n  -  integral of f against the measure|.
// The mass row uses the exact radial reduction of the Lebesgue integral of
// F_n/n, so it isolates quadrature truncation rather than sampling noise.
struct WeakConvergenceRow {
  std::size_t n = 0;
  double mass_gap = 0.0;
  std::vector<double> integral_gaps;
};
std::vector<WeakConvergenceRow> weak_convergence_report(
    const Measure& mu, const std::vector<std::size_t>& ns,
    const std::vector<TestFunction>& fs, double rel_tol = 1e-9);

}  // namespace ltmc
