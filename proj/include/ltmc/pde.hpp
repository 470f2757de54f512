#pragma once
// Finite-difference oracle: explicit scheme for the weighted heat equation
//   du/dt = (sigma^2(x)/2) Laplace u + a(x) . grad u - V(x) u,  u(0,.) = g,
// on a box with Dirichlet values frozen at g. This is an independent route
// to the same quantity the exponential-weight Monte Carlo estimates, so the
// two can cross-check each other. Valid when the box is large enough that
// the frozen boundary never influences the probe region over the horizon.

#include <cstddef>
#include <functional>
#include <vector>

#include "ltmc/feynman_kac.hpp"
#include "ltmc/linalg.hpp"

namespace ltmc {

struct GridField {
  Box box;
  std::size_t points_per_axis = 0;  // nodes per axis; spacing = extent/(pts-1)
  std::vector<double> values;       // row-major over axes
};

// multilinear interpolation; x must lie inside the field's box
double sample_field(const GridField& field, const Vec& x);

struct ParabolicProblem {
  std::size_t dim = 1;                              // 1 or 2
  std::function<double(const Vec&)> potential;      // V >= 0; null means 0
  std::function<Vec(const Vec&)> drift;             // null means 0
  std::function<double(const Vec&)> diffusion_sq;   // sigma^2 > 0; null means 1
  std::function<double(const Vec&)> terminal;       // g
  Box box;
  std::size_t points_per_axis = 201;
};

struct ParabolicSolution {
  GridField field;
  double t = 0.0;
  std::size_t time_steps = 0;
  double dt = 0.0;
};

// Explicit update with central differences, step size chosen from the
// diffusion stability bound dt * max(sigma^2) * sum_i(1/h_i^2) <= 1/2 and
// shrunk so the horizon is hit exactly. Rows are updated in parallel into
// disjoint slots; results do not depend on the thread count. Throws
// instability_error if the running maximum ever exceeds the terminal bound.
ParabolicSolution solve_parabolic(const ParabolicProblem& problem, double t);

// Dumps the field one node per row, columns (x0, ..., value), row-major
// over axes, through the fixed 17-digit float format.
void write_field_csv(const GridField& field, const std::string& path);

// Monte Carlo versus finite differences: the gap must stay within
// max(3 mc standard errors, rel_tol * |fd|).
struct CrossCheckResult {
  double mc_estimate = 0.0;
  double mc_std_error = 0.0;
  double fd_value = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};
CrossCheckResult cross_validate(const FeynmanKacQuery& query,
                                const ParabolicProblem& problem,
                                double rel_tol = 0.02);

}  // namespace ltmc
