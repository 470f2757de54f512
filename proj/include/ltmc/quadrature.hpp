#pragma once
// Globally adaptive one-dimensional quadrature (Gauss 7 / Kronrod 15).
// The worst panel (largest error estimate) is always split next, which copes
// with integrable endpoint singularities of log and small-power type. All
// nodes are interior, so integrands may be singular at panel endpoints.

#include <functional>
#include <vector>

namespace ltmc::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;   // absolute floor; 0 means purely relative control
  int max_panels = 20000;
  bool throw_on_failure = false;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

// Same, with interior breakpoints (known kinks / singular interfaces).
Result integrate(const Integrand& f, const std::vector<double>& knots,
                 const Options& opt = {});

// Integral over [a, inf) via the rational substitution u = a + t/(1-t).
Result integrate_to_inf(const Integrand& f, double a, const Options& opt = {});

}  // namespace ltmc::quad
