#pragma once
// Euler chains on the uniform grid k/n. A model carries coefficient
// evaluators together with the regularity constants claimed for them;
// validators check the claims on probe points, they do not assume them.

#include <cstdint>
#include <functional>
#include <vector>

#include "ltmc/linalg.hpp"
#include "ltmc/rng.hpp"

namespace ltmc {

using DriftFn = std::function<Vec(const Vec&)>;
using DiffusionFn = std::function<Mat(const Vec&)>;

struct DiffusionModel {
  std::size_t dim = 0;
  DriftFn drift;
  DiffusionFn diffusion;
  // declared constants; matrix norms are Frobenius
  double ellipticity_lo = 1.0;   // lower eigenvalue bound for b b^T
  double ellipticity_hi = 1.0;   // upper eigenvalue bound for b b^T
  double lipschitz_const = 0.0;  // ||b(x)-b(y)|| <= L ||x-y||
  double sup_bound = 1.0;        // sup_x ||b(x)||

  static DiffusionModel brownian(std::size_t dim);
  static DiffusionModel scaled_brownian(std::size_t dim, double c);
  // one-dimensional driftless profile b(x) = base + amplitude sin(x)
  static DiffusionModel sine_diffusion_1d(double base, double amplitude);

  DiffusionModel with_constant_drift(Vec a0) const;
};

// Innovation distribution for the chain increments: standard Gaussian, or a
// finite Gaussian scale mixture (component picked by one uniform, then a
// Gaussian vector scaled by the component value). Mixture weights must sum
// to one; covariance normalization is the validator's business, not a
// construction invariant, so deliberately skewed laws can be screened.
class InnovationLaw {
 public:
  static InnovationLaw standard_gaussian();
  static InnovationLaw gaussian_scale_mixture(std::vector<double> weights,
                                              std::vector<double> scales);
  // two-component identity-covariance profile (light and heavy component)
  static InnovationLaw default_mixture();

  void sample(RngStream& rng, Vec& out) const;
  bool is_standard_gaussian() const { return scales_.empty(); }
  // sum_i w_i s_i^2; 1 means the mixture has identity covariance
  double covariance_scale() const;

 private:
  InnovationLaw() = default;
  std::vector<double> weights_;  // empty means standard Gaussian
  std::vector<double> scales_;
  std::vector<double> cum_;
};

struct ChainPath {
  std::size_t n = 1;      // grid density, step length 1/n
  std::size_t steps = 0;  // number of increments actually stored
  std::size_t dim = 0;
  Vec values;             // (steps+1) x dim, row k is the state at time k/n

  const double* row(std::size_t k) const { return values.data() + k * dim; }
  Vec state(std::size_t k) const;
  double horizon() const {
    return static_cast<double>(steps) / static_cast<double>(n);
  }
};

// ceil with a small relative snap so grid-aligned times map to the exact
// grid index instead of spilling one step over on floating-point dust.
std::size_t ceil_grid_index(double v);

// One Euler update: x + a(x)/n + b(x) xi / sqrt(n).
Vec euler_step(const DiffusionModel& model, const Vec& x, const Vec& xi,
               std::size_t n);

// Simulate ceil(n T) steps from x0. The innovation for the step into row k
// is drawn from the stream (seed, path_index, k). Throws diverged_path_error
// at the first non-finite state. With mirror_innovations the sampled
// innovations are negated (the component choice of a scale mixture is kept),
// which is the antithetic partner of the unmirrored path.
ChainPath simulate_chain(const DiffusionModel& model, const InnovationLaw& law,
                         const Vec& x0, double T, std::size_t n,
                         std::uint64_t seed, std::uint64_t path_index,
                         bool mirror_innovations = false);

// Piecewise-linear interpolation between grid rows; t must lie within the
// stored horizon.
Vec path_value(const ChainPath& path, double t);

struct CoefficientReport {
  double min_eigen = 0.0;          // of b b^T over the probes
  double max_eigen = 0.0;
  double max_lipschitz_ratio = 0.0;
  double max_norm = 0.0;           // sup ||b(x)|| over the probes
  bool ellipticity_ok = false;
  bool lipschitz_ok = false;
  bool bound_ok = false;
};
CoefficientReport validate_coefficients(const DiffusionModel& model,
                                        const std::vector<Vec>& probes);

struct InnovationReport {
  Vec mean;
  Mat covariance;
  double max_mean_z = 0.0;       // worst |mean_i| / std_error_i
  double max_cov_dev = 0.0;      // worst |cov_ij - delta_ij|
  double third_moment = 0.0;     // sample E ||xi||^3
  bool mean_ok = false;          // within 4 standard errors
  bool covariance_ok = false;    // within 5 sqrt(2/N) of the identity
  bool third_moment_finite = false;
};
InnovationReport validate_innovation(const InnovationLaw& law, std::size_t dim,
                                     std::size_t samples, std::uint64_t seed);

}  // namespace ltmc
