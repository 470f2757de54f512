#pragma once
// Finite Borel measures on the plane used as local-time intensities:
// uniform mass on circles plus bounded densities on boxes, closed under
// finite mixtures. Integration of radial kernels against circle layers is
// reduced to an exact angular parametrization (with exact truncation to a
// ball), so near-singular kernels are handled by one-dimensional adaptive
// quadrature rather than lattice smearing. The scalar weight and majorant
// kernels are parametrized by a general dimension; the measure container
// itself is two-dimensional.

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "ltmc/linalg.hpp"

namespace ltmc {

// w(r): floor-capped log weight in dimension 2, power weight above.
double admissibility_weight(double r, std::size_t dim);

// Radial kernel K(r) to be integrated as K(||y-x||) against a measure.
// `negligible_radius`, when finite, promises K is negligible beyond it so
// integrators may truncate; `kink_radius`, when positive, marks a piecewise
// boundary that quadrature panels should split at.
struct RadialKernel {
  std::function<double(double)> eval;
  double negligible_radius = std::numeric_limits<double>::infinity();
  double kink_radius = 0.0;
};

RadialKernel admissibility_weight_kernel(std::size_t dim);

struct CircleLayer {  // uniform measure of total mass `weight` on a circle
  Vec center;
  double radius = 0.0;
  double weight = 0.0;
};

struct DensityComponent {
  std::function<double(const Vec&)> density;  // nonnegative on `box`
  Box box;
  std::size_t resolution = 200;  // lattice cells per axis
  double mass = 0.0;             // lattice mass, cached at construction
};

class Measure {
 public:
  static Measure circle(Vec center, double radius, double weight);
  static Measure density(std::function<double(const Vec&)> density, Box box,
                         std::size_t resolution);
  static Measure mixture(const std::vector<Measure>& parts);

  std::size_t dim() const { return 2; }
  double total_mass() const;
  double support_radius() const;  // radius of an origin ball covering support
  const std::vector<CircleLayer>& layers() const { return layers_; }
  const std::vector<DensityComponent>& densities() const { return densities_; }

 private:
  Measure() = default;
  std::vector<CircleLayer> layers_;
  std::vector<DensityComponent> densities_;
};

// Concentric circles with radii shrinking as 2^(-k^2) and weights k^(-4):
// summable weighted potential but mass scaling degenerating to exponent zero.
Measure nested_circles_measure(int k_max);
// Circles marching toward the origin (centers 1/k, radii 2^(-k^2), weights
// k^(-2)): the small-ball potential keeps a positive floor near the centers.
Measure marching_circles_measure(int k_max);

// integral of K(||y-x||) over the closed ball ||y-x|| <= delta
double integrate_kernel(const Measure& mu, const RadialKernel& kernel,
                        const Vec& x, double delta, double rel_tol = 1e-9);

// integral of g against the measure (no truncation)
double integrate(const Measure& mu, const std::function<double(const Vec&)>& g,
                 double rel_tol = 1e-9);

// measure of the closed ball of radius r about x (closed form for layers)
double ball_mass(const Measure& mu, const Vec& x, double r);

// integral of -ln||y-x|| against one circle layer, in closed form
double circle_log_potential(const CircleLayer& layer, const Vec& x);

// Deterministic probe points for supremum diagnostics: layer centers,
// on-circle points, half/double-radius rings, pairwise center midpoints,
// density lattices, and the origin.
struct ProbeGrid {
  std::vector<Vec> points;
  void add(const Vec& p);  // deduplicates
  static ProbeGrid for_measure(const Measure& mu);
};

struct SupResult {
  double value = 0.0;
  Vec argmax;
};

// max of f over the points, then greedy compass refinement around the
// argmax at each scale in turn; fully deterministic
SupResult sup_over_points(const std::vector<Vec>& points,
                          const std::function<double(const Vec&)>& f,
                          const std::vector<double>& refine_scales);

// sup_x of the weighted potential over the unit ball about x
SupResult uniform_potential_sup(const Measure& mu, const ProbeGrid& grid);

// sup_x of the weighted potential over balls of shrinking radius delta.
// All rows are evaluated on one shared point set (the grid plus every
// refinement point discovered at any delta), so the column is monotone in
// delta by construction and differences reflect the measure, not the scan.
struct PotentialRow {
  double delta = 0.0;
  double sup = 0.0;
  Vec argmax;
};
std::vector<PotentialRow> small_ball_potential_table(
    const Measure& mu, const ProbeGrid& grid, const std::vector<double>& deltas);

// Log-log fit of sup_x mu(B(x, r)) against r. The radii must span at least
// two decades; entries with zero supremum are excluded from the fit.
struct MassScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  std::vector<double> radii;
  std::vector<double> sup_masses;
  bool valid = false;
};
MassScalingFit mass_scaling_fit(const Measure& mu, const ProbeGrid& grid,
                                const std::vector<double>& radii);

// integral over (y, infinity) of u^(m/2-2) [exp(-alpha u) + (1+u^(m/2))^(-1)]
double tail_majorant(double y, std::size_t dim, double alpha);

// 2^(m/2) c1 z^(2-m) tail_majorant(z^2/delta): truncated-potential bound
double truncated_potential_majorant(double z, double delta, std::size_t dim,
                                    double alpha, double c1);

}  // namespace ltmc
