#include "ltmc/diffusion.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ltmc/errors.hpp"

namespace ltmc {

DiffusionModel DiffusionModel::brownian(std::size_t dim) {
  return scaled_brownian(dim, 1.0);
}

DiffusionModel DiffusionModel::scaled_brownian(std::size_t dim, double c) {
  if (dim == 0) throw std::invalid_argument("scaled_brownian: dim must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("scaled_brownian: scale must be positive");
  DiffusionModel m;
  m.dim = dim;
  m.drift = [dim](const Vec&) { return Vec(dim, 0.0); };
  m.diffusion = [dim, c](const Vec&) {
    Mat b = Mat::identity(dim);
    for (double& v : b.a) v *= c;
    return b;
  };
  m.ellipticity_lo = c * c;
  m.ellipticity_hi = c * c;
  m.lipschitz_const = 0.0;
  m.sup_bound = c * std::sqrt(static_cast<double>(dim));
  return m;
}

DiffusionModel DiffusionModel::sine_diffusion_1d(double base, double amplitude) {
  if (!(base - std::abs(amplitude) > 0.0))
    throw std::invalid_argument("sine_diffusion_1d: base must exceed |amplitude|");
  DiffusionModel m;
  m.dim = 1;
  m.drift = [](const Vec&) { return Vec(1, 0.0); };
  m.diffusion = [base, amplitude](const Vec& x) {
    Mat b(1);
    b(0, 0) = base + amplitude * std::sin(x[0]);
    return b;
  };
  const double lo = base - std::abs(amplitude);
  const double hi = base + std::abs(amplitude);
  m.ellipticity_lo = lo * lo;
  m.ellipticity_hi = hi * hi;
  m.lipschitz_const = std::abs(amplitude);
  m.sup_bound = hi;
  return m;
}

DiffusionModel DiffusionModel::with_constant_drift(Vec a0) const {
  if (a0.size() != dim)
    throw std::invalid_argument("with_constant_drift: dimension mismatch");
  DiffusionModel m = *this;
  m.drift = [a0](const Vec&) { return a0; };
  return m;
}

InnovationLaw InnovationLaw::standard_gaussian() { return InnovationLaw{}; }

InnovationLaw InnovationLaw::gaussian_scale_mixture(std::vector<double> weights,
                                                    std::vector<double> scales) {
  if (weights.empty() || weights.size() != scales.size())
    throw std::invalid_argument("gaussian_scale_mixture: need matching nonempty weights/scales");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("gaussian_scale_mixture: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("gaussian_scale_mixture: weights must sum to one");
  for (double s : scales)
    if (!(s > 0.0)) throw std::invalid_argument("gaussian_scale_mixture: scales must be positive");
  InnovationLaw law;
  law.weights_ = std::move(weights);
  law.scales_ = std::move(scales);
  law.cum_.resize(law.weights_.size());
  double c = 0.0;
  for (std::size_t i = 0; i < law.weights_.size(); ++i) {
    c += law.weights_[i];
    law.cum_[i] = c;
  }
  law.cum_.back() = 1.0;
  return law;
}

InnovationLaw InnovationLaw::default_mixture() {
  // equal-weight mix of variances 1/2 and 3/2, identity covariance overall
  return gaussian_scale_mixture({0.5, 0.5}, {std::sqrt(0.5), std::sqrt(1.5)});
}

void InnovationLaw::sample(RngStream& rng, Vec& out) const {
  double scale = 1.0;
  if (!scales_.empty()) {
    const double u = rng.uniform();
    std::size_t i = 0;
    while (i + 1 < cum_.size() && u > cum_[i]) ++i;
    scale = scales_[i];
  }
  for (double& v : out) v = scale * rng.gaussian();
}

double InnovationLaw::covariance_scale() const {
  if (scales_.empty()) return 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    s += weights_[i] * scales_[i] * scales_[i];
  return s;
}

Vec ChainPath::state(std::size_t k) const {
  if (k > steps) throw std::out_of_range("ChainPath::state: index past end");
  return Vec(row(k), row(k) + dim);
}

std::size_t ceil_grid_index(double v) {
  if (!(v >= 0.0)) throw std::invalid_argument("ceil_grid_index: negative argument");
  const double snapped = v - 1e-9 * std::max(1.0, std::abs(v));
  const double c = std::ceil(snapped);
  return c <= 0.0 ? 0 : static_cast<std::size_t>(c);
}

Vec euler_step(const DiffusionModel& model, const Vec& x, const Vec& xi,
               std::size_t n) {
  const std::size_t d = model.dim;
  if (x.size() != d || xi.size() != d)
    throw std::invalid_argument("euler_step: dimension mismatch");
  const double inv_n = 1.0 / static_cast<double>(n);
  const double root = std::sqrt(inv_n);
  Vec a = model.drift(x);
  Mat b = model.diffusion(x);
  Vec next(d);
  for (std::size_t i = 0; i < d; ++i) {
    double diff = 0.0;
    for (std::size_t j = 0; j < d; ++j) diff += b(i, j) * xi[j];
    next[i] = x[i] + a[i] * inv_n + diff * root;
  }
  return next;
}

ChainPath simulate_chain(const DiffusionModel& model, const InnovationLaw& law,
                         const Vec& x0, double T, std::size_t n,
                         std::uint64_t seed, std::uint64_t path_index,
                         bool mirror_innovations) {
  if (n == 0) throw std::invalid_argument("simulate_chain: n must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("simulate_chain: horizon must be positive");
  if (x0.size() != model.dim)
    throw std::invalid_argument("simulate_chain: start point dimension mismatch");
  const std::size_t steps = ceil_grid_index(static_cast<double>(n) * T);
  ChainPath path;
  path.n = n;
  path.steps = steps;
  path.dim = model.dim;
  path.values.resize((steps + 1) * model.dim);
  std::copy(x0.begin(), x0.end(), path.values.begin());
  Vec x = x0;
  Vec xi(model.dim);
  for (std::size_t k = 1; k <= steps; ++k) {
    RngStream rng(seed, path_index, k);
    law.sample(rng, xi);
    if (mirror_innovations)
      for (double& v : xi) v = -v;
    x = euler_step(model, x, xi, n);
    for (double v : x) {
      if (!std::isfinite(v)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "non-finite state after step %zu", k);
        throw diverged_path_error(k, buf);
      }
    }
    std::copy(x.begin(), x.end(), path.values.begin() + k * model.dim);
  }
  return path;
}

Vec path_value(const ChainPath& path, double t) {
  const double h = path.horizon();
  if (!(t >= 0.0) || t > h * (1.0 + 1e-12) + 1e-300)
    throw std::out_of_range("path_value: time outside stored horizon");
  double pos = t * static_cast<double>(path.n);
  if (pos > static_cast<double>(path.steps)) pos = static_cast<double>(path.steps);
  const std::size_t k = std::min(static_cast<std::size_t>(pos), path.steps - (path.steps > 0 ? 1 : 0));
  const double frac = pos - static_cast<double>(k);
  const double* lo = path.row(k);
  const double* hi = path.row(std::min(k + 1, path.steps));
  Vec out(path.dim);
  for (std::size_t i = 0; i < path.dim; ++i)
    out[i] = lo[i] + frac * (hi[i] - lo[i]);
  return out;
}

CoefficientReport validate_coefficients(const DiffusionModel& model,
                                        const std::vector<Vec>& probes) {
  if (probes.empty())
    throw std::invalid_argument("validate_coefficients: need at least one probe");
  CoefficientReport rep;
  rep.min_eigen = std::numeric_limits<double>::infinity();
  rep.max_eigen = 0.0;
  std::vector<Mat> bs;
  bs.reserve(probes.size());
  for (const Vec& x : probes) {
    if (x.size() != model.dim)
      throw std::invalid_argument("validate_coefficients: probe dimension mismatch");
    Mat b = model.diffusion(x);
    if (b.n != model.dim)
      throw std::invalid_argument("validate_coefficients: coefficient dimension mismatch");
    Mat sigma = mat_abt(b, b);
    auto [lo, hi] = sym_eigen_range(sigma);
    rep.min_eigen = std::min(rep.min_eigen, lo);
    rep.max_eigen = std::max(rep.max_eigen, hi);
    rep.max_norm = std::max(rep.max_norm, frobenius_norm(b));
    bs.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      const double dx = dist2(probes[i], probes[j]);
      if (dx < 1e-12) continue;
      Mat diff = bs[i];
      for (std::size_t t = 0; t < diff.a.size(); ++t) diff.a[t] -= bs[j].a[t];
      rep.max_lipschitz_ratio =
          std::max(rep.max_lipschitz_ratio, frobenius_norm(diff) / dx);
    }
  }
  const double tol = 1e-9;
  rep.ellipticity_ok = rep.min_eigen >= model.ellipticity_lo * (1.0 - tol) - tol &&
                       rep.max_eigen <= model.ellipticity_hi * (1.0 + tol) + tol;
  rep.lipschitz_ok = rep.max_lipschitz_ratio <= model.lipschitz_const * (1.0 + tol) + tol;
  rep.bound_ok = rep.max_norm <= model.sup_bound * (1.0 + tol) + tol;
  return rep;
}

InnovationReport validate_innovation(const InnovationLaw& law, std::size_t dim,
                                     std::size_t samples, std::uint64_t seed) {
  if (dim == 0 || samples < 2)
    throw std::invalid_argument("validate_innovation: need dim >= 1 and samples >= 2");
  InnovationReport rep;
  rep.mean.assign(dim, 0.0);
  rep.covariance = Mat(dim);
  Vec xi(dim);
  Vec sum(dim, 0.0);
  Vec sum_sq(dim, 0.0);
  std::vector<double> cross(dim * dim, 0.0);
  double third = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    RngStream rng(seed, s, 0);
    law.sample(rng, xi);
    double nsq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      sum[i] += xi[i];
      sum_sq[i] += xi[i] * xi[i];
      for (std::size_t j = 0; j < dim; ++j) cross[i * dim + j] += xi[i] * xi[j];
      nsq += xi[i] * xi[i];
    }
    third += nsq * std::sqrt(nsq);
  }
  const double inv = 1.0 / static_cast<double>(samples);
  rep.third_moment = third * inv;
  for (std::size_t i = 0; i < dim; ++i) {
    rep.mean[i] = sum[i] * inv;
    for (std::size_t j = 0; j < dim; ++j)
      rep.covariance(i, j) = cross[i * dim + j] * inv - rep.mean[i] * rep.mean[j];
  }
  rep.max_mean_z = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double var = std::max(rep.covariance(i, i), 1e-300);
    const double se = std::sqrt(var * inv);
    rep.max_mean_z = std::max(rep.max_mean_z, std::abs(rep.mean[i]) / se);
  }
  rep.max_cov_dev = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      rep.max_cov_dev = std::max(rep.max_cov_dev, std::abs(rep.covariance(i, j) - target));
    }
  rep.mean_ok = rep.max_mean_z <= 4.0;
  rep.covariance_ok = rep.max_cov_dev <= 5.0 * std::sqrt(2.0 * inv);
  rep.third_moment_finite = std::isfinite(rep.third_moment);
  return rep;
}

}  // namespace ltmc
