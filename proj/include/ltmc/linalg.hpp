#pragma once
// Small dense vector/matrix helpers. Dimensions here are tiny (state spaces of
// a few coordinates), so everything is plain loops over std::vector storage.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ltmc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2_sq(const Vec& a) { return dot(a, a); }
inline double norm2(const Vec& a) { return std::sqrt(norm2_sq(a)); }

inline double dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Row-major square matrix.
struct Mat {
  std::size_t n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(std::size_t dim, double diag = 0.0) : n(dim), a(dim * dim, 0.0) {
    for (std::size_t i = 0; i < dim; ++i) a[i * dim + i] = diag;
  }
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static Mat identity(std::size_t dim) { return Mat(dim, 1.0); }
};

inline Vec matvec(const Mat& m, const Vec& x) {
  Vec y(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// C = A * B^T, used for forming diffusion matrices sigma = b b^T.
inline Mat mat_abt(const Mat& a, const Mat& b) {
  Mat c(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.n; ++k) s += a(i, k) * b(j, k);
      c(i, j) = s;
    }
  return c;
}

inline double frobenius_norm(const Mat& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

// Eigenvalue range of a symmetric matrix by cyclic Jacobi sweeps.
// Good to machine precision for the small dimensions used here.
inline std::pair<double, double> sym_eigen_range(Mat m) {
  if (m.n == 0) throw std::invalid_argument("sym_eigen_range: empty matrix");
  const std::size_t n = m.n;
  if (n == 1) return {m(0, 0), m(0, 0)};
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = m(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  double lo = m(0, 0), hi = m(0, 0);
  for (std::size_t i = 1; i < n; ++i) {
    lo = std::min(lo, m(i, i));
    hi = std::max(hi, m(i, i));
  }
  return {lo, hi};
}

// Axis-aligned box, the support description for density components.
struct Box {
  Vec lo, hi;

  std::size_t dim() const { return lo.size(); }
  bool contains(const Vec& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

}  // namespace ltmc
