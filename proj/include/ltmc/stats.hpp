#pragma once
// Sample statistics over per-path slot arrays. Accumulation is sequential in
// slot order so summaries are bitwise reproducible.

#include <cstddef>
#include <vector>

namespace ltmc {

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;   // unbiased
  double std_error = 0.0;  // sqrt(variance / count)
  std::size_t count = 0;
};

SampleSummary summarize(const std::vector<double>& xs);

// Two-sample Kolmogorov-Smirnov distance sup_t |F_a(t) - F_b(t)|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Large-sample critical value c(alpha) * sqrt((n+m)/(n m)).
double ks_critical(std::size_t n, std::size_t m, double alpha);

// Least squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ltmc
