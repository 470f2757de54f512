#include "ltmc/special.hpp"

#include <cmath>
#include <stdexcept>

namespace ltmc {

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;
}

double exp_int_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_int_e1: requires x > 0");
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    double sum = 0.0, term = 1.0;
    for (int k = 1; k <= 40; ++k) {
      term *= x / k;
      double add = term / k;
      sum += (k & 1) ? add : -add;
      if (add < 1e-18 * (std::fabs(sum) + 1e-300)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  if (x > 740.0) return 0.0;  // e^-x underflows; the tail is below denormal range
  // Continued fraction e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))),
  // evaluated by the modified Lentz algorithm.
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k <= 200; ++k) {
    double an = -static_cast<double>(k) * k;
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x) * h;
}

double upper_gamma(double s, double x) {
  if (!(x > 0.0)) throw std::domain_error("upper_gamma: requires x > 0");
  double twice = 2.0 * s;
  if (s < 0.0 || std::fabs(twice - std::nearbyint(twice)) > 1e-12)
    throw std::domain_error("upper_gamma: s must be a nonnegative half-integer");
  int n2 = static_cast<int>(std::nearbyint(twice));
  double base, sb;
  if (n2 % 2 == 0) {
    base = exp_int_e1(x);  // Gamma(0, x)
    sb = 0.0;
  } else {
    base = std::sqrt(M_PI) * std::erfc(std::sqrt(x));  // Gamma(1/2, x)
    sb = 0.5;
  }
  while (sb + 0.5 <= s) {
    // Gamma(sb+1, x) = sb Gamma(sb, x) + x^sb e^-x
    base = sb * base + std::pow(x, sb) * std::exp(-x);
    sb += 1.0;
  }
  return base;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: requires p in (0,1)");
  // AS241 (PPND16): three rational approximations over q-regions.
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    x = num / den;
  }
  return (q < 0.0) ? -x : x;
}

}  // namespace ltmc
