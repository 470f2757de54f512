#pragma once
// Scalar special functions backing the heat-kernel closed forms.

namespace ltmc {

// Exponential integral E1(x) = int_x^inf e^-u / u du, x > 0.
// Series for x <= 1, modified-Lentz continued fraction above.
double exp_int_e1(double x);

// Upper incomplete gamma Gamma(s, x) for half-integer s >= 0 and x > 0.
// s = 0 reduces to E1, s = 1/2 to sqrt(pi) erfc(sqrt(x)); larger s by
// the upward recurrence Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x.
double upper_gamma(double s, double x);

// Inverse of the standard normal CDF, p in (0,1). AS241 rational
// approximations, accurate to full double precision.
double normal_quantile(double p);

}  // namespace ltmc
