#pragma once

namespace hazbands {

// Standard normal CDF.
double norm_cdf(double x);

// Standard normal quantile, accurate to full double precision
// (rational approximation plus one Halley refinement).
double norm_quantile(double p);

// Regularized lower incomplete gamma P(a, x).
double lower_reg_gamma(double a, double x);

// CDF of Gamma(shape, rate) at x.
double gamma_cdf(double x, double shape, double rate);

}  // namespace hazbands
