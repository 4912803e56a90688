#pragma once

namespace basket {

// Closed interval on the unit line, used for credible intervals.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool operator==(const Interval&) const = default;
};

// Natural log of the gamma function for x > 0 (Lanczos approximation,
// reflection formula below 0.5).
double log_gamma(double x);

// Natural log of the beta function B(a, b), a > 0, b > 0.
double log_beta(double a, double b);

// Density of Beta(a, b) at x.
double beta_pdf(double x, double a, double b);

// Regularized incomplete beta function I_x(a, b), evaluated by continued
// fraction with the usual symmetry split. Absolute accuracy ~1e-13.
double beta_cdf(double x, double a, double b);

// Inverse of beta_cdf in x: returns x with I_x(a, b) = p, found by a
// bisection-safeguarded Newton iteration.
double beta_quantile(double p, double a, double b);

}  // namespace basket
