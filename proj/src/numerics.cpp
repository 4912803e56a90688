#include "basket/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace basket {

namespace {

// Lanczos coefficients (g = 7, 9 terms), good to ~1e-15 relative for x >= 0.5.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kPi = 3.14159265358979323846264338327950288;

double log_gamma_lanczos(double x) {
  // Valid for x >= 0.5.
  const double g = 7.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
  const double t = x - 0.5 + g;
  return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(kPi / std::sin(kPi * x)) - log_gamma_lanczos(1.0 - x);
  }
  return log_gamma_lanczos(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("log_beta: shapes must be positive");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_pdf(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta_pdf: shapes must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("beta_pdf: x must lie in [0,1]");
  if (x == 0.0) return a < 1.0 ? HUGE_VAL : (a == 1.0 ? std::exp(-log_beta(a, b)) : 0.0);
  if (x == 1.0) return b < 1.0 ? HUGE_VAL : (b == 1.0 ? std::exp(-log_beta(a, b)) : 0.0);
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cont_frac(double a, double b, double x) {
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 2000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double beta_cdf(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta_cdf: shapes must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("beta_cdf: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double front = std::exp(log_front);
  // The continued fraction converges fast only below the distribution's bulk;
  // use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the far side.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

double beta_quantile(double p, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta_quantile: shapes must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("beta_quantile: p must lie in [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  // Start at the mean; Newton steps bracketed by bisection.
  double x = a / (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = beta_cdf(x, a, b) - p;
    if (std::fabs(f) < 1e-14) break;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (hi - lo < 1e-16) break;
    const double dens = beta_pdf(x, a, b);
    double next = (dens > 0.0 && std::isfinite(dens)) ? x - f / dens : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

}  // namespace basket
