#include "wass_smooth/tails.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "wass_smooth/error.hpp"
#include "wass_smooth/spectral.hpp"

namespace wass_smooth {

namespace {

using std::numbers::pi;

constexpr long kMaxExplicitTerms = 50'000'000;

// Sum g(n) for n >= first, where log g is concave on [concave_from, inf).
// Once past that point the consecutive ratios are nonincreasing, so the
// remainder after n is at most g(n) rho / (1 - rho) with rho = g(n+1)/g(n).
double sum_log_concave_tail(long first, double concave_from, const std::function<double(long)>& g) {
  double sum = 0.0;
  long n = first;
  double gn = g(n);
  for (long iter = 0; iter < kMaxExplicitTerms; ++iter, ++n) {
    sum += gn;
    const double gnext = g(n + 1);
    if (static_cast<double>(n) >= concave_from) {
      if (gn == 0.0) return sum;
      const double rho = gnext / gn;
      if (rho < 1.0) {
        const double rest = gn * rho / (1.0 - rho);
        if (rest <= 1e-3 * sum || rest == 0.0) return sum + rest;
      }
    }
    gn = gnext;
  }
  fail(ErrorKind::resource, "tail majorant did not converge");
}

double log_erfc_upper(double z) {
  if (z < 20.0) return std::log(std::erfc(z));
  // erfc(z) <= exp(-z^2) / (z sqrt(pi)) for z > 0
  return -z * z - std::log(z * std::sqrt(pi));
}

// Closed form of int_N^inf exp(log_pref) s^power exp(-kappa (log s + a)(log s + b)) ds.
double log_quadratic_integral(double log_pref, double power, double kappa, double a, double b,
                              double N) {
  const double e1 = power + 1.0;  // ds = e^u du
  const double m = (e1 - kappa * (a + b)) / (2.0 * kappa);
  const double c0 = kappa * m * m - kappa * a * b;
  const double z = std::sqrt(kappa) * (std::log(N) - m);
  const double log_val = log_pref + c0 + std::log(0.5 * std::sqrt(pi / kappa)) + log_erfc_upper(z);
  return std::exp(log_val);
}

// Smallest s beyond which s^power exp(-kappa (log s + a)(log s + b)) decreases.
double log_quadratic_decreasing_from(double power, double kappa, double a, double b) {
  return std::exp(0.5 * (power / kappa - a - b));
}

double sphere_mult(int d, long ell) {
  // (2l + d - 1)/(d - 1) * binom(l + d - 2, d - 2), evaluated in floating point
  double b = 1.0;
  for (int j = 1; j <= d - 2; ++j) b *= static_cast<double>(ell + j) / j;
  return (2.0 * static_cast<double>(ell) + d - 1.0) / (d - 1.0) * b;
}

// Part of a torus tail coming from lattice points whose sup-norm does not
// exceed floor(R): each such point with |k| > R contributes at most F(R).
double torus_inner_box_part(int d, double R, double F_at_R) {
  const long nR = static_cast<long>(std::floor(R));
  const long n0 = static_cast<long>(std::floor(R / std::sqrt(static_cast<double>(d)))) + 1;
  if (nR < n0) return 0.0;
  const double outer = std::pow(2.0 * nR + 1.0, d);
  const double inner = std::pow(2.0 * n0 - 1.0, d);
  return F_at_R * (outer - inner);
}

void check_window(double R) {
  if (!(R >= 1.0)) fail(ErrorKind::domain, "tail window radius must be at least 1");
}

}  // namespace

double box_shell_count(int d, long n) {
  if (n == 0) return 1.0;
  return std::pow(2.0 * n + 1.0, d) - std::pow(2.0 * n - 1.0, d);
}

double torus_winf_weight(int d, double T, double knorm) {
  const double threshold = (d + 3.0) / (pi * T);
  if (knorm < threshold) return 1.0;
  const double x = pi * T * knorm;
  const double e = -(d + 1.0) / (4.0 * std::log(2.0)) * std::log(x / (d + 3.0)) *
                   std::log(std::exp(2.0) * x / (d + 2.0));
  return std::exp(e);
}

double sphere_winf_weight(int d, double T, int ell) {
  const double p2 = std::ldexp(1.0, d + 2);
  if (static_cast<double>(ell) <= p2 / T) return 1.0;
  const double x = T * ell;
  return 43.0 * std::exp(-(1.0 / std::log(2.0)) * std::log(x / 16.0) * std::log(x / p2));
}

double torus_heat_tail(int d, double R, double t, double q0) {
  check_window(R);
  const double a = 4.0 * pi * pi * q0 * t;
  const auto F = [&](double s) { return std::pow(1.0 / (pi * s), q0) * std::exp(-a * s * s); };
  const double inner = torus_inner_box_part(d, R, F(R));
  const long start = static_cast<long>(std::floor(R)) + 1;
  // log(cnt(n)) is concave, -q0 log n has curvature q0/n^2, -a n^2 has -2a.
  const double concave_from = std::sqrt(q0 / (2.0 * a)) + 1.0;
  const double outer = sum_log_concave_tail(
      start, concave_from, [&](long n) { return box_shell_count(d, n) * F(static_cast<double>(n)); });
  return inner + outer;
}

double torus_winf_tail(int d, double R, double T) {
  check_window(R);
  const auto F = [&](double s) { return torus_winf_weight(d, T, s) / (pi * s); };
  const double inner = torus_inner_box_part(d, R, F(R));

  // Beyond the A_k threshold: box-shell count <= 2d 3^{d-1} n^{d-1}, so the
  // summand is dominated by c s^{d-2} exp(-kappa (log s + alpha)(log s + beta)).
  const double kappa = (d + 1.0) / (4.0 * std::log(2.0));
  const double alpha = std::log(pi * T / (d + 3.0));
  const double beta = alpha + 2.0 + std::log((d + 3.0) / (d + 2.0));
  const double log_pref = std::log(2.0 * d * std::pow(3.0, d - 1) / pi);
  const double threshold = (d + 3.0) / (pi * T);
  const double dec = log_quadratic_decreasing_from(d - 2.0, kappa, alpha, beta);
  const long nR = static_cast<long>(std::floor(R));
  const long n_switch =
      std::max(nR, static_cast<long>(std::ceil(std::max(threshold, dec))));
  if (n_switch - nR > kMaxExplicitTerms) fail(ErrorKind::resource, "W-infinity tail window too large");

  double explicit_part = 0.0;
  for (long n = nR + 1; n <= n_switch; ++n) {
    explicit_part += box_shell_count(d, n) * F(static_cast<double>(n));
  }
  const double integral =
      log_quadratic_integral(log_pref, d - 2.0, kappa, alpha, beta, static_cast<double>(n_switch));
  return inner + explicit_part + integral;
}

double sphere_heat_tail(int d, int L, double t, double q0) {
  if (L < 0) fail(ErrorKind::domain, "degree window must be nonnegative");
  const auto g = [&](long ell) {
    const double lam = static_cast<double>(ell) * static_cast<double>(ell + d - 1);
    return sphere_mult(d, ell) * std::exp(-lam * q0 * t) * std::pow(4.0 / lam, 0.5 * q0);
  };
  const double concave_from = 1.0 / std::sqrt(2.0 * t) + 1.0;
  return sum_log_concave_tail(static_cast<long>(L) + 1, concave_from, g);
}

double sphere_winf_tail(int d, int L, double T) {
  if (L < 0) fail(ErrorKind::domain, "degree window must be nonnegative");
  const auto term = [&](long ell) {
    const double lam = static_cast<double>(ell) * static_cast<double>(ell + d - 1);
    return sphere_winf_weight(d, T, static_cast<int>(ell)) * 2.0 * sphere_mult(d, ell) / std::sqrt(lam);
  };
  // d_ell / sqrt(lambda_ell) <= (d+1)(d-1)^{d-3}/(d-2)! ell^{d-2} for ell >= 1
  double fact = 1.0;
  for (int j = 2; j <= d - 2; ++j) fact *= j;
  const double cprime = (d + 1.0) * std::pow(d - 1.0, d - 3) / fact;
  const double kappa = 1.0 / std::log(2.0);
  const double alpha = std::log(T / 16.0);
  const double beta = std::log(T / std::ldexp(1.0, d + 2));
  const double log_pref = std::log(2.0 * 43.0 * cprime);
  const double threshold = std::ldexp(1.0, d + 2) / T;
  const double dec = log_quadratic_decreasing_from(d - 2.0, kappa, alpha, beta);
  const long n_switch =
      std::max<long>(L, static_cast<long>(std::ceil(std::max(threshold, dec))));
  if (n_switch - L > kMaxExplicitTerms) fail(ErrorKind::resource, "W-infinity tail window too large");
  double explicit_part = 0.0;
  for (long ell = static_cast<long>(L) + 1; ell <= n_switch; ++ell) explicit_part += term(ell);
  return explicit_part +
         log_quadratic_integral(log_pref, d - 2.0, kappa, alpha, beta, static_cast<double>(n_switch));
}

double torus_shell_tail(int d, int first_shell, double t, double q, double gamma, double a) {
  const auto h = [&](long ell) {
    const double x = (static_cast<double>(ell) + 1.0) / (2.0 * pi);
    if (x <= 1.0 || ell == 0) return 0.0;  // every nonzero k has 2 pi |k| >= 2 pi
    const double count = std::pow(2.0 * x + 1.0, d);
    const double l2 = static_cast<double>(ell) * static_cast<double>(ell);
    const double shell = count * 4.0 * std::exp(-2.0 * l2 * t) / (l2 + a);
    return std::pow(static_cast<double>(ell) + 1.0, gamma) * std::pow(shell, 0.5 * q);
  };
  const long start = std::max<long>(first_shell, 0);
  const double concave_from = std::max(7.0, 1.0 / std::sqrt(2.0 * t) + 1.0);
  return sum_log_concave_tail(start, concave_from, h);
}

}  // namespace wass_smooth
