#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/special_functions/spherical_harmonic.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline double lgamma_ratio_hp(double a, double b) {
  return static_cast<double>(boost::multiprecision::lgamma(big(a)) - boost::multiprecision::lgamma(big(b)));
}

// C_l^(lam)(t) from the explicit power sum.
inline double gegenbauer_explicit(double lam, int l, double t) {
  double s = 0.0;
  for (int k = 0; k <= l / 2; ++k) {
    const double lc = std::lgamma(l - k + lam) - std::lgamma(lam) - std::lgamma(k + 1.0) - std::lgamma(l - 2.0 * k + 1.0);
    s += (k % 2 ? -1.0 : 1.0) * std::exp(lc) * std::pow(2.0 * t, l - 2 * k);
  }
  return s;
}

// Sum of absolute terms of the power sum, a scale for comparisons near roots.
inline double gegenbauer_scale(double lam, int l, double t) {
  double s = 0.0;
  for (int k = 0; k <= l / 2; ++k) {
    const double lc = std::lgamma(l - k + lam) - std::lgamma(lam) - std::lgamma(k + 1.0) - std::lgamma(l - 2.0 * k + 1.0);
    s += std::exp(lc) * std::pow(std::abs(2.0 * t), l - 2 * k);
  }
  return s;
}

inline double gen_binom(double n, double k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// P_n^(a,b)(x) = sum_s binom(n+a, n-s) binom(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
inline double jacobi_explicit(double a, double b, int n, double x) {
  double s = 0.0;
  for (int j = 0; j <= n; ++j) {
    s += gen_binom(n + a, n - j) * gen_binom(n + b, j) * std::pow((x - 1.0) / 2.0, j) * std::pow((x + 1.0) / 2.0, n - j);
  }
  return s;
}

// Real orthonormal harmonics on S^2 for the probability measure, from Boost's Y_l^m.
inline std::vector<double> real_harmonics(int l, const double* x) {
  const double theta = std::acos(std::clamp(x[2], -1.0, 1.0));
  const double phi = std::atan2(x[1], x[0]);
  const double norm = std::sqrt(4.0 * M_PI);
  std::vector<double> out;
  for (int m = -l; m <= l; ++m) {
    const auto y = boost::math::spherical_harmonic(l, std::abs(m), theta, phi);
    if (m == 0) out.push_back(norm * y.real());
    if (m > 0) out.push_back(norm * std::sqrt(2.0) * y.real());
    if (m < 0) out.push_back(norm * std::sqrt(2.0) * y.imag());
  }
  return out;
}

// sum_m |mu^(l,m) - nu^(l,m)|^2 with an explicit basis; points are xyz triples.
inline double energy_explicit(int l, const std::vector<double>& a, const std::vector<double>& wa,
                              const std::vector<double>& b, const std::vector<double>& wb) {
  std::vector<double> coef(2 * l + 1, 0.0);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const auto h = real_harmonics(l, &a[3 * i]);
    for (int m = 0; m < 2 * l + 1; ++m) coef[m] += wa[i] * h[m];
  }
  for (std::size_t j = 0; j < wb.size(); ++j) {
    const auto h = real_harmonics(l, &b[3 * j]);
    for (int m = 0; m < 2 * l + 1; ++m) coef[m] -= wb[j] * h[m];
  }
  double e = 0.0;
  for (double c : coef) e += c * c;
  return e;
}

inline double circle_dist(double x, double y) {
  double a = std::fmod(std::abs(x - y), 1.0);
  return std::min(a, 1.0 - a);
}

// Optimal assignment cost over all permutations: uniform measures of equal size.
template <class Cost>
double brute_assignment(int n, Cost cost, bool bottleneck = false) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s = bottleneck ? std::max(s, cost(i, perm[i])) : s + cost(i, perm[i]) / n;
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Golden-section maximization of a unimodal function of u on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi, int iters = 200) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

inline std::vector<double> random_sphere_points(std::mt19937_64& g, int n) {
  std::normal_distribution<double> nd;
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    double v[3] = {nd(g), nd(g), nd(g)};
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double c : v) out.push_back(c / r);
  }
  return out;
}

inline std::vector<double> random_weights(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = u(g);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= s;
  return w;
}

}  // namespace oracle
