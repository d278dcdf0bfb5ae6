#include "wass_smooth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "wass_smooth/error.hpp"

namespace wass_smooth {

namespace {

constexpr double kClampTol = 1e-12;

double clamp_unit(double t) {
  if (!(std::abs(t) <= 1.0 + kClampTol)) {
    fail(ErrorKind::domain, "argument t = " + std::to_string(t) + " outside [-1, 1]");
  }
  return std::clamp(t, -1.0, 1.0);
}

}  // namespace

unsigned __int128 binomial_u128(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    unsigned __int128 next;
    if (__builtin_mul_overflow(r, static_cast<unsigned __int128>(n - k + i), &next)) {
      fail(ErrorKind::overflow, "binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                    ") exceeds 128-bit range");
    }
    r = next / i;  // exact: r * (n-k+i) is divisible by i at every step
  }
  return r;
}

double gegenbauer_eval(double lambda, int ell, double t) {
  if (!(lambda > 0.0)) fail(ErrorKind::domain, "Gegenbauer parameter must be positive");
  if (ell < 0) fail(ErrorKind::domain, "degree must be nonnegative");
  t = clamp_unit(t);
  if (ell == 0) return 1.0;
  if (t == 1.0) {
    // C_ell^{(lambda)}(1) = binom(ell + 2 lambda - 1, ell)
    double v = 1.0;
    for (int j = 1; j <= ell; ++j) v *= (2.0 * lambda - 1.0 + j) / j;
    return v;
  }
  double prev = 1.0;
  double cur = 2.0 * lambda * t;
  for (int n = 2; n <= ell; ++n) {
    const double next = (2.0 * t * (n + lambda - 1.0) * cur - (n + 2.0 * lambda - 2.0) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_eval(double alpha, double beta, int ell, double t) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    fail(ErrorKind::domain, "Jacobi parameters must exceed -1");
  }
  if (ell < 0) fail(ErrorKind::domain, "degree must be nonnegative");
  t = clamp_unit(t);
  if (ell == 0) return 1.0;
  const double ab = alpha + beta;
  double prev = 1.0;
  double cur = (alpha + 1.0) + 0.5 * (ab + 2.0) * (t - 1.0);
  for (int n = 2; n <= ell; ++n) {
    const double c = 2.0 * n + ab;
    const double a1 = 2.0 * n * (n + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * t + alpha * alpha - beta * beta);
    const double a3 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * c;
    const double next = (a2 * cur - a3 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

SphereEigen sphere_eigen(int d, int ell) {
  if (d < 2) fail(ErrorKind::domain, "sphere dimension must be at least 2");
  if (ell < 0) fail(ErrorKind::domain, "degree must be nonnegative");
  const auto du = static_cast<std::uint64_t>(d);
  const auto lu = static_cast<std::uint64_t>(ell);
  const unsigned __int128 hi = binomial_u128(lu + du, du);
  const unsigned __int128 lo = ell >= 2 ? binomial_u128(lu + du - 2, du) : 0;
  const unsigned __int128 mult = hi - lo;
  if (mult > std::numeric_limits<std::uint64_t>::max()) {
    fail(ErrorKind::overflow, "multiplicity exceeds 64-bit range");
  }
  SphereEigen e;
  e.ell = ell;
  e.lambda = static_cast<double>(ell) * static_cast<double>(ell + d - 1);
  e.mult = static_cast<std::uint64_t>(mult);
  return e;
}

double zonal_eval(int d, int ell, double t) {
  if (d < 2) fail(ErrorKind::domain, "sphere dimension must be at least 2");
  t = clamp_unit(t);
  if (t == 1.0) return static_cast<double>(sphere_eigen(d, ell).mult);
  const double scale = (2.0 * ell + d - 1.0) / (d - 1.0);
  return scale * gegenbauer_eval(0.5 * (d - 1), ell, t);
}

void zonal_sequence(int d, double t, std::span<double> out) {
  if (d < 2) fail(ErrorKind::domain, "sphere dimension must be at least 2");
  t = clamp_unit(t);
  if (out.empty()) return;
  if (t == 1.0) {
    for (std::size_t ell = 0; ell < out.size(); ++ell) {
      out[ell] = static_cast<double>(sphere_eigen(d, static_cast<int>(ell)).mult);
    }
    return;
  }
  const double lambda = 0.5 * (d - 1);
  const double dm1 = d - 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * t;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = (2.0 + dm1) / dm1 * cur;
  for (std::size_t n = 2; n < out.size(); ++n) {
    const double nd = static_cast<double>(n);
    const double next = (2.0 * t * (nd + lambda - 1.0) * cur - (nd + 2.0 * lambda - 2.0) * prev) / nd;
    prev = cur;
    cur = next;
    out[n] = (2.0 * nd + dm1) / dm1 * cur;
  }
}

double log_gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorKind::domain, "log_gamma_ratio needs positive arguments");
  if (a == b) return 0.0;
  // Peel integer steps so the two lgamma calls see nearby arguments.
  double acc = 0.0;
  while (a - b >= 1.0 && a > 2.0) {
    a -= 1.0;
    acc += std::log(a);
  }
  while (b - a >= 1.0 && b > 2.0) {
    b -= 1.0;
    acc -= std::log(b);
  }
  return acc + (boost::math::lgamma(a) - boost::math::lgamma(b));
}

LatticeShells::LatticeShells(int dim, double max_norm, std::size_t point_cap)
    : dim_(dim), max_norm_(max_norm) {
  if (dim < 1 || dim > 4) fail(ErrorKind::domain, "lattice dimension must be in [1, 4]");
  if (!(max_norm >= 0.0) || !std::isfinite(max_norm)) {
    fail(ErrorKind::domain, "lattice window must be a finite nonnegative radius");
  }
  const int box = static_cast<int>(std::floor(max_norm));
  const double limit = max_norm * max_norm;
  std::map<std::int64_t, std::vector<int>> grouped;
  std::vector<int> k(static_cast<std::size_t>(dim), -box);
  if (box == 0) return;
  for (;;) {
    std::int64_t n2 = 0;
    for (int c : k) n2 += static_cast<std::int64_t>(c) * c;
    if (n2 > 0 && static_cast<double>(n2) <= limit) {
      if (++count_ > point_cap) {
        fail(ErrorKind::resource, "lattice window of radius " + std::to_string(max_norm) +
                                      " exceeds the cap of " + std::to_string(point_cap) +
                                      " points");
      }
      auto& bucket = grouped[n2];
      bucket.insert(bucket.end(), k.begin(), k.end());
    }
    int axis = dim - 1;
    while (axis >= 0 && k[static_cast<std::size_t>(axis)] == box) {
      k[static_cast<std::size_t>(axis)] = -box;
      --axis;
    }
    if (axis < 0) break;
    ++k[static_cast<std::size_t>(axis)];
  }
  shells_.reserve(grouped.size());
  for (auto& [n2, coords] : grouped) shells_.push_back(Shell{n2, std::move(coords)});
}

LatticeShells lattice_shells(int dim, double max_norm, std::size_t point_cap) {
  return LatticeShells(dim, max_norm, point_cap);
}

}  // namespace wass_smooth
