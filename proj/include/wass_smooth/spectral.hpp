#pragma once

// Special functions and spectral data of the sphere S^d and the torus T^d.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wass_smooth {

/// Laplace eigendata of S^d at degree `ell`: eigenvalue ell(ell+d-1) and the
/// dimension of the degree-ell harmonic space.
struct SphereEigen {
  int ell = 0;
  double lambda = 0.0;
  std::uint64_t mult = 1;
};

/// Exact binomial coefficient in 128-bit arithmetic. Throws ErrorKind::overflow
/// when the value does not fit.
unsigned __int128 binomial_u128(std::uint64_t n, std::uint64_t k);

/// Gegenbauer polynomial C_ell^{(lambda)}(t) by the forward three-term
/// recurrence. |t| may exceed 1 by at most 1e-12 (clamped).
double gegenbauer_eval(double lambda, int ell, double t);

/// Jacobi polynomial P_ell^{(alpha,beta)}(t), alpha, beta > -1.
double jacobi_eval(double alpha, double beta, int ell, double t);

SphereEigen sphere_eigen(int d, int ell);

/// Zonal kernel Z_ell(t) = sum_m phi_{ell,m}(x) conj(phi_{ell,m}(y)) with
/// t = <x,y>. Z_ell(1) equals the multiplicity exactly.
double zonal_eval(int d, int ell, double t);

/// Fills out[ell] = Z_ell(t) for ell = 0..out.size()-1 with a single pass of
/// the recurrence.
void zonal_sequence(int d, double t, std::span<double> out);

/// log(Gamma(a) / Gamma(b)) for a, b > 0.
double log_gamma_ratio(double a, double b);

/// Nonzero integer vectors of Z^d with |k| <= max_norm, grouped by squared norm.
class LatticeShells {
 public:
  struct Shell {
    std::int64_t norm2 = 0;
    std::vector<int> coords;  // row-major, dim entries per point

    std::size_t size(int dim) const { return coords.size() / static_cast<std::size_t>(dim); }
  };

  static constexpr std::size_t default_cap = 1'000'000;

  LatticeShells(int dim, double max_norm, std::size_t point_cap = default_cap);

  int dim() const noexcept { return dim_; }
  double max_norm() const noexcept { return max_norm_; }
  std::size_t point_count() const noexcept { return count_; }

  auto begin() const noexcept { return shells_.begin(); }
  auto end() const noexcept { return shells_.end(); }
  const std::vector<Shell>& shells() const noexcept { return shells_; }

 private:
  int dim_;
  double max_norm_;
  std::size_t count_ = 0;
  std::vector<Shell> shells_;
};

LatticeShells lattice_shells(int dim, double max_norm,
                             std::size_t point_cap = LatticeShells::default_cap);

}  // namespace wass_smooth
