#pragma once

// Measures on T^d and S^d and their Fourier data.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace wass_smooth {

enum class Space { torus, sphere };

const char* to_string(Space s) noexcept;

/// Normalized volume measure of T^d or S^d, represented symbolically.
struct UniformVol {
  Space space = Space::torus;
  int dim = 1;
};

/// Weighted atoms on T^d (coordinates in [0,1)^d) or S^d (unit vectors in
/// R^{d+1}). Weights are nonnegative and sum to one.
class DiscreteMeasure {
 public:
  /// Coordinates are reduced mod 1. Empty `weights` means uniform.
  static DiscreteMeasure torus(int d, std::vector<double> coords, std::vector<double> weights = {});

  /// Points within 1e-9 of the unit sphere are renormalized; others are rejected.
  static DiscreteMeasure sphere(int d, std::vector<double> coords, std::vector<double> weights = {});

  Space space() const noexcept { return space_; }
  int dim() const noexcept { return dim_; }
  int ambient_dim() const noexcept { return space_ == Space::torus ? dim_ : dim_ + 1; }
  std::size_t size() const noexcept { return weights_.size(); }

  std::span<const double> point(std::size_t i) const noexcept {
    const auto a = static_cast<std::size_t>(ambient_dim());
    return {coords_.data() + i * a, a};
  }
  double weight(std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// All weights equal (within 1e-12 absolute).
  bool uniform_weights() const noexcept;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  DiscreteMeasure(Space s, int d, std::vector<double> coords, std::vector<double> weights);

  Space space_;
  int dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

using Measure = std::variant<DiscreteMeasure, UniformVol>;

Space space_of(const Measure& m) noexcept;
int dim_of(const Measure& m) noexcept;
bool is_vol(const Measure& m) noexcept;
bool same_measure(const Measure& a, const Measure& b) noexcept;

// --- torus -----------------------------------------------------------------

/// mu^(k) = sum_n w_n exp(-2 pi i <k, a_n>).
std::complex<double> torus_fourier(const Measure& m, std::span<const int> k);

/// Which series a coefficient table must serve; decides how the window grows.
struct TailRule {
  enum class Kind { jackson_window, heat, winf, projection_window };
  Kind kind = Kind::jackson_window;
  double param = 0.0;  // t for heat, T for winf
  double q0 = 2.0;     // exponent of the heat series

  static TailRule jackson_window() { return {}; }
  static TailRule projection_window() { return {Kind::projection_window, 0.0, 2.0}; }
  static TailRule heat(double t, double q0 = 2.0) { return {Kind::heat, t, q0}; }
  static TailRule winf(double T) { return {Kind::winf, T, 1.0}; }
};

const char* to_string(TailRule::Kind k) noexcept;

struct TailOptions {
  double rel_target = 1e-12;         // tail <= rel_target * retained
  std::size_t point_cap = 1'000'000; // torus lattice points
  int max_ell = 10'000;              // sphere degrees
  bool strict = true;                // false: stop at the cap and certify what remains
};

/// Table k -> mu^(k) - nu^(k) over the lattice ball 0 < |k| <= window.
/// Entries are ordered by sup-norm |k|_inf, then squared norm, then lexicographically.
struct TorusSpectrumDiff {
  int dim = 1;
  double window = 0.0;
  std::vector<int> k;                        // dim entries per row
  std::vector<std::int64_t> norm2;           // |k|^2
  std::vector<int> box_norm;                 // |k|_inf
  std::vector<std::complex<double>> diff;    // mu^(k) - nu^(k)
  TailRule rule;
  double tail_bound = 0.0;  // majorant of the omitted mass for `rule`
  bool identical = false;   // mu == nu: every coefficient vanishes, tails are zero
  bool mu_is_vol = false;
  bool nu_is_vol = false;
  bool tail_target_met = true;  // false when a non-strict build stopped at the point cap

  std::size_t size() const noexcept { return diff.size(); }
  std::span<const int> index(std::size_t i) const noexcept {
    return {k.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  std::optional<std::complex<double>> at(std::span<const int> kk) const;
};

/// Builds the difference table. For heat/winf rules the window grows until the
/// certified tail is at most opts.rel_target of the retained series.
TorusSpectrumDiff torus_diff_table(const Measure& mu, const Measure& nu, double max_norm,
                                   TailRule rule, const TailOptions& opts = {});

/// Retained part of the torus heat series over the table's window.
double torus_heat_series(const TorusSpectrumDiff& diff, double t, double q0);
/// Retained part of the torus W-infinity series over the table's window.
double torus_winf_series(const TorusSpectrumDiff& diff, double T);

// --- sphere ----------------------------------------------------------------

/// E_ell = sum_m |mu^(ell,m) - nu^(ell,m)|^2 via zonal double sums.
double sphere_energy(const Measure& mu, const Measure& nu, int ell);

struct SphereEnergySeq {
  int dim = 2;
  std::vector<double> energies;  // energies[ell - 1] for 1 <= ell <= max_ell()
  TailRule rule;
  double tail_bound = 0.0;
  bool identical = false;
  bool mu_is_vol = false;
  bool nu_is_vol = false;
  bool tail_target_met = true;

  int max_ell() const noexcept { return static_cast<int>(energies.size()); }
  double energy(int ell) const { return energies.at(static_cast<std::size_t>(ell - 1)); }
};

/// Energies for 1 <= ell <= L*. L* starts at max_ell and grows for heat/winf
/// rules until the certified tail meets opts.rel_target.
SphereEnergySeq sphere_energy_seq(const Measure& mu, const Measure& nu, int max_ell, TailRule rule,
                                  const TailOptions& opts = {});

/// Energies E_1..E_L by zonal double sums, without clamping or tail logic.
std::vector<double> sphere_energies_raw(const Measure& mu, const Measure& nu, int max_ell);

double sphere_heat_series(const SphereEnergySeq& seq, double t, double q0);
double sphere_winf_series(const SphereEnergySeq& seq, double T);

// --- generic spectra ---------------------------------------------------------

/// Eigenvalues Lambda_k > 0 with |mu^(k) - nu^(k)|, for the manifold bounds.
struct GenericSpectrumDiff {
  struct TorusOrigin {
    int dim = 1;
    double window = 0.0;
  };

  std::vector<double> eigenvalues;  // nondecreasing, positive
  std::vector<double> diffs;        // |mu^(k) - nu^(k)|
  bool identical = false;
  /// Set when the spectrum is a torus lattice window; enables tail certificates.
  std::optional<TorusOrigin> torus_origin;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  /// Validates lengths and ordering.
  void validate() const;
};

GenericSpectrumDiff generic_diff_from_torus(const Measure& mu, const Measure& nu, double max_norm);
GenericSpectrumDiff generic_diff_from_table(const TorusSpectrumDiff& table);

}  // namespace wass_smooth
