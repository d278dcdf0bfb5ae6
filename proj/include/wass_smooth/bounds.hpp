#pragma once

// Smoothing-inequality upper bounds on W_p for the torus, the sphere and
// generic compact manifolds given spectral data.

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "wass_smooth/measures.hpp"

namespace wass_smooth {

/// p may be +infinity (W-infinity bounds only).
struct BoundParams {
  double p = 1.0;
  double c = 0.0;  // mu >= c Vol
  double b = 0.0;  // nu(B) >= b for closed balls of radius r
  double r = 0.0;
  int d = 1;

  bool p_is_inf() const noexcept;
  double q() const noexcept;   // conjugate exponent
  double q0() const noexcept;  // min{q, 2}
};

struct BoundReport {
  std::string kind;
  double value = 0.0;
  double smoothing_param = 0.0;
  double c1_term = 0.0;
  double fourier_term = 0.0;
  double tail_contribution = 0.0;
  double series_retained = 0.0;  // retained part of the Fourier series
  double series_tail = 0.0;      // certified majorant of the omitted part
  bool tail_certified = true;
  bool tail_target_met = true;  // tail within the evaluator tolerance of the retained sum
  std::map<std::string, double> constants;
  bool valid = true;
  std::string reason;
  bool vacuous = false;  // value exceeds the diameter of the space
};

struct ManifoldConstants {
  double A = 0.0;     // Ricci >= -(d-1) A
  double diam = 0.0;
  std::optional<double> K_weyl;
  std::optional<double> K_poincare;
};

// --- shared constants ----------------------------------------------------------

/// p (c^{1/p} - delta^{1/p}) / (c - delta), with the limit c^{-1/q} near delta = c.
double c2_factor(double p, double c, double delta);

/// (log c - log delta) / (c - delta), with the limit 1/c near delta = c.
double winf_c2_factor(double c, double delta);

/// min{ b e^{-r^2/(4t)} / (4 pi t)^{d/2}, c }
double heat_delta(int d, double t, double b, double r, double c);

/// min{ b Gamma((d+2)/2) 2^{d+1} / (27 pi^{d/2} T^d), c }
double torus_winf_delta(int d, double T, double b, double c);

/// min{ b 9^d / (114 d! 2^{d^2/4 + d/4} T^d), c }, evaluated in log space.
double sphere_winf_delta(int d, double T, double b, double c);

/// min{ b sup_sigma Phi(sigma), c } for the heat-kernel lower bound at distance r
/// on a manifold with Ricci >= -(d-1) A.
double heat_lower_delta(double A, int d, double t, double r, double b, double c);

double torus_jackson_c1(int d, double p, double c);
double torus_jackson_h0(double p);
double torus_heat_c1(int d, double p, double c);
double sphere_heat_c1(int d, double p, double c);
double sphere_projection_c1(int d, double p, double c);

/// C = 14 d max{ d log(100 d), p }, returned as C / t.
double design_bound(int d, double p, int t);

// --- evaluators ------------------------------------------------------------------

/// Largest tail-to-retained ratio accepted by the heat evaluators.
inline constexpr double kHeatTailTolerance = 1e-11;

BoundReport bound_torus_jackson(const TorusSpectrumDiff& diff, const BoundParams& params, int H);
BoundReport bound_torus_heat(const TorusSpectrumDiff& diff, const BoundParams& params, double t);
/// Returns valid = false with a reason when c, b or T violate the hypotheses.
BoundReport bound_torus_winf(const TorusSpectrumDiff& diff, const BoundParams& params, double T);

BoundReport bound_sphere_heat(const SphereEnergySeq& seq, const BoundParams& params, double t);
BoundReport bound_sphere_projection(const SphereEnergySeq& seq, const BoundParams& params, int L);
/// Returns valid = false with a reason when d, c, b, r or T violate the hypotheses.
BoundReport bound_sphere_winf(const SphereEnergySeq& seq, const BoundParams& params, double T);

BoundReport bound_manifold_heat_p_le2(const GenericSpectrumDiff& diff, const BoundParams& params,
                                      const ManifoldConstants& mc, double t);
BoundReport bound_manifold_heat_p_gt2(const GenericSpectrumDiff& diff, const BoundParams& params,
                                      const ManifoldConstants& mc, double t);

// --- optimizer -------------------------------------------------------------------

struct OptimizeResult {
  double param = 0.0;
  BoundReport report;
  int evaluations = 0;
};

/// Log-spaced grid over [lo, hi] followed by two golden-section refinements of
/// the best bracket. Hypothesis errors and invalid reports count as skipped
/// points. Ties go to the smaller parameter.
OptimizeResult optimize_bound(const std::function<BoundReport(double)>& eval, double lo, double hi,
                              int grid = 64);

/// Exhaustive search over the integers in [lo, hi] (at most 10^4 of them).
OptimizeResult optimize_bound_int(const std::function<BoundReport(int)>& eval, int lo, int hi);

}  // namespace wass_smooth
