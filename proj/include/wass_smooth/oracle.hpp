#pragma once

// Exact and enclosed Wasserstein distances for small discrete problems.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wass_smooth/measures.hpp"

namespace wass_smooth {

enum class OtMethod { circle_exact, lp_exact, bottleneck, enclosure };

const char* to_string(OtMethod m) noexcept;

struct PlanEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double mass = 0.0;
};

struct OtResult {
  double value = 0.0;
  double error_radius = 0.0;
  OtMethod method = OtMethod::lp_exact;
  std::vector<PlanEntry> plan;
  double p = 1.0;
  double cost = 0.0;  // value^p for finite p
  // Dual potentials of the LP (lp_exact only): f_i + g_j <= c_ij.
  std::vector<double> dual_f;
  std::vector<double> dual_g;
  bool radius_heuristic = false;  // error radius measured rather than proved

  double lower() const noexcept { return value > error_radius ? value - error_radius : 0.0; }
  double upper() const noexcept { return value + error_radius; }
};

/// Geodesic distance on T^d or S^d.
struct CostMetric {
  Space space = Space::torus;
  int dim = 1;

  double operator()(std::span<const double> x, std::span<const double> y) const;
  double diameter() const;
};

double torus_distance(std::span<const double> x, std::span<const double> y);
double sphere_distance(std::span<const double> x, std::span<const double> y);

/// Exact W_1 on the circle T^1. Either side may be the volume measure.
OtResult circle_w1(const Measure& mu, const Measure& nu);

/// Exact W_p on the circle for discrete measures, p >= 1.
OtResult circle_wp(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

/// Exact W_p by a transportation simplex on the N x M geodesic cost matrix.
OtResult discrete_wp(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

/// Exact W-infinity: smallest distance threshold admitting a coupling, decided
/// by max-flow on an integer weight grid.
OtResult discrete_winf(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct CertificateCheck {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double max_violation = 0.0;      // max(f_i + g_j - c_ij)
  double marginal_error = 0.0;     // max deviation of plan marginals
  bool ok = false;
};

/// Recomputes costs and checks primal feasibility, dual feasibility and the
/// duality gap of an lp_exact result.
CertificateCheck verify_lp_certificate(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                       const OtResult& result);

struct Quantization {
  DiscreteMeasure measure;
  double error_bound = 0.0;  // bound on W_infinity(measure, Vol)
  bool measured = false;     // true when the bound is a measured covering radius
};

/// Torus: the lattice ((i + 1/2)/m)^d with exact covering radius sqrt(d)/(2m).
/// Sphere S^2: an m-point Fibonacci lattice with 1.5 x the measured covering radius.
Quantization quantize_vol(Space space, int d, int m);

/// W_p(nu, Vol) enclosed as value +- error_radius using a quantized Vol.
/// p = +infinity selects the bottleneck solver.
OtResult wp_vs_vol_enclosure(const DiscreteMeasure& nu, double p, int m);
OtResult wp_vs_vol_enclosure(const DiscreteMeasure& nu, double p, const Quantization& vol);

/// Certified lower bound on min_x nu(B(x, r)) over closed balls on T^d, using a
/// grid net of m points per axis and the inclusion B(y, r - h) in B(x, r).
double torus_ball_mass_lower(const DiscreteMeasure& nu, double r, int m);

}  // namespace wass_smooth
