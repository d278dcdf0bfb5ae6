#pragma once

// Spherical t-designs: harmonic residual checks and the design-based W_p bound.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "wass_smooth/measures.hpp"
#include "wass_smooth/oracle.hpp"

namespace wass_smooth {

struct DesignReport {
  int t = 0;
  double tol = 1e-10;
  std::vector<std::pair<int, double>> residuals;  // (ell, E_ell(nu_N, Vol))
  bool is_design = false;
  double max_residual = 0.0;
  // Filled by corollary_verify.
  std::optional<double> p;
  std::optional<double> corollary_bound;
  std::optional<OtResult> oracle_enclosure;
  std::optional<bool> bound_holds;  // enclosure lower end <= corollary_bound
};

/// Residuals E_ell(points, Vol) for 1 <= ell <= t. Points must carry uniform weights.
DesignReport design_check(const DiscreteMeasure& points, int t, double tol = 1e-10);

/// tetrahedron, octahedron, cube, icosahedron (strengths 2, 3, 3, 5).
DiscreteMeasure known_design(std::string_view name);

/// Claimed strength of a known design.
int known_design_strength(std::string_view name);

/// Checks the design at 1e-8, then compares C/t against the oracle enclosure of W_p(points, Vol).
DesignReport corollary_verify(const DiscreteMeasure& points, int t, double p, int m);

}  // namespace wass_smooth
