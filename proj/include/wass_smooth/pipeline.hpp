#pragma once

// Bound selection: builds the spectral tables a bound needs and evaluates or
// optimizes it over a parameter range.

#include <optional>
#include <string_view>

#include "wass_smooth/bounds.hpp"
#include "wass_smooth/measures.hpp"

namespace wass_smooth {

enum class BoundKind {
  torus_jackson,
  torus_heat,
  torus_winf,
  sphere_projection,
  sphere_heat,
  sphere_winf,
  manifold_le2,
  manifold_gt2,
};

const char* to_string(BoundKind k) noexcept;
BoundKind parse_bound_kind(std::string_view name);
/// Jackson degree H and projection degree L are integers.
bool integer_parameter(BoundKind k) noexcept;

struct BoundSetup {
  BoundKind kind = BoundKind::torus_heat;
  BoundParams params;
  ManifoldConstants manifold;
  double lo = 0.0;  // parameter range; lo == hi evaluates a single point
  double hi = 0.0;
  TailOptions tail;
};

struct BoundTables {
  std::optional<TorusSpectrumDiff> torus;
  std::optional<SphereEnergySeq> sphere;
  std::optional<GenericSpectrumDiff> generic;
  double param_floor = 0.0;  // raised when the lattice cap cannot certify the low end of the range
};

/// Builds the table for the setup's kind, sized for the whole parameter range.
BoundTables build_tables(const BoundSetup& setup, const Measure& mu, const Measure& nu);

/// Same rule, twice the torus window or twice the sphere degree cutoff.
BoundTables widen_tables(const BoundSetup& setup, const BoundTables& tables, const Measure& mu,
                         const Measure& nu);

BoundReport evaluate_bound(const BoundSetup& setup, const BoundTables& tables, double param);

/// Single evaluation when lo == hi, otherwise optimize_bound / optimize_bound_int.
OptimizeResult run_bound(const BoundSetup& setup, const BoundTables& tables);

}  // namespace wass_smooth
