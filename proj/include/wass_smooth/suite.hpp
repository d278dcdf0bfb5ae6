#pragma once

// Seeded random soundness experiments: optimized bounds against exact or
// enclosed transport distances.
//
// Instances: N = 2 + (raw mod 11) atoms with uniform weights per measure, drawn
// uniformly on the torus or as normalized Gaussian vectors on S^2. Each
// instance has its own generator seeded with (seed, instance id).
// Pairs: "emp-emp" (mu, nu both random, c = 0, p = 1 only) and "vol-emp"
// (mu = Vol, c = 1, nu random).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wass_smooth/measures.hpp"

namespace wass_smooth {

enum class SuiteSpace { torus1, torus2, sphere2 };

const char* to_string(SuiteSpace s) noexcept;
SuiteSpace parse_suite_space(std::string_view name);

struct SuiteConfig {
  std::uint64_t seed = 0;
  int n = 0;
  SuiteSpace space = SuiteSpace::torus1;
  std::vector<double> ps{1.0};
  int threads = 0;           // 0: WASS_SMOOTH_THREADS, else hardware concurrency
  bool widen_check = false;  // re-evaluate heat bounds on doubled tables
};

struct SuiteInstance {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

SuiteInstance make_instance(SuiteSpace space, std::uint64_t seed, int id);

struct SuiteRow {
  int instance = 0;
  SuiteSpace space = SuiteSpace::torus1;
  double p = 1.0;
  std::string pair;
  std::string bound_kind;
  double param = 0.0;
  double bound = 0.0;
  double oracle = 0.0;  // exact value, or the lower end of an enclosure
  bool oracle_exact = true;
  double ratio = 0.0;   // oracle / bound
  bool violated = false;
  std::optional<double> widened_bound;
};

std::vector<SuiteRow> run_soundness(const SuiteConfig& cfg);

/// Columns: instance,space,p,pair,bound_kind,param,bound,oracle,ratio,violated
void write_soundness_csv(std::ostream& out, const std::vector<SuiteRow>& rows);

/// requested > 0 wins; then WASS_SMOOTH_THREADS; then hardware concurrency.
int worker_count(int requested = 0);

}  // namespace wass_smooth
