#include "wass_smooth/designs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wass_smooth/bounds.hpp"
#include "wass_smooth/error.hpp"

namespace wass_smooth {

namespace {

struct Fixture {
  std::string_view name;
  int strength;
};

constexpr Fixture kFixtures[] = {{"tetrahedron", 2}, {"octahedron", 3}, {"cube", 3}, {"icosahedron", 5}};

DiscreteMeasure normalized(const std::vector<double>& raw) {
  std::vector<double> c = raw;
  for (std::size_t i = 0; i < c.size(); i += 3) {
    const double n = std::sqrt(c[i] * c[i] + c[i + 1] * c[i + 1] + c[i + 2] * c[i + 2]);
    for (std::size_t j = 0; j < 3; ++j) c[i + j] /= n;
  }
  return DiscreteMeasure::sphere(2, std::move(c));
}

}  // namespace

DesignReport design_check(const DiscreteMeasure& points, int t, double tol) {
  if (points.space() != Space::sphere || points.dim() < 2) fail(ErrorKind::domain, "designs live on S^d with d ≥ 2");
  if (t < 1) fail(ErrorKind::domain, "design strength must be positive");
  if (!points.uniform_weights()) fail(ErrorKind::domain, "designs are point sets: weights must be uniform");
  DesignReport rep;
  rep.t = t;
  rep.tol = tol;
  const Measure nu = points;
  const Measure vol = UniformVol{Space::sphere, points.dim()};
  for (int ell = 1; ell <= t; ++ell) {
    const double e = std::max(0.0, sphere_energy(nu, vol, ell));
    rep.residuals.emplace_back(ell, e);
    rep.max_residual = std::max(rep.max_residual, e);
  }
  rep.is_design = rep.max_residual <= tol;
  return rep;
}

DiscreteMeasure known_design(std::string_view name) {
  if (name == "tetrahedron") {
    return normalized({1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1});
  }
  if (name == "octahedron") {
    return normalized({1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1});
  }
  if (name == "cube") {
    std::vector<double> c;
    for (int s = 0; s < 8; ++s) {
      for (int j = 0; j < 3; ++j) c.push_back((s >> (2 - j)) & 1 ? -1.0 : 1.0);
    }
    return normalized(c);
  }
  if (name == "icosahedron") {
    const double g = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<double> c;
    // cyclic permutations of (0, ±1, ±g)
    for (int perm = 0; perm < 3; ++perm) {
      for (double a : {1.0, -1.0}) {
        for (double b : {g, -g}) {
          double v[3] = {0.0, a, b};
          for (int j = 0; j < 3; ++j) c.push_back(v[(j + 3 - perm) % 3]);
        }
      }
    }
    return normalized(c);
  }
  fail(ErrorKind::unknown_name, "unknown design '" + std::string(name) + "'");
}

int known_design_strength(std::string_view name) {
  for (const Fixture& f : kFixtures) {
    if (f.name == name) return f.strength;
  }
  fail(ErrorKind::unknown_name, "unknown design '" + std::string(name) + "'");
}

DesignReport corollary_verify(const DiscreteMeasure& points, int t, double p, int m) {
  DesignReport rep = design_check(points, t, 1e-8);
  if (!rep.is_design) {
    fail(ErrorKind::not_a_design, "not a " + std::to_string(t) + "-design: max residual " +
                                      std::to_string(rep.max_residual));
  }
  rep.p = p;
  rep.corollary_bound = design_bound(points.dim(), p, t);
  rep.oracle_enclosure = wp_vs_vol_enclosure(points, p, m);
  rep.bound_holds = rep.oracle_enclosure->lower() <= *rep.corollary_bound;
  return rep;
}

}  // namespace wass_smooth
