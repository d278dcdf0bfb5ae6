#include "wass_smooth/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wass_smooth/error.hpp"
#include "wass_smooth/tails.hpp"

namespace wass_smooth {

namespace {

constexpr std::pair<BoundKind, std::string_view> kNames[] = {
    {BoundKind::torus_jackson, "torus-jackson"},
    {BoundKind::torus_heat, "torus-heat"},
    {BoundKind::torus_winf, "torus-winf"},
    {BoundKind::sphere_projection, "sphere-projection"},
    {BoundKind::sphere_heat, "sphere-heat"},
    {BoundKind::sphere_winf, "sphere-winf"},
    {BoundKind::manifold_le2, "manifold-le2"},
    {BoundKind::manifold_gt2, "manifold-gt2"},
};

constexpr double kInitialWindow = 4.0;
constexpr int kInitialDegree = 8;

// Smallest W-infinity parameter the hypotheses allow; tables are sized for it.
double winf_floor(const BoundSetup& s, int d) {
  double T = s.lo;
  if (s.kind == BoundKind::torus_winf) T = std::max(T, 5.0 * s.params.r);
  if (s.kind == BoundKind::sphere_winf) T = std::max(T, std::ldexp(1.0, d + 3) / std::sqrt(double(d)) * s.params.r);
  return T;
}

TailRule rule_for(const BoundSetup& s, int d) {
  switch (s.kind) {
    case BoundKind::torus_jackson: return TailRule::jackson_window();
    case BoundKind::sphere_projection: return TailRule::projection_window();
    case BoundKind::torus_winf:
    case BoundKind::sphere_winf: return TailRule::winf(winf_floor(s, d));
    default: return TailRule::heat(s.lo, s.params.p_is_inf() ? 1.0 : s.params.q0());
  }
}

// The W-infinity multiplier decays like exp(-c log^2 |k|), so small T can need more
// lattice points than the cap allows. Smallest T in [lo, hi] certified by the table.
double certified_winf_floor(const TorusSpectrumDiff& t, double lo, double hi, double rel_target) {
  const auto ok = [&](double T) { return torus_winf_tail(t.dim, t.window, T) <= rel_target * torus_winf_series(t, T); };
  if (ok(lo)) return lo;
  if (!ok(hi)) fail(ErrorKind::resource, "lattice window cap reached before the tail target was met");
  double a = lo, b = hi;
  for (int i = 0; i < 60 && b - a > 1e-12 * b; ++i) {
    const double m = std::sqrt(a * b);
    (ok(m) ? b : a) = m;
  }
  return b;
}

void check_range(const BoundSetup& s) {
  if (!(s.lo > 0.0) || !(s.hi >= s.lo) || !std::isfinite(s.hi)) {
    fail(ErrorKind::domain, "parameter range must satisfy 0 < lo ≤ hi < ∞");
  }
}

}  // namespace

const char* to_string(BoundKind k) noexcept {
  for (const auto& [kind, name] : kNames) {
    if (kind == k) return name.data();
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames) {
    if (n == name) return kind;
  }
  fail(ErrorKind::unknown_name, "unknown bound '" + std::string(name) + "'");
}

bool integer_parameter(BoundKind k) noexcept {
  return k == BoundKind::torus_jackson || k == BoundKind::sphere_projection;
}

BoundTables build_tables(const BoundSetup& s, const Measure& mu, const Measure& nu) {
  check_range(s);
  const int d = dim_of(mu);
  const TailRule rule = rule_for(s, d);
  TailOptions opts = s.tail;
  BoundTables t;
  switch (s.kind) {
    case BoundKind::torus_jackson:
      t.torus = torus_diff_table(mu, nu, std::max(1.0, std::floor(s.hi)) * std::sqrt(double(d)), rule, opts);
      break;
    case BoundKind::torus_winf:
      try {
        t.torus = torus_diff_table(mu, nu, kInitialWindow, rule, opts);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::resource) throw;
        opts.strict = false;
        t.torus = torus_diff_table(mu, nu, kInitialWindow, rule, opts);
        t.param_floor = certified_winf_floor(*t.torus, rule.param, s.hi, opts.rel_target);
        t.torus->rule = TailRule::winf(t.param_floor);
        t.torus->tail_bound = torus_winf_tail(d, t.torus->window, t.param_floor);
        t.torus->tail_target_met = true;
      }
      break;
    case BoundKind::torus_heat:
      t.torus = torus_diff_table(mu, nu, kInitialWindow, rule, opts);
      break;
    case BoundKind::sphere_projection:
      t.sphere = sphere_energy_seq(mu, nu, std::max(1, static_cast<int>(std::floor(s.hi))), rule, opts);
      break;
    case BoundKind::sphere_winf:
      opts.strict = false;
      t.sphere = sphere_energy_seq(mu, nu, kInitialDegree, rule, opts);
      break;
    case BoundKind::sphere_heat:
      t.sphere = sphere_energy_seq(mu, nu, kInitialDegree, rule, opts);
      break;
    case BoundKind::manifold_le2:
    case BoundKind::manifold_gt2:
      if (space_of(mu) != Space::torus) {
        fail(ErrorKind::domain, "manifold bounds take torus measures or an explicit spectrum");
      }
      t.torus = torus_diff_table(mu, nu, kInitialWindow, rule, opts);
      t.generic = generic_diff_from_table(*t.torus);
      // The shell-grouped tail decays more slowly than the heat tail the window
      // was sized for; grow until the smallest parameter is certified.
      while (s.kind == BoundKind::manifold_gt2 &&
             std::pow(4.0 * t.torus->window + 1.0, d) <= static_cast<double>(opts.point_cap)) {
        try {
          bound_manifold_heat_p_gt2(*t.generic, s.params, s.manifold, s.lo);
          break;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::tail_certificate_missing) break;
        }
        t.torus = torus_diff_table(mu, nu, 2.0 * t.torus->window, rule, opts);
        t.generic = generic_diff_from_table(*t.torus);
      }
      break;
  }
  return t;
}

BoundTables widen_tables(const BoundSetup& s, const BoundTables& tables, const Measure& mu, const Measure& nu) {
  TailOptions opts = s.tail;
  opts.strict = false;
  opts.point_cap = std::max<std::size_t>(opts.point_cap, 16 * opts.point_cap);
  opts.max_ell = std::max(opts.max_ell, 2 * opts.max_ell);
  BoundTables t;
  if (tables.torus) t.torus = torus_diff_table(mu, nu, 2.0 * tables.torus->window, tables.torus->rule, opts);
  if (tables.sphere) t.sphere = sphere_energy_seq(mu, nu, 2 * tables.sphere->max_ell(), tables.sphere->rule, opts);
  if (tables.generic && t.torus) t.generic = generic_diff_from_table(*t.torus);
  return t;
}

BoundReport evaluate_bound(const BoundSetup& s, const BoundTables& t, double param) {
  const auto need = [](bool ok) {
    if (!ok) fail(ErrorKind::domain, "tables do not match the bound kind");
  };
  switch (s.kind) {
    case BoundKind::torus_jackson:
      need(t.torus.has_value());
      return bound_torus_jackson(*t.torus, s.params, static_cast<int>(std::lround(param)));
    case BoundKind::torus_heat:
      need(t.torus.has_value());
      return bound_torus_heat(*t.torus, s.params, param);
    case BoundKind::torus_winf:
      need(t.torus.has_value());
      return bound_torus_winf(*t.torus, s.params, param);
    case BoundKind::sphere_projection:
      need(t.sphere.has_value());
      return bound_sphere_projection(*t.sphere, s.params, static_cast<int>(std::lround(param)));
    case BoundKind::sphere_heat:
      need(t.sphere.has_value());
      return bound_sphere_heat(*t.sphere, s.params, param);
    case BoundKind::sphere_winf:
      need(t.sphere.has_value());
      return bound_sphere_winf(*t.sphere, s.params, param);
    case BoundKind::manifold_le2:
      need(t.generic.has_value());
      return bound_manifold_heat_p_le2(*t.generic, s.params, s.manifold, param);
    case BoundKind::manifold_gt2:
      need(t.generic.has_value());
      return bound_manifold_heat_p_gt2(*t.generic, s.params, s.manifold, param);
  }
  fail(ErrorKind::domain, "unknown bound kind");
}

OptimizeResult run_bound(const BoundSetup& setup, const BoundTables& t) {
  check_range(setup);
  BoundSetup s = setup;
  if (t.param_floor > s.lo) {
    if (t.param_floor > s.hi) fail(ErrorKind::no_valid_point, "no parameter in the range has a certified tail");
    s.lo = t.param_floor;
  }
  if (s.lo == s.hi) {
    OptimizeResult r;
    r.param = s.lo;
    r.report = evaluate_bound(s, t, s.lo);
    r.evaluations = 1;
    return r;
  }
  if (integer_parameter(s.kind)) {
    const int lo = static_cast<int>(std::ceil(s.lo));
    const int hi = static_cast<int>(std::floor(s.hi));
    return optimize_bound_int([&](int n) { return evaluate_bound(s, t, n); }, lo, hi);
  }
  return optimize_bound([&](double x) { return evaluate_bound(s, t, x); }, s.lo, s.hi);
}

}  // namespace wass_smooth
