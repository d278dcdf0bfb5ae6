// wass-smooth: Fourier-side upper bounds and transport oracles for Wasserstein distances.
//
// Exit codes: 0 ok, 1 I/O or other errors, 2 violated hypothesis, 3 design
// check failed, 4 soundness violation in a suite.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wass_smooth/designs.hpp"
#include "wass_smooth/error.hpp"
#include "wass_smooth/json_io.hpp"
#include "wass_smooth/oracle.hpp"
#include "wass_smooth/pipeline.hpp"
#include "wass_smooth/suite.hpp"

namespace ws = wass_smooth;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitDesign = 3;
constexpr int kExitUnsound = 4;

double parse_real(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) ws::fail(ws::ErrorKind::io, "not a number: '" + s + "'");
  return x;
}

// A measure argument: a JSON file, or "vol" for the volume measure of the other side's space.
struct MeasureArg {
  std::string spec;
  bool is_vol() const { return spec == "vol"; }
};

ws::Measure load_pair_side(const MeasureArg& arg, const std::optional<ws::Measure>& other) {
  if (!arg.is_vol()) return ws::measure_from_json(ws::read_json_file(arg.spec));
  if (!other) ws::fail(ws::ErrorKind::io, "'vol' needs the other measure to fix the space");
  return ws::UniformVol{ws::space_of(*other), ws::dim_of(*other)};
}

std::pair<ws::Measure, ws::Measure> load_pair(const MeasureArg& mu, const MeasureArg& nu) {
  if (mu.is_vol() && nu.is_vol()) ws::fail(ws::ErrorKind::io, "at least one measure must be a file");
  if (mu.is_vol()) {
    ws::Measure n = load_pair_side(nu, std::nullopt);
    return {load_pair_side(mu, n), n};
  }
  ws::Measure m = load_pair_side(mu, std::nullopt);
  return {m, load_pair_side(nu, m)};
}

const ws::DiscreteMeasure& discrete(const ws::Measure& m, const char* which) {
  const auto* dm = std::get_if<ws::DiscreteMeasure>(&m);
  if (!dm) ws::fail(ws::ErrorKind::io, std::string(which) + " must be a measure file for this oracle");
  return *dm;
}

ws::DiscreteMeasure load_points(const std::string& spec) {
  for (const char* name : {"tetrahedron", "octahedron", "cube", "icosahedron"}) {
    if (spec == name) return ws::known_design(spec);
  }
  return discrete(ws::measure_from_json(ws::read_json_file(spec)), "--points");
}

void emit(const ws::json& j) { std::cout << j.dump(2) << '\n'; }

// --- bound ----------------------------------------------------------------------

struct BoundArgs {
  std::string kind;
  MeasureArg mu, nu;
  std::string p = "1";
  double c = 0.0, b = 0.0, r = 0.0;
  std::optional<double> param;
  std::vector<double> range;
  std::string spectrum;
  std::optional<int> d;
  double A = 0.0;
  double diam = 0.0;
  std::optional<double> k_weyl, k_poincare;
};

int cmd_bound(const BoundArgs& a) {
  ws::BoundSetup setup;
  setup.kind = ws::parse_bound_kind(a.kind);
  const bool winf = setup.kind == ws::BoundKind::torus_winf || setup.kind == ws::BoundKind::sphere_winf;
  const double p = parse_real(a.p);
  if (winf && !std::isinf(p)) ws::fail(ws::ErrorKind::invalid_hypothesis, "W-infinity bounds take --p inf");
  setup.params = {p, a.c, a.b, a.r, 1};
  setup.manifold = {a.A, a.diam, a.k_weyl, a.k_poincare};
  if (a.param) {
    setup.lo = setup.hi = *a.param;
  } else if (a.range.size() == 2) {
    setup.lo = a.range[0];
    setup.hi = a.range[1];
  } else {
    ws::fail(ws::ErrorKind::io, "give --param X or --optimize LO HI");
  }

  ws::BoundTables tables;
  const bool manifold = setup.kind == ws::BoundKind::manifold_le2 || setup.kind == ws::BoundKind::manifold_gt2;
  if (manifold && !a.spectrum.empty()) {
    if (!a.d) ws::fail(ws::ErrorKind::io, "--spectrum needs --d");
    setup.params.d = *a.d;
    tables.generic = ws::spectrum_from_json(ws::read_json_file(a.spectrum));
  } else {
    if (a.mu.spec.empty() || a.nu.spec.empty()) ws::fail(ws::ErrorKind::io, "--mu and --nu are required");
    const auto [mu, nu] = load_pair(a.mu, a.nu);
    setup.params.d = a.d.value_or(ws::dim_of(mu));
    tables = ws::build_tables(setup, mu, nu);
  }
  const ws::OptimizeResult opt = ws::run_bound(setup, tables);
  if (!opt.report.valid) ws::fail(ws::ErrorKind::invalid_hypothesis, opt.report.reason);
  ws::json j = ws::to_json(opt.report);
  j["param"] = opt.param;
  j["evaluations"] = opt.evaluations;
  emit(j);
  return 0;
}

// --- oracle ---------------------------------------------------------------------

struct OracleArgs {
  std::string which;
  MeasureArg mu, nu;
  std::string p = "1";
  int m = 0;
  bool plan = false;
};

int cmd_oracle(const OracleArgs& a) {
  const double p = parse_real(a.p);
  if (a.which == "vs-vol") {
    const auto nu = discrete(ws::measure_from_json(ws::read_json_file(a.nu.spec)), "--nu");
    if (a.m < 1) ws::fail(ws::ErrorKind::io, "vs-vol needs --m");
    emit(ws::to_json(ws::wp_vs_vol_enclosure(nu, p, a.m), a.plan));
    return 0;
  }
  const auto [mu, nu] = load_pair(a.mu, a.nu);
  if (a.which == "circle-w1") {
    emit(ws::to_json(ws::circle_w1(mu, nu), a.plan));
  } else if (a.which == "circle-wp") {
    emit(ws::to_json(ws::circle_wp(discrete(mu, "--mu"), discrete(nu, "--nu"), p), a.plan));
  } else if (a.which == "discrete") {
    const auto& dm = discrete(mu, "--mu");
    const auto& dn = discrete(nu, "--nu");
    const ws::OtResult r = ws::discrete_wp(dm, dn, p);
    const ws::CertificateCheck chk = ws::verify_lp_certificate(dm, dn, r);
    ws::json j = ws::to_json(r, a.plan);
    j["certificate"] = {{"ok", chk.ok}, {"gap", chk.gap}, {"max_violation", chk.max_violation},
                        {"marginal_error", chk.marginal_error}};
    emit(j);
  } else if (a.which == "bottleneck") {
    emit(ws::to_json(ws::discrete_winf(discrete(mu, "--mu"), discrete(nu, "--nu")), a.plan));
  } else {
    ws::fail(ws::ErrorKind::unknown_name, "unknown oracle '" + a.which + "'");
  }
  return 0;
}

// --- design ---------------------------------------------------------------------

struct DesignArgs {
  std::string which;
  std::string points;
  int t = 0;
  std::string p = "1";
  int m = 2000;
  double tol = 1e-10;
};

int cmd_design(const DesignArgs& a) {
  const ws::DiscreteMeasure pts = load_points(a.points);
  if (a.which == "check") {
    const ws::DesignReport rep = ws::design_check(pts, a.t, a.tol);
    emit(ws::to_json(rep));
    return rep.is_design ? 0 : kExitDesign;
  }
  if (a.which == "verify") {
    const ws::DesignReport rep = ws::corollary_verify(pts, a.t, parse_real(a.p), a.m);
    emit(ws::to_json(rep));
    return rep.bound_holds.value_or(false) ? 0 : kExitDesign;
  }
  ws::fail(ws::ErrorKind::unknown_name, "unknown design command '" + a.which + "'");
}

// --- suite ----------------------------------------------------------------------

struct SuiteArgs {
  std::string which;
  std::uint64_t seed = 0;
  int n = 0;
  std::string space = "torus1";
  std::string ps = "1";
  int threads = 0;
  std::string out;
};

int cmd_suite(const SuiteArgs& a) {
  if (a.which != "soundness") ws::fail(ws::ErrorKind::unknown_name, "unknown suite '" + a.which + "'");
  ws::SuiteConfig cfg;
  cfg.seed = a.seed;
  cfg.n = a.n;
  cfg.space = ws::parse_suite_space(a.space);
  cfg.threads = a.threads;
  cfg.ps.clear();
  std::stringstream list(a.ps);
  for (std::string item; std::getline(list, item, ',');) {
    const double p = parse_real(item);
    if (!(p >= 1.0) || std::isinf(p)) ws::fail(ws::ErrorKind::io, "suite exponents must be finite and ≥ 1");
    cfg.ps.push_back(p);
  }
  const auto rows = ws::run_soundness(cfg);
  std::ostringstream csv;
  ws::write_soundness_csv(csv, rows);
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(a.out);
    if (!(f << csv.str())) ws::fail(ws::ErrorKind::io, "cannot write " + a.out);
  }
  int violations = 0;
  for (const auto& r : rows) violations += r.violated ? 1 : 0;
  if (violations > 0) {
    std::cerr << "soundness violations: " << violations << '\n';
    return kExitUnsound;
  }
  return 0;
}

int exit_code(const ws::Error& e) {
  if (e.is_hypothesis() || e.kind() == ws::ErrorKind::no_valid_point) return kExitHypothesis;
  if (e.kind() == ws::ErrorKind::not_a_design) return kExitDesign;
  return kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothing-inequality bounds and exact oracles for Wasserstein distances"};
  app.require_subcommand(1);

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "evaluate or optimize an upper bound");
  bound->add_option("kind", ba.kind, "torus-jackson|torus-heat|torus-winf|sphere-projection|sphere-heat|"
                                     "sphere-winf|manifold-le2|manifold-gt2")
      ->required();
  bound->add_option("--mu", ba.mu.spec, "measure file or 'vol'");
  bound->add_option("--nu", ba.nu.spec, "measure file or 'vol'");
  bound->add_option("--p", ba.p, "exponent, 'inf' for W-infinity");
  bound->add_option("--c", ba.c, "mu >= c Vol");
  bound->add_option("--b", ba.b, "nu(B) >= b on balls of radius r");
  bound->add_option("--r", ba.r);
  auto* param_opt = bound->add_option("--param", ba.param, "fixed smoothing parameter");
  bound->add_option("--optimize", ba.range, "parameter range LO HI")->expected(2)->excludes(param_opt);
  bound->add_option("--spectrum", ba.spectrum, "eigenvalue/coefficient file for manifold bounds");
  bound->add_option("--d", ba.d, "manifold dimension");
  bound->add_option("--A", ba.A, "Ricci >= -(d-1) A");
  bound->add_option("--diam", ba.diam);
  bound->add_option("--K-weyl", ba.k_weyl);
  bound->add_option("--K-poincare", ba.k_poincare);

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "exact or enclosed transport distances");
  oracle->add_option("which", oa.which, "circle-w1|circle-wp|discrete|bottleneck|vs-vol")->required();
  oracle->add_option("--mu", oa.mu.spec);
  oracle->add_option("--nu", oa.nu.spec);
  oracle->add_option("--p", oa.p);
  oracle->add_option("--m", oa.m, "Vol quantization resolution");
  oracle->add_flag("--plan", oa.plan, "include the transport plan");

  DesignArgs da;
  auto* design = app.add_subcommand("design", "spherical design checks");
  design->add_option("which", da.which, "check|verify")->required();
  design->add_option("--points", da.points, "measure file or tetrahedron|octahedron|cube|icosahedron")->required();
  design->add_option("--t", da.t)->required();
  design->add_option("--p", da.p);
  design->add_option("--m", da.m);
  design->add_option("--tol", da.tol);

  SuiteArgs sa;
  auto* suite = app.add_subcommand("suite", "seeded soundness experiments");
  suite->add_option("which", sa.which, "soundness")->required();
  suite->add_option("--seed", sa.seed);
  suite->add_option("--n", sa.n);
  suite->add_option("--space", sa.space, "torus1|torus2|sphere2");
  suite->add_option("--p", sa.ps, "comma-separated exponents");
  suite->add_option("--threads", sa.threads);
  suite->add_option("--out", sa.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitIo;
  }

  try {
    if (*bound) return cmd_bound(ba);
    if (*oracle) return cmd_oracle(oa);
    if (*design) return cmd_design(da);
    if (*suite) return cmd_suite(sa);
  } catch (const ws::Error& e) {
    std::cerr << "error (" << ws::to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitIo;
}
