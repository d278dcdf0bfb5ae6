#include "wass_smooth/suite.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <random>
#include <thread>

#include "wass_smooth/error.hpp"
#include "wass_smooth/oracle.hpp"
#include "wass_smooth/pipeline.hpp"

namespace wass_smooth {

namespace {

struct BoundPlan {
  BoundKind kind;
  double lo;
  double hi;
};

std::vector<BoundPlan> plans_for(SuiteSpace s) {
  switch (s) {
    case SuiteSpace::torus1:
      return {{BoundKind::torus_jackson, 2, 200}, {BoundKind::torus_heat, 1e-4, 1.0}};
    case SuiteSpace::torus2:
      return {{BoundKind::torus_jackson, 2, 64}, {BoundKind::torus_heat, 1e-3, 1.0}};
    case SuiteSpace::sphere2:
      return {{BoundKind::sphere_heat, 1e-3, 1.0}, {BoundKind::sphere_projection, 1, 512}};
  }
  return {};
}

// Resolution of the quantized Vol used for vs-Vol enclosures.
int enclosure_resolution(SuiteSpace s) {
  switch (s) {
    case SuiteSpace::torus1: return 1000;
    case SuiteSpace::torus2: return 32;
    case SuiteSpace::sphere2: return 2000;
  }
  return 1;
}

Space space_of(SuiteSpace s) { return s == SuiteSpace::sphere2 ? Space::sphere : Space::torus; }
int dim_of(SuiteSpace s) { return s == SuiteSpace::torus1 ? 1 : 2; }

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::vector<SuiteRow> run_instance(const SuiteConfig& cfg, const Quantization& vol_q, int id) {
  const SuiteInstance inst = make_instance(cfg.space, cfg.seed, id);
  const Measure vol = UniformVol{space_of(cfg.space), dim_of(cfg.space)};
  const bool circle = cfg.space == SuiteSpace::torus1;
  std::vector<SuiteRow> rows;
  for (double p : cfg.ps) {
    for (const bool from_vol : {false, true}) {
      if (!from_vol && p != 1.0) continue;  // c = 0 needs p = 1
      const Measure mu = from_vol ? vol : Measure(inst.mu);
      const Measure nu = inst.nu;
      double oracle = 0.0;
      bool exact = true;
      if (!from_vol) {
        oracle = circle ? circle_w1(mu, nu).value : discrete_wp(inst.mu, inst.nu, 1.0).value;
      } else if (circle && p == 1.0) {
        oracle = circle_w1(mu, nu).value;
      } else {
        oracle = wp_vs_vol_enclosure(inst.nu, p, vol_q).lower();
        exact = false;
      }
      for (const BoundPlan& plan : plans_for(cfg.space)) {
        BoundSetup setup;
        setup.kind = plan.kind;
        setup.params = {p, from_vol ? 1.0 : 0.0, 0.0, 0.0, dim_of(cfg.space)};
        setup.lo = plan.lo;
        setup.hi = plan.hi;
        const BoundTables tables = build_tables(setup, mu, nu);
        const OptimizeResult opt = run_bound(setup, tables);
        SuiteRow row;
        row.instance = id;
        row.space = cfg.space;
        row.p = p;
        row.pair = from_vol ? "vol-emp" : "emp-emp";
        row.bound_kind = to_string(plan.kind);
        row.param = opt.param;
        row.bound = opt.report.value;
        row.oracle = oracle;
        row.oracle_exact = exact;
        row.ratio = oracle / row.bound;
        row.violated = !(oracle <= row.bound);
        const bool series = plan.kind == BoundKind::torus_heat || plan.kind == BoundKind::sphere_heat;
        if (cfg.widen_check && series) {
          row.widened_bound = evaluate_bound(setup, widen_tables(setup, tables, mu, nu), opt.param).value;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace

const char* to_string(SuiteSpace s) noexcept {
  switch (s) {
    case SuiteSpace::torus1: return "torus1";
    case SuiteSpace::torus2: return "torus2";
    case SuiteSpace::sphere2: return "sphere2";
  }
  return "unknown";
}

SuiteSpace parse_suite_space(std::string_view name) {
  for (SuiteSpace s : {SuiteSpace::torus1, SuiteSpace::torus2, SuiteSpace::sphere2}) {
    if (name == to_string(s)) return s;
  }
  fail(ErrorKind::unknown_name, "unknown suite space '" + std::string(name) + "'");
}

SuiteInstance make_instance(SuiteSpace space, std::uint64_t seed, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  std::mt19937_64 gen(seq);
  const int d = dim_of(space);
  const auto draw = [&]() {
    const auto n = static_cast<std::size_t>(2 + gen() % 11);
    std::vector<double> coords;
    if (space != SuiteSpace::sphere2) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t k = 0; k < n * static_cast<std::size_t>(d); ++k) coords.push_back(u(gen));
      return DiscreteMeasure::torus(d, std::move(coords));
    }
    std::normal_distribution<double> g;
    while (coords.size() < 3 * n) {
      const double x = g(gen), y = g(gen), z = g(gen);
      const double r = std::sqrt(x * x + y * y + z * z);
      if (r < 1e-12) continue;
      coords.insert(coords.end(), {x / r, y / r, z / r});
    }
    return DiscreteMeasure::sphere(2, std::move(coords));
  };
  DiscreteMeasure mu = draw();
  DiscreteMeasure nu = draw();
  return {std::move(mu), std::move(nu)};
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WASS_SMOOTH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SuiteRow> run_soundness(const SuiteConfig& cfg) {
  if (cfg.n < 0) fail(ErrorKind::domain, "instance count must be nonnegative");
  if (cfg.n == 0) return {};
  const Quantization vol_q = quantize_vol(space_of(cfg.space), dim_of(cfg.space), enclosure_resolution(cfg.space));
  std::vector<std::vector<SuiteRow>> per(static_cast<std::size_t>(cfg.n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.n));
  std::atomic<int> next{0};
  const auto work = [&]() {
    for (int id = next++; id < cfg.n; id = next++) {
      try {
        per[static_cast<std::size_t>(id)] = run_instance(cfg, vol_q, id);
      } catch (...) {
        errors[static_cast<std::size_t>(id)] = std::current_exception();
      }
    }
  };
  const int workers = std::min(worker_count(cfg.threads), cfg.n);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<SuiteRow> rows;
  for (auto& v : per) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

void write_soundness_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
  out << "instance,space,p,pair,bound_kind,param,bound,oracle,ratio,violated\n";
  for (const SuiteRow& r : rows) {
    out << r.instance << ',' << to_string(r.space) << ',' << fmt("%g", r.p) << ',' << r.pair << ','
        << r.bound_kind << ',' << fmt("%.10g", r.param) << ',' << fmt("%.12g", r.bound) << ','
        << fmt("%.12g", r.oracle) << ',' << fmt("%.6g", r.ratio) << ',' << (r.violated ? 1 : 0) << '\n';
  }
}

}  // namespace wass_smooth
