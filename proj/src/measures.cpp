#include "wass_smooth/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "wass_smooth/error.hpp"
#include "wass_smooth/spectral.hpp"
#include "wass_smooth/tails.hpp"

namespace wass_smooth {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

std::vector<double> checked_weights(std::size_t n, std::vector<double> weights) {
  if (n == 0) fail(ErrorKind::degenerate_weights, "measure has no atoms");
  if (weights.empty()) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  if (weights.size() != n) {
    fail(ErrorKind::dimension, "got " + std::to_string(weights.size()) + " weights for " +
                                   std::to_string(n) + " points");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) fail(ErrorKind::degenerate_weights, "weights must be finite and nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorKind::degenerate_weights, "weights sum to " + std::to_string(sum) + ", not 1");
  }
  for (double& w : weights) w /= sum;
  return weights;
}

// Signed atoms: mu contributes +w, nu contributes -w. Vol contributes nothing
// away from the trivial frequency.
struct SignedAtoms {
  int ambient = 0;
  std::vector<double> coords;
  std::vector<double> weights;
};

SignedAtoms signed_atoms(const Measure& mu, const Measure& nu) {
  SignedAtoms s;
  const auto add = [&](const Measure& m, double sign) {
    if (const auto* dm = std::get_if<DiscreteMeasure>(&m)) {
      s.ambient = dm->ambient_dim();
      s.coords.insert(s.coords.end(), dm->coords().begin(), dm->coords().end());
      for (double w : dm->weights()) s.weights.push_back(sign * w);
    }
  };
  add(mu, 1.0);
  add(nu, -1.0);
  return s;
}

void require_pair(const Measure& mu, const Measure& nu, Space space) {
  if (space_of(mu) != space || space_of(nu) != space) {
    fail(ErrorKind::dimension, std::string("both measures must live on the ") + to_string(space));
  }
  if (dim_of(mu) != dim_of(nu)) {
    fail(ErrorKind::dimension, "measures have different dimensions (" + std::to_string(dim_of(mu)) +
                                   " vs " + std::to_string(dim_of(nu)) + ")");
  }
}

cplx unit_phase(double x) {
  const double r = std::remainder(x, 1.0);
  return {std::cos(2.0 * pi * r), -std::sin(2.0 * pi * r)};
}

TorusSpectrumDiff build_torus_table(const Measure& mu, const Measure& nu, double window,
                                    std::size_t cap) {
  const int d = dim_of(mu);
  TorusSpectrumDiff table;
  table.dim = d;
  table.window = window;
  table.mu_is_vol = is_vol(mu);
  table.nu_is_vol = is_vol(nu);

  const LatticeShells shells(d, window, cap);
  const SignedAtoms atoms = signed_atoms(mu, nu);
  const std::size_t n_atoms = atoms.weights.size();
  const int K = static_cast<int>(std::floor(window));
  const std::size_t span = static_cast<std::size_t>(2 * K + 1);

  // phase[(atom * d + axis) * span + (k + K)] = exp(-2 pi i k x)
  std::vector<cplx> phase(n_atoms * static_cast<std::size_t>(d) * span);
  for (std::size_t a = 0; a < n_atoms; ++a) {
    for (int j = 0; j < d; ++j) {
      const double x = atoms.coords[a * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
      cplx* row = &phase[(a * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)) * span];
      for (int k = -K; k <= K; ++k) row[k + K] = unit_phase(static_cast<double>(k) * x);
    }
  }

  struct Row {
    int box;
    std::int64_t n2;
    std::size_t order;
  };
  std::vector<Row> rows;
  rows.reserve(shells.point_count());
  std::vector<int> flat;
  flat.reserve(shells.point_count() * static_cast<std::size_t>(d));
  for (const auto& shell : shells) {
    for (std::size_t i = 0; i < shell.size(d); ++i) {
      int box = 0;
      for (int j = 0; j < d; ++j) {
        const int c = shell.coords[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
        box = std::max(box, std::abs(c));
        flat.push_back(c);
      }
      rows.push_back({box, shell.norm2, rows.size()});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.box < b.box; });

  table.k.reserve(flat.size());
  table.norm2.reserve(rows.size());
  table.box_norm.reserve(rows.size());
  table.diff.reserve(rows.size());
  for (const Row& r : rows) {
    const int* kk = &flat[r.order * static_cast<std::size_t>(d)];
    table.k.insert(table.k.end(), kk, kk + d);
    table.norm2.push_back(r.n2);
    table.box_norm.push_back(r.box);
    cplx acc{0.0, 0.0};
    for (std::size_t a = 0; a < n_atoms; ++a) {
      cplx term = phase[(a * static_cast<std::size_t>(d)) * span + static_cast<std::size_t>(kk[0] + K)];
      for (int j = 1; j < d; ++j) {
        term *= phase[(a * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)) * span +
                      static_cast<std::size_t>(kk[j] + K)];
      }
      acc += atoms.weights[a] * term;
    }
    table.diff.push_back(acc);
  }
  return table;
}

double torus_rule_tail(const TorusSpectrumDiff& t, const TailRule& rule, double window) {
  switch (rule.kind) {
    case TailRule::Kind::heat: return torus_heat_tail(t.dim, window, rule.param, rule.q0);
    case TailRule::Kind::winf: return torus_winf_tail(t.dim, window, rule.param);
    default: return 0.0;
  }
}

double torus_rule_series(const TorusSpectrumDiff& t, const TailRule& rule) {
  return rule.kind == TailRule::Kind::heat ? torus_heat_series(t, rule.param, rule.q0)
                                           : torus_winf_series(t, rule.param);
}

// Lattice points in a ball of radius R, overestimated slightly.
double estimated_points(int d, double R) {
  const double vol_unit = std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  return vol_unit * std::pow(R + std::sqrt(static_cast<double>(d)) / 2.0, d);
}

// Smallest x in [lo, hi] with pred(x) true, pred monotone, integer steps.
template <class Pred>
long smallest_satisfying(long lo, long hi, Pred pred) {
  if (pred(lo)) return lo;
  long bad = lo;
  long probe = lo;
  for (;;) {
    probe = std::min(hi, std::max(probe + 1, probe * 2));
    if (pred(probe)) break;
    if (probe == hi) return -1;
    bad = probe;
  }
  long good = probe;
  while (good - bad > 1) {
    const long mid = bad + (good - bad) / 2;
    (pred(mid) ? good : bad) = mid;
  }
  return good;
}

double mult_double(int d, int ell) { return static_cast<double>(sphere_eigen(d, ell).mult); }

}  // namespace

const char* to_string(Space s) noexcept { return s == Space::torus ? "torus" : "sphere"; }

const char* to_string(TailRule::Kind k) noexcept {
  switch (k) {
    case TailRule::Kind::jackson_window: return "jackson_window";
    case TailRule::Kind::heat: return "heat";
    case TailRule::Kind::winf: return "winf";
    case TailRule::Kind::projection_window: return "projection_window";
  }
  return "unknown";
}

DiscreteMeasure::DiscreteMeasure(Space s, int d, std::vector<double> coords, std::vector<double> weights)
    : space_(s), dim_(d), coords_(std::move(coords)), weights_(std::move(weights)) {}

DiscreteMeasure DiscreteMeasure::torus(int d, std::vector<double> coords, std::vector<double> weights) {
  if (d < 1) fail(ErrorKind::domain, "torus dimension must be positive");
  if (coords.size() % static_cast<std::size_t>(d) != 0) {
    fail(ErrorKind::dimension, "torus coordinates are not a multiple of the dimension");
  }
  for (double& x : coords) {
    if (!std::isfinite(x)) fail(ErrorKind::domain, "non-finite torus coordinate");
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
  }
  auto w = checked_weights(coords.size() / static_cast<std::size_t>(d), std::move(weights));
  return DiscreteMeasure(Space::torus, d, std::move(coords), std::move(w));
}

DiscreteMeasure DiscreteMeasure::sphere(int d, std::vector<double> coords, std::vector<double> weights) {
  if (d < 1) fail(ErrorKind::domain, "sphere dimension must be positive");
  const auto a = static_cast<std::size_t>(d + 1);
  if (coords.size() % a != 0) {
    fail(ErrorKind::dimension, "sphere points must have " + std::to_string(d + 1) + " coordinates");
  }
  for (std::size_t i = 0; i < coords.size(); i += a) {
    double n2 = 0.0;
    for (std::size_t j = 0; j < a; ++j) n2 += coords[i + j] * coords[i + j];
    const double n = std::sqrt(n2);
    if (!(std::abs(n - 1.0) <= 1e-9)) {
      fail(ErrorKind::domain, "sphere point has norm " + std::to_string(n) + ", expected 1");
    }
    for (std::size_t j = 0; j < a; ++j) coords[i + j] /= n;
  }
  auto w = checked_weights(coords.size() / a, std::move(weights));
  return DiscreteMeasure(Space::sphere, d, std::move(coords), std::move(w));
}

bool DiscreteMeasure::uniform_weights() const noexcept {
  const double u = 1.0 / static_cast<double>(weights_.size());
  return std::all_of(weights_.begin(), weights_.end(), [u](double w) { return std::abs(w - u) <= 1e-12; });
}

Space space_of(const Measure& m) noexcept {
  if (const auto* dm = std::get_if<DiscreteMeasure>(&m)) return dm->space();
  return std::get<UniformVol>(m).space;
}

int dim_of(const Measure& m) noexcept {
  if (const auto* dm = std::get_if<DiscreteMeasure>(&m)) return dm->dim();
  return std::get<UniformVol>(m).dim;
}

bool is_vol(const Measure& m) noexcept { return std::holds_alternative<UniformVol>(m); }

bool same_measure(const Measure& a, const Measure& b) noexcept {
  if (a.index() != b.index()) return false;
  if (is_vol(a)) {
    const auto& x = std::get<UniformVol>(a);
    const auto& y = std::get<UniformVol>(b);
    return x.space == y.space && x.dim == y.dim;
  }
  return std::get<DiscreteMeasure>(a) == std::get<DiscreteMeasure>(b);
}

std::complex<double> torus_fourier(const Measure& m, std::span<const int> k) {
  if (space_of(m) != Space::torus) fail(ErrorKind::dimension, "torus_fourier needs a torus measure");
  if (static_cast<int>(k.size()) != dim_of(m)) {
    fail(ErrorKind::dimension, "frequency has " + std::to_string(k.size()) + " components, measure dimension is " +
                                   std::to_string(dim_of(m)));
  }
  if (is_vol(m)) {
    return std::all_of(k.begin(), k.end(), [](int c) { return c == 0; }) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
  }
  const auto& dm = std::get<DiscreteMeasure>(m);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < dm.size(); ++i) {
    const auto x = dm.point(i);
    double s = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) s += static_cast<double>(k[j]) * x[j];
    acc += dm.weight(i) * unit_phase(s);
  }
  return acc;
}

std::optional<std::complex<double>> TorusSpectrumDiff::at(std::span<const int> kk) const {
  if (static_cast<int>(kk.size()) != dim) return std::nullopt;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto row = index(i);
    if (std::equal(row.begin(), row.end(), kk.begin())) return diff[i];
  }
  return std::nullopt;
}

double torus_heat_series(const TorusSpectrumDiff& diff, double t, double q0) {
  double sum = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const double n2 = static_cast<double>(diff.norm2[i]);
    const double damp = std::exp(-4.0 * pi * pi * n2 * q0 * t);
    const double ratio = std::abs(diff.diff[i]) / (2.0 * pi * std::sqrt(n2));
    sum += damp * (q0 == 2.0 ? ratio * ratio : std::pow(ratio, q0));
  }
  return sum;
}

double torus_winf_series(const TorusSpectrumDiff& diff, double T) {
  double sum = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const double norm = std::sqrt(static_cast<double>(diff.norm2[i]));
    sum += torus_winf_weight(diff.dim, T, norm) * std::abs(diff.diff[i]) / (2.0 * pi * norm);
  }
  return sum;
}

TorusSpectrumDiff torus_diff_table(const Measure& mu, const Measure& nu, double max_norm, TailRule rule,
                                   const TailOptions& opts) {
  require_pair(mu, nu, Space::torus);
  if (!(max_norm >= 1.0)) fail(ErrorKind::domain, "lattice window must be at least 1");
  const int d = dim_of(mu);
  const bool has_tail = rule.kind == TailRule::Kind::heat || rule.kind == TailRule::Kind::winf;
  if (has_tail && !(rule.param > 0.0)) fail(ErrorKind::domain, "tail rule parameter must be positive");

  if (same_measure(mu, nu) || !has_tail) {
    TorusSpectrumDiff t = build_torus_table(mu, nu, max_norm, opts.point_cap);
    t.rule = rule;
    t.identical = same_measure(mu, nu);
    if (t.identical) std::fill(t.diff.begin(), t.diff.end(), cplx{0.0, 0.0});
    return t;
  }

  const auto fits = [&](double R) { return estimated_points(d, R) <= static_cast<double>(opts.point_cap); };
  double R = max_norm;
  TorusSpectrumDiff table = build_torus_table(mu, nu, R, opts.point_cap);
  double retained = torus_rule_series(table, rule);
  while (retained == 0.0) {
    // Every retained coefficient vanished; widen until the measures separate.
    const double next = 2.0 * R;
    if (!fits(next)) fail(ErrorKind::resource, "no nonzero Fourier coefficient within the lattice cap");
    R = next;
    table = build_torus_table(mu, nu, R, opts.point_cap);
    retained = torus_rule_series(table, rule);
  }

  const double target = opts.rel_target * retained;
  const long lo = static_cast<long>(std::ceil(R));
  long hi = lo;
  while (fits(static_cast<double>(hi) * 2.0)) hi *= 2;
  while (fits(static_cast<double>(hi) + 1.0)) ++hi;
  const long need = smallest_satisfying(lo, std::max(lo, hi), [&](long r) {
    return torus_rule_tail(table, rule, static_cast<double>(r)) <= target;
  });
  double R_final = R;
  const bool met = need >= 0;
  if (!met) {
    if (opts.strict) {
      fail(ErrorKind::resource, "lattice window cap reached before the tail target was met");
    }
    R_final = static_cast<double>(std::max(lo, hi));
  } else if (static_cast<double>(need) > R) {
    R_final = static_cast<double>(need);
  }
  if (R_final != R) table = build_torus_table(mu, nu, R_final, opts.point_cap);
  table.rule = rule;
  table.tail_bound = torus_rule_tail(table, rule, R_final);
  table.tail_target_met = met;
  return table;
}

// --- sphere ----------------------------------------------------------------

std::vector<double> sphere_energies_raw(const Measure& mu, const Measure& nu, int max_ell) {
  require_pair(mu, nu, Space::sphere);
  const int d = dim_of(mu);
  if (d < 2) fail(ErrorKind::domain, "sphere energies need d >= 2");
  if (max_ell < 1) fail(ErrorKind::domain, "degree 0 carries no energy; max_ell must be >= 1");
  const SignedAtoms atoms = signed_atoms(mu, nu);
  const std::size_t n = atoms.weights.size();
  const auto a = static_cast<std::size_t>(atoms.ambient);
  std::vector<double> energy(static_cast<std::size_t>(max_ell) + 1, 0.0);
  std::vector<double> z(static_cast<std::size_t>(max_ell) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < a; ++c) dot += atoms.coords[i * a + c] * atoms.coords[j * a + c];
      dot = std::clamp(dot, -1.0, 1.0);
      if (i == j) dot = 1.0;
      zonal_sequence(d, dot, z);
      const double w = atoms.weights[i] * atoms.weights[j] * (i == j ? 1.0 : 2.0);
      for (std::size_t ell = 1; ell < z.size(); ++ell) energy[ell] += w * z[ell];
    }
  }
  energy.erase(energy.begin());
  return energy;
}

namespace {

// Values within the rounding error of the double sum are indistinguishable
// from zero; larger negatives signal a bug.
double clamp_energy(double e, int d, int ell, double noise) {
  const double mult = mult_double(d, ell);
  const double tol = std::max(1e-9, 1024.0 * std::numeric_limits<double>::epsilon() * ell * mult);
  if (e < -tol) {
    fail(ErrorKind::domain, "negative energy " + std::to_string(e) + " at degree " + std::to_string(ell));
  }
  const double floor = noise * (static_cast<double>(ell) + 1.0) * mult;
  return e <= floor ? 0.0 : e;
}

std::vector<double> sphere_energies(const Measure& mu, const Measure& nu, int max_ell) {
  auto e = sphere_energies_raw(mu, nu, max_ell);
  const SignedAtoms atoms = signed_atoms(mu, nu);
  double mass = 0.0;
  for (double w : atoms.weights) mass += std::abs(w);
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(atoms.weights.size() + 1) *
                       mass * mass;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = clamp_energy(e[i], dim_of(mu), static_cast<int>(i) + 1, noise);
  return e;
}

double sphere_rule_tail(int d, const TailRule& rule, int L) {
  switch (rule.kind) {
    case TailRule::Kind::heat: return sphere_heat_tail(d, L, rule.param, rule.q0);
    case TailRule::Kind::winf: return sphere_winf_tail(d, L, rule.param);
    default: return 0.0;
  }
}

}  // namespace

double sphere_energy(const Measure& mu, const Measure& nu, int ell) {
  require_pair(mu, nu, Space::sphere);
  if (ell < 1) fail(ErrorKind::domain, "degree 0 rejected: E_0 vanishes for probability measures");
  if (same_measure(mu, nu)) return 0.0;
  return sphere_energies(mu, nu, ell).back();
}

double sphere_heat_series(const SphereEnergySeq& seq, double t, double q0) {
  double sum = 0.0;
  for (int ell = 1; ell <= seq.max_ell(); ++ell) {
    const SphereEigen e = sphere_eigen(seq.dim, ell);
    const double mult = static_cast<double>(e.mult);
    const double ratio = seq.energy(ell) / (mult * e.lambda);
    sum += mult * std::exp(-e.lambda * q0 * t) * (q0 == 2.0 ? ratio : std::pow(ratio, 0.5 * q0));
  }
  return sum;
}

double sphere_winf_series(const SphereEnergySeq& seq, double T) {
  double sum = 0.0;
  for (int ell = 1; ell <= seq.max_ell(); ++ell) {
    const SphereEigen e = sphere_eigen(seq.dim, ell);
    sum += sphere_winf_weight(seq.dim, T, ell) *
           std::sqrt(static_cast<double>(e.mult) / e.lambda * seq.energy(ell));
  }
  return sum;
}

SphereEnergySeq sphere_energy_seq(const Measure& mu, const Measure& nu, int max_ell, TailRule rule,
                                  const TailOptions& opts) {
  require_pair(mu, nu, Space::sphere);
  const int d = dim_of(mu);
  if (d < 2) fail(ErrorKind::domain, "sphere energies need d >= 2");
  if (max_ell < 1) fail(ErrorKind::domain, "max_ell must be >= 1");
  if (max_ell > opts.max_ell) fail(ErrorKind::resource, "requested degree exceeds the cap");
  const bool has_tail = rule.kind == TailRule::Kind::heat || rule.kind == TailRule::Kind::winf;
  if (has_tail && !(rule.param > 0.0)) fail(ErrorKind::domain, "tail rule parameter must be positive");

  SphereEnergySeq seq;
  seq.dim = d;
  seq.rule = rule;
  seq.mu_is_vol = is_vol(mu);
  seq.nu_is_vol = is_vol(nu);
  if (same_measure(mu, nu)) {
    seq.identical = true;
    seq.energies.assign(static_cast<std::size_t>(max_ell), 0.0);
    return seq;
  }
  int L = max_ell;
  seq.energies = sphere_energies(mu, nu, L);
  if (!has_tail) return seq;

  const auto series = [&] {
    return rule.kind == TailRule::Kind::heat ? sphere_heat_series(seq, rule.param, rule.q0)
                                             : sphere_winf_series(seq, rule.param);
  };
  double retained = series();
  while (retained == 0.0) {
    if (L >= opts.max_ell) fail(ErrorKind::resource, "all energies vanish up to the degree cap");
    L = std::min(opts.max_ell, 2 * L);
    seq.energies = sphere_energies(mu, nu, L);
    retained = series();
  }
  const double target = opts.rel_target * retained;
  const long need = smallest_satisfying(L, opts.max_ell, [&](long ell) {
    return sphere_rule_tail(d, rule, static_cast<int>(ell)) <= target;
  });
  int L_final = L;
  if (need < 0) {
    if (opts.strict) fail(ErrorKind::resource, "degree cap reached before the tail target was met");
    L_final = opts.max_ell;
    seq.tail_target_met = false;
  } else {
    L_final = static_cast<int>(need);
  }
  if (L_final != L) seq.energies = sphere_energies(mu, nu, L_final);
  seq.tail_bound = sphere_rule_tail(d, rule, L_final);
  return seq;
}

// --- generic ------------------------------------------------------------------

void GenericSpectrumDiff::validate() const {
  if (eigenvalues.size() != diffs.size()) {
    fail(ErrorKind::dimension, "eigenvalue and coefficient lists differ in length");
  }
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (!(eigenvalues[i] > 0.0) || !std::isfinite(eigenvalues[i])) {
      fail(ErrorKind::domain, "eigenvalues must be positive and finite");
    }
    if (i > 0 && eigenvalues[i] < eigenvalues[i - 1]) fail(ErrorKind::domain, "eigenvalues must be nondecreasing");
    if (!(diffs[i] >= 0.0) || !std::isfinite(diffs[i])) fail(ErrorKind::domain, "coefficient differences must be finite and >= 0");
  }
}

GenericSpectrumDiff generic_diff_from_table(const TorusSpectrumDiff& table) {
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return table.norm2[a] < table.norm2[b]; });
  GenericSpectrumDiff g;
  g.eigenvalues.reserve(order.size());
  g.diffs.reserve(order.size());
  for (std::size_t i : order) {
    g.eigenvalues.push_back(4.0 * pi * pi * static_cast<double>(table.norm2[i]));
    g.diffs.push_back(std::abs(table.diff[i]));
  }
  g.identical = table.identical;
  g.torus_origin = GenericSpectrumDiff::TorusOrigin{table.dim, table.window};
  return g;
}

GenericSpectrumDiff generic_diff_from_torus(const Measure& mu, const Measure& nu, double max_norm) {
  return generic_diff_from_table(torus_diff_table(mu, nu, max_norm, TailRule::jackson_window()));
}

}  // namespace wass_smooth
