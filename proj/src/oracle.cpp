#include "wass_smooth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "network_simplex.hpp"
#include "wass_smooth/error.hpp"

namespace wass_smooth {

namespace {

using std::numbers::pi;

constexpr std::size_t kMaxCells = 1'000'000;
constexpr long kWeightGrid = 1'000'000;

void require_same_space(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.space() != nu.space() || mu.dim() != nu.dim()) {
    fail(ErrorKind::dimension, "measures live on different spaces");
  }
}

void require_circle(const Measure& m) {
  if (space_of(m) != Space::torus || dim_of(m) != 1) fail(ErrorKind::dimension, "circle oracle needs measures on T^1");
}

double pth(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

double inv_pth(double c, double p) {
  c = std::max(c, 0.0);
  if (p == 1.0) return c;
  if (p == 2.0) return std::sqrt(c);
  return std::pow(c, 1.0 / p);
}

struct SortedAtoms {
  std::vector<double> x;
  std::vector<double> cum;  // cum[0] = 0, cum[n] = 1
};

SortedAtoms sorted_atoms(const DiscreteMeasure& m) {
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m.point(a)[0] < m.point(b)[0]; });
  SortedAtoms s;
  s.cum.push_back(0.0);
  for (std::size_t k : order) {
    s.x.push_back(m.point(k)[0]);
    s.cum.push_back(s.cum.back() + m.weight(k));
  }
  s.cum.back() = 1.0;
  return s;
}

std::vector<double> cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  const CostMetric metric{mu.space(), mu.dim()};
  std::vector<double> c(mu.size() * nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) c[i * nu.size() + j] = pth(metric(mu.point(i), nu.point(j)), p);
  }
  return c;
}

// --- bottleneck helpers ----------------------------------------------------------

std::pair<long, long> rationalize(double w) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = w;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(x);
    if (a > 1e12) break;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > kWeightGrid) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(w - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-12) return {h1, k1};
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k1 > 0 && std::abs(w - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-12) return {h1, k1};
  fail(ErrorKind::weight_grid, "weight " + std::to_string(w) + " has no rational form with denominator ≤ 10^6");
}

class Dinic {
 public:
  explicit Dinic(std::size_t n) : head_(n, -1), level_(n), it_(n) {}

  void add(std::size_t u, std::size_t v, long cap) {
    edges_.push_back({v, cap, head_[u]});
    head_[u] = static_cast<long>(edges_.size()) - 1;
    edges_.push_back({u, 0, head_[v]});
    head_[v] = static_cast<long>(edges_.size()) - 1;
  }

  long maxflow(std::size_t s, std::size_t t) {
    long total = 0;
    while (bfs(s, t)) {
      for (std::size_t v = 0; v < head_.size(); ++v) it_[v] = head_[v];
      while (long f = dfs(s, t, std::numeric_limits<long>::max())) total += f;
    }
    return total;
  }

  // Flow pushed along edge index e (forward edges only).
  long flow_on(std::size_t e) const { return edges_[e ^ 1].cap; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t edge_to(std::size_t e) const { return edges_[e].to; }

 private:
  struct Edge {
    std::size_t to;
    long cap;
    long next;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> q{s};
    level_[s] = 0;
    for (std::size_t h = 0; h < q.size(); ++h) {
      for (long e = head_[q[h]]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.cap > 0 && level_[ed.to] < 0) {
          level_[ed.to] = level_[q[h]] + 1;
          q.push_back(ed.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  long dfs(std::size_t v, std::size_t t, long f) {
    if (v == t) return f;
    for (long& e = it_[v]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
      Edge& ed = edges_[static_cast<std::size_t>(e)];
      if (ed.cap > 0 && level_[ed.to] == level_[v] + 1) {
        const long got = dfs(ed.to, t, std::min(f, ed.cap));
        if (got > 0) {
          ed.cap -= got;
          edges_[static_cast<std::size_t>(e) ^ 1].cap += got;
          return got;
        }
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<long> head_;
  std::vector<int> level_;
  std::vector<long> it_;
};

}  // namespace

const char* to_string(OtMethod m) noexcept {
  switch (m) {
    case OtMethod::circle_exact: return "circle_exact";
    case OtMethod::lp_exact: return "lp_exact";
    case OtMethod::bottleneck: return "bottleneck";
    case OtMethod::enclosure: return "enclosure";
  }
  return "unknown";
}

double torus_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double a = std::abs(x[j] - y[j]);
    a -= std::floor(a);
    a = std::min(a, 1.0 - a);
    s += a * a;
  }
  return std::sqrt(s);
}

double sphere_distance(std::span<const double> x, std::span<const double> y) {
  // 2 asin(|x - y| / 2) stays accurate for nearby points
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
  return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(s)));
}

double CostMetric::operator()(std::span<const double> x, std::span<const double> y) const {
  return space == Space::torus ? torus_distance(x, y) : sphere_distance(x, y);
}

double CostMetric::diameter() const {
  return space == Space::torus ? std::sqrt(static_cast<double>(dim)) / 2.0 : pi;
}

// --- circle ---------------------------------------------------------------------

OtResult circle_w1(const Measure& mu, const Measure& nu) {
  require_circle(mu);
  require_circle(nu);
  OtResult res;
  res.method = OtMethod::circle_exact;
  if (same_measure(mu, nu)) return res;

  // G = F_mu - F_nu on [0, 1); W1 = min_s int |G - s|.
  std::vector<double> brk{0.0, 1.0};
  std::vector<SortedAtoms> atoms;
  for (const Measure* m : {&mu, &nu}) {
    if (const auto* dm = std::get_if<DiscreteMeasure>(m)) {
      atoms.push_back(sorted_atoms(*dm));
      brk.insert(brk.end(), atoms.back().x.begin(), atoms.back().x.end());
    } else {
      atoms.push_back({});
    }
  }
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
  const double slope = (is_vol(mu) ? 1.0 : 0.0) - (is_vol(nu) ? 1.0 : 0.0);
  const auto cdf = [&](int which, const Measure& m, double x) {
    if (is_vol(m)) return x;
    const auto& s = atoms[static_cast<std::size_t>(which)];
    const auto k = static_cast<std::size_t>(std::upper_bound(s.x.begin(), s.x.end(), x) - s.x.begin());
    return s.cum[k];
  };

  struct Piece {
    double lo, hi, len;
  };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < brk.size(); ++k) {
    const double len = brk[k + 1] - brk[k];
    if (len <= 0.0) continue;
    const double g0 = cdf(0, mu, brk[k]) - cdf(1, nu, brk[k]);
    const double g1 = g0 + slope * len;
    pieces.push_back({std::min(g0, g1), std::max(g0, g1), len});
  }
  std::vector<double> vals;
  for (const Piece& pc : pieces) {
    vals.push_back(pc.lo);
    vals.push_back(pc.hi);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

  const auto mass_below = [&](double s) {
    double m = 0.0;
    for (const Piece& pc : pieces) {
      if (pc.hi == pc.lo) {
        if (pc.lo <= s) m += pc.len;
      } else {
        m += pc.len * std::clamp((s - pc.lo) / (pc.hi - pc.lo), 0.0, 1.0);
      }
    }
    return m;
  };
  std::size_t j = 0;
  while (j + 1 < vals.size() && mass_below(vals[j]) < 0.5) ++j;
  double s = vals[j];
  if (j > 0) {
    const double left = vals[j - 1];
    const double m_left = mass_below(left);
    double rate = 0.0;
    for (const Piece& pc : pieces) {
      if (pc.hi > pc.lo && pc.lo <= left && pc.hi >= vals[j]) rate += pc.len / (pc.hi - pc.lo);
    }
    if (rate > 0.0 && m_left + rate * (vals[j] - left) >= 0.5) s = left + (0.5 - m_left) / rate;
  }
  double total = 0.0;
  for (const Piece& pc : pieces) {
    if (pc.hi == pc.lo) {
      total += pc.len * std::abs(pc.lo - s);
    } else if (s <= pc.lo) {
      total += pc.len * (0.5 * (pc.lo + pc.hi) - s);
    } else if (s >= pc.hi) {
      total += pc.len * (s - 0.5 * (pc.lo + pc.hi));
    } else {
      total += 0.5 * ((s - pc.lo) * (s - pc.lo) + (pc.hi - s) * (pc.hi - s));
    }
  }
  res.value = total;
  res.cost = total;
  return res;
}

OtResult circle_wp(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  require_circle(mu);
  require_circle(nu);
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::domain, "circle_wp needs finite p ≥ 1");
  OtResult res;
  res.method = OtMethod::circle_exact;
  res.p = p;
  if (mu == nu) return res;

  const SortedAtoms A = sorted_atoms(mu);
  const SortedAtoms B = sorted_atoms(nu);
  const std::size_t N = A.x.size();
  const std::size_t M = B.x.size();

  // Lifted monotone coupling: u -> (Q_mu(u), Q_nu(u + theta)) with Q_nu(v + 1) = Q_nu(v) + 1.
  const auto lifted_cost = [&](double theta) {
    const double n0 = std::floor(theta);
    const double f = theta - n0;
    std::size_t j = static_cast<std::size_t>(std::upper_bound(B.cum.begin(), B.cum.end(), f) - B.cum.begin());
    j = std::clamp<std::size_t>(j, 1, M);
    double shift = n0;
    double nu_end = B.cum[j] - f;
    std::size_t i = 1;
    double mu_end = A.cum[1];
    double u = 0.0;
    double total = 0.0;
    while (u < 1.0) {
      const double next = std::min({mu_end, nu_end, 1.0});
      if (next > u) total += (next - u) * pth(std::abs(A.x[i - 1] - (B.x[j - 1] + shift)), p);
      u = std::max(u, next);
      if (u >= 1.0) break;
      if (mu_end <= u && i < N) mu_end = A.cum[++i];
      if (nu_end <= u) {
        if (++j > M) {
          j = 1;
          shift += 1.0;
        }
        nu_end = B.cum[j] + (shift - n0) - f;
      }
    }
    return total;
  };

  std::vector<double> cand;
  cand.reserve((N + 1) * (M + 1) * 5);
  for (int n = -2; n <= 2; ++n) {
    for (double a : A.cum) {
      for (double b : B.cum) {
        const double th = b - a + n;
        if (th >= -2.0 && th <= 2.0) cand.push_back(th);
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  // Breakpoints that differ only by rounding would look like a flat stretch.
  cand.erase(std::unique(cand.begin(), cand.end(), [](double a, double b) { return b - a <= 1e-13; }), cand.end());

  // Convex in theta: first index whose successor does not decrease.
  std::size_t lo = 0;
  std::size_t hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lifted_cost(cand[mid + 1]) >= lifted_cost(cand[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  // Walk downhill from the bisection point to absorb rounding ties.
  double best = lifted_cost(cand[lo]);
  for (std::size_t k = lo; k + 1 < cand.size();) {
    const double v = lifted_cost(cand[++k]);
    if (v > best) break;
    best = v;
  }
  for (std::size_t k = lo; k > 0;) {
    const double v = lifted_cost(cand[--k]);
    if (v > best) break;
    best = v;
  }
  res.cost = best;
  res.value = inv_pth(best, p);
  return res;
}

// --- discrete LP ------------------------------------------------------------------

OtResult discrete_wp(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  require_same_space(mu, nu);
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::domain, "discrete_wp needs finite p ≥ 1");
  if (mu.size() * nu.size() > kMaxCells) {
    fail(ErrorKind::resource, "cost matrix exceeds 10^6 cells (" + std::to_string(mu.size()) + " x " +
                                  std::to_string(nu.size()) + ")");
  }
  const std::vector<double> c = cost_matrix(mu, nu, p);
  const auto sol = detail::solve_transport(mu.weights(), nu.weights(), c);
  OtResult res;
  res.method = OtMethod::lp_exact;
  res.p = p;
  res.cost = std::max(sol.cost, 0.0);
  res.value = inv_pth(res.cost, p);
  for (const auto& cell : sol.plan) res.plan.push_back({cell.i, cell.j, cell.mass});
  res.dual_f = sol.f;
  res.dual_g = sol.g;
  return res;
}

CertificateCheck verify_lp_certificate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const OtResult& r) {
  CertificateCheck chk;
  if (r.method != OtMethod::lp_exact || r.dual_f.size() != mu.size() || r.dual_g.size() != nu.size()) return chk;
  const std::vector<double> c = cost_matrix(mu, nu, r.p);
  const std::size_t M = nu.size();
  double max_c = 0.0;
  for (double x : c) max_c = std::max(max_c, x);
  std::vector<double> row(mu.size(), 0.0), col(M, 0.0);
  long double primal = 0.0L;
  for (const PlanEntry& e : r.plan) {
    if (e.mass < 0.0) return chk;
    row[e.i] += e.mass;
    col[e.j] += e.mass;
    primal += static_cast<long double>(e.mass) * c[e.i * M + e.j];
  }
  for (std::size_t i = 0; i < mu.size(); ++i) chk.marginal_error = std::max(chk.marginal_error, std::abs(row[i] - mu.weight(i)));
  for (std::size_t j = 0; j < M; ++j) chk.marginal_error = std::max(chk.marginal_error, std::abs(col[j] - nu.weight(j)));
  long double dual = 0.0L;
  for (std::size_t i = 0; i < mu.size(); ++i) dual += static_cast<long double>(mu.weight(i)) * r.dual_f[i];
  for (std::size_t j = 0; j < M; ++j) dual += static_cast<long double>(nu.weight(j)) * r.dual_g[j];
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      chk.max_violation = std::max(chk.max_violation, r.dual_f[i] + r.dual_g[j] - c[i * M + j]);
    }
  }
  chk.primal = static_cast<double>(primal);
  chk.dual = static_cast<double>(dual);
  chk.gap = chk.primal - chk.dual;
  const double scale = std::max(max_c, 1e-300);
  chk.ok = chk.marginal_error <= 1e-10 && chk.max_violation <= 1e-12 * scale &&
           std::abs(chk.gap) <= 1e-9 * chk.primal + 1e-13 * scale;
  return chk;
}

// --- bottleneck -----------------------------------------------------------------

OtResult discrete_winf(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_space(mu, nu);
  if (mu.size() * nu.size() > kMaxCells) fail(ErrorKind::resource, "cost matrix exceeds 10^6 cells");
  if (mu == nu) {
    OtResult res;
    res.method = OtMethod::bottleneck;
    res.p = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mu.size(); ++i) res.plan.push_back({i, i, mu.weight(i)});
    return res;
  }
  const std::size_t N = mu.size();
  const std::size_t M = nu.size();
  std::vector<std::pair<long, long>> rat;
  long L = 1;
  for (const DiscreteMeasure* m : {&mu, &nu}) {
    for (double w : m->weights()) {
      rat.push_back(rationalize(w));
      L = std::lcm(L, rat.back().second);
      if (L > kWeightGrid) fail(ErrorKind::weight_grid, "common weight grid exceeds 10^6");
    }
  }
  std::vector<long> mass(rat.size());
  for (std::size_t k = 0; k < rat.size(); ++k) mass[k] = rat[k].first * (L / rat[k].second);
  const long sa = std::accumulate(mass.begin(), mass.begin() + static_cast<long>(N), 0L);
  const long sb = std::accumulate(mass.begin() + static_cast<long>(N), mass.end(), 0L);
  if (sa != L || sb != L) fail(ErrorKind::weight_grid, "rationalized weights do not sum to the grid size");

  const std::vector<double> dist = cost_matrix(mu, nu, 1.0);
  std::vector<double> levels = dist;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  const std::size_t S = N + M;
  const std::size_t T = N + M + 1;
  const auto build = [&](double tau) {
    Dinic g(N + M + 2);
    for (std::size_t i = 0; i < N; ++i) g.add(S, i, mass[i]);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < M; ++j) {
        if (dist[i * M + j] <= tau) g.add(i, N + j, L);
      }
    }
    for (std::size_t j = 0; j < M; ++j) g.add(N + j, T, mass[N + j]);
    return g;
  };
  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    Dinic g = build(levels[mid]);
    if (g.maxflow(S, T) == L) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  Dinic g = build(levels[lo]);
  g.maxflow(S, T);
  OtResult res;
  res.method = OtMethod::bottleneck;
  res.p = std::numeric_limits<double>::infinity();
  res.value = levels[lo];
  res.cost = res.value;
  // Forward edges i -> N + j follow the N source edges, in insertion order.
  std::size_t e = 2 * N;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      if (dist[i * M + j] <= levels[lo]) {
        const long f = g.flow_on(e);
        if (f > 0) res.plan.push_back({i, j, static_cast<double>(f) / static_cast<double>(L)});
        e += 2;
      }
    }
  }
  return res;
}

// --- quantization ---------------------------------------------------------------

Quantization quantize_vol(Space space, int d, int m) {
  if (m < 1) fail(ErrorKind::domain, "resolution must be positive");
  if (space == Space::torus) {
    if (d < 1 || d > 3) fail(ErrorKind::domain, "torus quantization supports 1 ≤ d ≤ 3");
    const double count = std::pow(static_cast<double>(m), d);
    if (count > 1e6) fail(ErrorKind::resource, "quantization grid exceeds 10^6 points");
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> coords;
    coords.reserve(n * static_cast<std::size_t>(d));
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t k = 0; k < n; ++k) {
      for (int j = 0; j < d; ++j) coords.push_back((idx[static_cast<std::size_t>(j)] + 0.5) / m);
      for (int j = d - 1; j >= 0; --j) {
        if (++idx[static_cast<std::size_t>(j)] < m) break;
        idx[static_cast<std::size_t>(j)] = 0;
      }
    }
    return {DiscreteMeasure::torus(d, std::move(coords)), std::sqrt(static_cast<double>(d)) / (2.0 * m), false};
  }
  if (d != 2) fail(ErrorKind::domain, "sphere quantization supports d = 2 only");
  if (m > 1'000'000) fail(ErrorKind::resource, "quantization exceeds 10^6 points");

  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto fib = [&](int count, int i, double phase, std::vector<double>& out) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    double turn = i / golden + phase;
    turn -= std::floor(turn);
    out.push_back(rad * std::cos(2.0 * pi * turn));
    out.push_back(rad * std::sin(2.0 * pi * turn));
    out.push_back(z);
  };
  std::vector<double> coords;
  coords.reserve(3 * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) fib(m, i, 0.0, coords);
  std::vector<double> polar(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) polar[static_cast<std::size_t>(i)] = std::acos(coords[3 * static_cast<std::size_t>(i) + 2]);

  // Covering radius measured on a denser, shifted lattice plus the poles.
  const int K = 8 * m;
  std::vector<double> probes;
  probes.reserve(3 * static_cast<std::size_t>(K) + 6);
  for (int i = 0; i < K; ++i) fib(K, i, 0.5, probes);
  probes.insert(probes.end(), {0.0, 0.0, 1.0, 0.0, 0.0, -1.0});
  double cover = 0.0;
  for (std::size_t q = 0; q < probes.size(); q += 3) {
    const std::span<const double> x(&probes[q], 3);
    const double theta = std::acos(std::clamp(x[2], -1.0, 1.0));
    const auto guess = static_cast<long>(std::lround((1.0 - x[2]) * m / 2.0 - 0.5));
    const long start = std::clamp<long>(guess, 0, m - 1);
    double best = std::numeric_limits<double>::infinity();
    for (int dirn : {-1, 1}) {
      for (long i = dirn < 0 ? start : start + 1; i >= 0 && i < m; i += dirn) {
        const auto iu = static_cast<std::size_t>(i);
        if (std::abs(polar[iu] - theta) > best) break;
        best = std::min(best, sphere_distance(x, std::span<const double>(&coords[3 * iu], 3)));
      }
    }
    cover = std::max(cover, best);
  }
  return {DiscreteMeasure::sphere(2, std::move(coords)), 1.5 * cover, true};
}

OtResult wp_vs_vol_enclosure(const DiscreteMeasure& nu, double p, int m) {
  return wp_vs_vol_enclosure(nu, p, quantize_vol(nu.space(), nu.dim(), m));
}

OtResult wp_vs_vol_enclosure(const DiscreteMeasure& nu, double p, const Quantization& qv) {
  if (!(p >= 1.0)) fail(ErrorKind::domain, "enclosure needs p ≥ 1");
  if (qv.measure.space() != nu.space() || qv.measure.dim() != nu.dim()) {
    fail(ErrorKind::dimension, "quantized Vol lives on a different space");
  }
  OtResult inner;
  if (std::isinf(p)) {
    inner = discrete_winf(nu, qv.measure);
  } else if (nu.space() == Space::torus && nu.dim() == 1) {
    inner = circle_wp(nu, qv.measure, p);
  } else {
    inner = discrete_wp(nu, qv.measure, p);
  }
  OtResult res;
  res.method = OtMethod::enclosure;
  res.p = p;
  res.value = inner.value;
  res.cost = inner.cost;
  res.error_radius = qv.error_bound;
  res.radius_heuristic = qv.measured;
  return res;
}

double torus_ball_mass_lower(const DiscreteMeasure& nu, double r, int m) {
  if (nu.space() != Space::torus) fail(ErrorKind::domain, "ball-mass certificate is implemented for the torus");
  if (m < 1) fail(ErrorKind::domain, "net resolution must be positive");
  const int d = nu.dim();
  const double count = std::pow(static_cast<double>(m), d);
  if (count * static_cast<double>(nu.size()) > 1e8) fail(ErrorKind::resource, "ball-mass net too large");
  const double h = std::sqrt(static_cast<double>(d)) / (2.0 * m);
  const double rr = r - h;
  if (rr < 0.0) return 0.0;
  double worst = 1.0;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> y(static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
    for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(j)] = (idx[static_cast<std::size_t>(j)] + 0.5) / m;
    double mass = 0.0;
    for (std::size_t n = 0; n < nu.size(); ++n) {
      if (torus_distance(y, nu.point(n)) <= rr) mass += nu.weight(n);
    }
    worst = std::min(worst, mass);
    for (int j = d - 1; j >= 0; --j) {
      if (++idx[static_cast<std::size_t>(j)] < m) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  return worst;
}

}  // namespace wass_smooth
