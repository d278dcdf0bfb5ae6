#include "wass_smooth/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wass_smooth/error.hpp"
#include "wass_smooth/spectral.hpp"
#include "wass_smooth/tails.hpp"

namespace wass_smooth {

namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void hypothesis(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::invalid_hypothesis, what);
}

void check_finite_p(const BoundParams& bp) {
  hypothesis(bp.p >= 1.0 && !bp.p_is_inf(), "requires 1 ≤ p < ∞");
  hypothesis(bp.c >= 0.0 && bp.c <= 1.0, "requires 0 ≤ c ≤ 1");
  hypothesis(bp.p == 1.0 || bp.c > 0.0, "requires p = 1 or c > 0");
  hypothesis(bp.b >= 0.0 && bp.b <= 1.0, "requires 0 ≤ b ≤ 1");
  hypothesis(bp.b == 0.0 || bp.r > 0.0, "requires r > 0 when b > 0");
}

double one_minus_c_root(double p, double c) { return 1.0 + std::pow(1.0 - c, 1.0 / p); }

double root(double s, double q0) {
  if (s <= 0.0) return 0.0;
  return q0 == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / q0);
}

double power(double x, double q0) { return q0 == 2.0 ? x * x : std::pow(x, q0); }

// C2 ((S + tail)^{1/e} - S^{1/e}), the price of the omitted series mass.
double tail_price(double c2, double retained, double tail, double e) {
  if (tail <= 0.0) return 0.0;
  return c2 * (root(retained + tail, e) - root(retained, e));
}

void check_heat_tail(double retained, double tail) {
  if (tail > kHeatTailTolerance * retained) {
    fail(ErrorKind::tail_certificate_missing,
         "series tail " + std::to_string(tail) + " exceeds the tolerance relative to the retained sum " +
             std::to_string(retained) + "; rebuild with a larger window");
  }
}

BoundReport finish(BoundReport rep, double diameter) {
  rep.value = rep.c1_term + rep.fourier_term + rep.tail_contribution;
  rep.vacuous = rep.value > diameter;
  return rep;
}

BoundReport invalid(std::string kind, double param, std::string reason) {
  BoundReport rep;
  rep.kind = std::move(kind);
  rep.smoothing_param = param;
  rep.valid = false;
  rep.value = kInf;
  rep.reason = std::move(reason);
  return rep;
}

double torus_diameter(int d) { return std::sqrt(static_cast<double>(d)) / 2.0; }

}  // namespace

bool BoundParams::p_is_inf() const noexcept { return std::isinf(p); }

double BoundParams::q() const noexcept {
  if (p == 1.0) return kInf;
  if (p_is_inf()) return 1.0;
  return p / (p - 1.0);
}

double BoundParams::q0() const noexcept { return std::min(q(), 2.0); }

double c2_factor(double p, double c, double delta) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::domain, "c2_factor needs finite p ≥ 1");
  if (!(c > 0.0)) fail(ErrorKind::domain, "c2_factor needs c > 0");
  if (!(delta >= 0.0) || delta > c) fail(ErrorKind::domain, "c2_factor needs 0 ≤ δ ≤ c");
  if (std::abs(c - delta) < 1e-9 * c) return std::pow(c, 1.0 / p - 1.0);
  // x = delta/c - 1; p c^{1/p - 1} (1 - (1+x)^{1/p}) / (-x)
  const double x = (delta - c) / c;
  return p * std::pow(c, 1.0 / p - 1.0) * std::expm1(std::log1p(x) / p) / x;
}

double winf_c2_factor(double c, double delta) {
  if (!(c > 0.0) || !(delta > 0.0) || delta > c) fail(ErrorKind::domain, "W-infinity C2 needs 0 < δ ≤ c");
  if (std::abs(c - delta) < 1e-9 * c) return 1.0 / c;
  const double x = (delta - c) / c;
  return std::log1p(x) / (c * x);
}

double heat_delta(int d, double t, double b, double r, double c) {
  if (b <= 0.0) return 0.0;
  const double log_v = std::log(b) - r * r / (4.0 * t) - 0.5 * d * std::log(4.0 * pi * t);
  return std::min(std::exp(log_v), c);
}

double torus_winf_delta(int d, double T, double b, double c) {
  if (b <= 0.0) return 0.0;
  const double log_v = std::log(b) + std::lgamma(0.5 * (d + 2)) + (d + 1) * std::log(2.0) - std::log(27.0) -
                       0.5 * d * std::log(pi) - d * std::log(T);
  return std::min(std::exp(log_v), c);
}

double sphere_winf_delta(int d, double T, double b, double c) {
  if (b <= 0.0) return 0.0;
  const double dd = d;
  const double log_v = std::log(b) + dd * std::log(9.0) - std::log(114.0) - std::lgamma(dd + 1.0) -
                       (dd * dd / 4.0 + dd / 4.0) * std::log(2.0) - dd * std::log(T);
  return std::min(std::exp(log_v), c);
}

double heat_lower_delta(double A, int d, double t, double r, double b, double c) {
  if (!(A >= 0.0) || !(t > 0.0) || !(r >= 0.0) || d < 1) {
    fail(ErrorKind::domain, "heat_lower_delta needs A ≥ 0, t > 0, r ≥ 0, d ≥ 1");
  }
  if (b <= 0.0) return 0.0;
  const double dm1 = d - 1.0;
  const double s2t = std::sqrt(2.0 * t);
  // exponent = base - (a sigma + e / sigma), maximized at sigma = sqrt(e / a)
  const double a = r * r / std::sqrt(18.0 * t) + (2.0 * d / 3.0) * s2t;
  const double e = dm1 * dm1 * A * s2t / 4.0;
  const double best = e > 0.0 ? -2.0 * std::sqrt(a * e) : 0.0;
  const double log_v = std::log(b) - 0.5 * d * std::log(4.0 * pi * t) - r * r / (4.0 * t) -
                       dm1 * dm1 * A * t / 4.0 + best;
  return std::min(std::exp(log_v), c);
}

double torus_jackson_h0(double p) { return p <= 2.0 ? 1.0 : (p + 2.0) / 2.0; }

double torus_jackson_c1(int d, double p, double c) {
  const double sd = std::sqrt(static_cast<double>(d));
  if (p <= 2.0) return std::sqrt(2.0) * one_minus_c_root(p, c) * sd;
  return one_minus_c_root(p, c) * (p + 4.0) * sd / std::sqrt(6.0);
}

double torus_heat_c1(int d, double p, double c) {
  const double ratio = std::exp(log_gamma_ratio(0.5 * (d + p), 0.5 * d) / p);
  return 2.0 * one_minus_c_root(p, c) * ratio;
}

double sphere_heat_c1(int d, double p, double c) {
  if (p <= 2.0) return std::sqrt(2.0) * one_minus_c_root(p, c) * std::sqrt(static_cast<double>(d));
  return one_minus_c_root(p, c) * std::sqrt(2.0 * d + p);
}

double sphere_projection_c1(int d, double p, double c) {
  const double log_rest = std::log(12.0) / p + d / p + (1.0 + d / p) * std::log((p + 5.0) / 2.0);
  return 8.0 * one_minus_c_root(p, c) * d * std::exp(log_rest);
}

double design_bound(int d, double p, int t) {
  const double C = 14.0 * d * std::max(d * std::log(100.0 * d), p);
  return C / t;
}

// --- torus ---------------------------------------------------------------------

BoundReport bound_torus_jackson(const TorusSpectrumDiff& diff, const BoundParams& bp, int H) {
  check_finite_p(bp);
  const int d = diff.dim;
  const double H0 = torus_jackson_h0(bp.p);
  hypothesis(H > H0, "requires H > H0 = " + std::to_string(H0));
  if (diff.window + 1e-12 < H * std::sqrt(static_cast<double>(d))) {
    fail(ErrorKind::insufficient_window, "table window " + std::to_string(diff.window) +
                                             " does not cover the box [-H, H]^d");
  }
  const double q0 = bp.q0();
  double S = 0.0;
  for (std::size_t i = 0; i < diff.size() && diff.box_norm[i] <= H; ++i) {
    S += power(std::abs(diff.diff[i]) / (2.0 * pi * std::sqrt(static_cast<double>(diff.norm2[i]))), q0);
  }
  BoundReport rep;
  rep.kind = "torus-jackson";
  rep.smoothing_param = H;
  const double C1 = torus_jackson_c1(d, bp.p, bp.c);
  const double C2 = bp.p == 1.0 ? 1.0 : bp.p * std::pow(bp.c, -1.0 / bp.q());
  rep.constants = {{"C1", C1}, {"C2", C2}, {"H0", H0}, {"q0", q0}};
  rep.c1_term = C1 / (H - H0);
  rep.series_retained = S;
  rep.fourier_term = C2 * root(S, q0);
  return finish(rep, torus_diameter(d));
}

BoundReport bound_torus_heat(const TorusSpectrumDiff& diff, const BoundParams& bp, double t) {
  check_finite_p(bp);
  hypothesis(t > 0.0, "requires t > 0");
  const int d = diff.dim;
  const double q0 = bp.q0();
  const double S = diff.identical ? 0.0 : torus_heat_series(diff, t, q0);
  const double tail = diff.identical ? 0.0 : torus_heat_tail(d, diff.window, t, q0);
  check_heat_tail(S, tail);
  const double delta = heat_delta(d, t, bp.b, bp.r, bp.c);
  const double C1 = torus_heat_c1(d, bp.p, bp.c);
  const double C2 = bp.p == 1.0 ? 1.0 : c2_factor(bp.p, bp.c, delta);
  BoundReport rep;
  rep.kind = "torus-heat";
  rep.smoothing_param = t;
  rep.constants = {{"C1", C1}, {"C2", C2}, {"delta", delta}, {"q0", q0}};
  rep.c1_term = C1 * std::sqrt(t);
  rep.series_retained = S;
  rep.series_tail = tail;
  rep.fourier_term = C2 * root(S, q0);
  rep.tail_contribution = tail_price(C2, S, tail, q0);
  return finish(rep, torus_diameter(d));
}

BoundReport bound_torus_winf(const TorusSpectrumDiff& diff, const BoundParams& bp, double T) {
  const std::string kind = "torus-winf";
  if (!(bp.c > 0.0) || bp.c > 1.0) return invalid(kind, T, "requires 0 < c ≤ 1");
  if (!(bp.b > 0.0) || bp.b > 1.0) return invalid(kind, T, "requires 0 < b ≤ 1");
  if (!(bp.r > 0.0)) return invalid(kind, T, "requires r > 0");
  if (!(T >= 5.0 * bp.r)) return invalid(kind, T, "requires T ≥ 5r");
  const int d = diff.dim;
  const double S = diff.identical ? 0.0 : torus_winf_series(diff, T);
  const double tail = diff.identical ? 0.0 : torus_winf_tail(d, diff.window, T);
  const double delta = torus_winf_delta(d, T, bp.b, bp.c);
  const double C1 = diff.mu_is_vol ? 1.0 : 2.0;
  const double C2 = winf_c2_factor(bp.c, delta);
  BoundReport rep;
  rep.kind = kind;
  rep.smoothing_param = T;
  rep.tail_target_met = tail <= kHeatTailTolerance * S;
  rep.constants = {{"C1", C1}, {"C2", C2}, {"delta", delta}};
  rep.c1_term = C1 * T;
  rep.series_retained = S;
  rep.series_tail = tail;
  rep.fourier_term = C2 * S;
  rep.tail_contribution = C2 * tail;
  return finish(rep, torus_diameter(d));
}

// --- sphere --------------------------------------------------------------------

BoundReport bound_sphere_heat(const SphereEnergySeq& seq, const BoundParams& bp, double t) {
  check_finite_p(bp);
  hypothesis(t > 0.0, "requires t > 0");
  const int d = seq.dim;
  const double q0 = bp.q0();
  const double S = seq.identical ? 0.0 : sphere_heat_series(seq, t, q0);
  const double tail = seq.identical ? 0.0 : sphere_heat_tail(d, seq.max_ell(), t, q0);
  check_heat_tail(S, tail);
  const double delta = heat_delta(d, t, bp.b, bp.r, bp.c);
  const double C1 = sphere_heat_c1(d, bp.p, bp.c);
  double C2 = 1.0;
  if (bp.p > 1.0) C2 = c2_factor(bp.p, bp.c, delta) * (bp.p > 2.0 ? 2.0 * (bp.p - 1.0) : 1.0);
  BoundReport rep;
  rep.kind = "sphere-heat";
  rep.smoothing_param = t;
  rep.constants = {{"C1", C1}, {"C2", C2}, {"delta", delta}, {"q0", q0}};
  rep.c1_term = C1 * std::sqrt(t);
  rep.series_retained = S;
  rep.series_tail = tail;
  rep.fourier_term = C2 * root(S, q0);
  rep.tail_contribution = tail_price(C2, S, tail, q0);
  return finish(rep, pi);
}

BoundReport bound_sphere_projection(const SphereEnergySeq& seq, const BoundParams& bp, int L) {
  check_finite_p(bp);
  hypothesis(L >= 1, "requires L ≥ 1");
  if (seq.max_ell() < L) {
    fail(ErrorKind::insufficient_window, "energies cover degrees up to " + std::to_string(seq.max_ell()) +
                                             ", projection needs L = " + std::to_string(L));
  }
  const int d = seq.dim;
  const double q0 = bp.q0();
  double S = 0.0;
  if (!seq.identical) {
    for (int ell = 1; ell <= L; ++ell) {
      const SphereEigen e = sphere_eigen(d, ell);
      const double mult = static_cast<double>(e.mult);
      const double ratio = seq.energy(ell) / (mult * e.lambda);
      S += mult * (q0 == 2.0 ? ratio : std::pow(ratio, 0.5 * q0));
    }
  }
  const double C1 = sphere_projection_c1(d, bp.p, bp.c);
  double C2 = 1.0;
  if (bp.p > 1.0) C2 = bp.p * std::pow(bp.c, -1.0 / bp.q()) * (bp.p > 2.0 ? 2.0 * (bp.p - 1.0) : 1.0);
  BoundReport rep;
  rep.kind = "sphere-projection";
  rep.smoothing_param = L;
  rep.constants = {{"C1", C1}, {"C2", C2}, {"q0", q0}};
  rep.c1_term = C1 / L;
  rep.series_retained = S;
  rep.fourier_term = C2 * root(S, q0);
  return finish(rep, pi);
}

BoundReport bound_sphere_winf(const SphereEnergySeq& seq, const BoundParams& bp, double T) {
  const std::string kind = "sphere-winf";
  const int d = seq.dim;
  const double sd = std::sqrt(static_cast<double>(d));
  if (d < 3) return invalid(kind, T, "requires d ≥ 3");
  if (!(bp.c > 0.0) || bp.c > 1.0) return invalid(kind, T, "requires 0 < c ≤ 1");
  if (!(bp.b > 0.0) || bp.b > 1.0) return invalid(kind, T, "requires 0 < b ≤ 1");
  if (!(bp.r > 0.0) || bp.r > std::ldexp(1.0, -d - 3) / sd) {
    return invalid(kind, T, "requires 0 < r ≤ 2^{-d-3} d^{-1/2}");
  }
  if (!(T >= std::ldexp(1.0, d + 3) / sd * bp.r)) return invalid(kind, T, "requires T ≥ 2^{d+3} d^{-1/2} r");
  if (!(T <= 1.0 / d)) return invalid(kind, T, "requires T ≤ 1/d");
  const double S = seq.identical ? 0.0 : sphere_winf_series(seq, T);
  const double tail = seq.identical ? 0.0 : sphere_winf_tail(d, seq.max_ell(), T);
  const double delta = sphere_winf_delta(d, T, bp.b, bp.c);
  const double C1 = seq.mu_is_vol ? 1.0 : 2.0;
  const double C2 = winf_c2_factor(bp.c, delta);
  BoundReport rep;
  rep.kind = kind;
  rep.smoothing_param = T;
  rep.tail_target_met = seq.tail_target_met;
  rep.constants = {{"C1", C1}, {"C2", C2}, {"delta", delta}};
  rep.c1_term = C1 * T;
  rep.series_retained = S;
  rep.series_tail = tail;
  rep.fourier_term = C2 * S;
  rep.tail_contribution = C2 * tail;
  return finish(rep, pi);
}

// --- manifolds ----------------------------------------------------------------

namespace {

void check_manifold(const GenericSpectrumDiff& diff, const BoundParams& bp, const ManifoldConstants& mc) {
  diff.validate();
  if (bp.d < 1) fail(ErrorKind::domain, "manifold dimension must be positive");
  hypothesis(mc.A >= 0.0, "requires A ≥ 0");
  hypothesis(mc.A == 0.0 || mc.diam > 0.0, "requires diam > 0 when A > 0");
  if (diff.torus_origin && diff.torus_origin->dim != bp.d) {
    fail(ErrorKind::dimension, "spectrum comes from a torus of a different dimension");
  }
}

double manifold_diameter(const GenericSpectrumDiff& diff, const ManifoldConstants& mc) {
  if (mc.diam > 0.0) return mc.diam;
  if (diff.torus_origin) return torus_diameter(diff.torus_origin->dim);
  return kInf;
}

}  // namespace

BoundReport bound_manifold_heat_p_le2(const GenericSpectrumDiff& diff, const BoundParams& bp,
                                      const ManifoldConstants& mc, double t) {
  check_finite_p(bp);
  hypothesis(bp.p <= 2.0, "requires 1 ≤ p ≤ 2");
  hypothesis(t > 0.0, "requires t > 0");
  check_manifold(diff, bp, mc);
  const int d = bp.d;
  double S = 0.0;
  if (!diff.identical) {
    for (std::size_t i = 0; i < diff.size(); ++i) {
      const double lam = diff.eigenvalues[i];
      S += std::exp(-2.0 * lam * t) * diff.diffs[i] * diff.diffs[i] / lam;
    }
  }
  double tail = 0.0;
  BoundReport rep;
  if (diff.identical) {
  } else if (diff.torus_origin) {
    tail = torus_heat_tail(d, diff.torus_origin->window, t, 2.0);
    check_heat_tail(S, tail);
  } else {
    rep.tail_certified = false;
  }
  const double sqA = std::sqrt(mc.A);
  const double C1 = std::sqrt(2.0) * one_minus_c_root(bp.p, bp.c) * std::sqrt(static_cast<double>(d));
  const double C3 = std::pow(2.0, 1.5) * (d - 1) * sqA / (3.0 * d) * std::sqrt(d + (d - 1) * sqA * mc.diam);
  const double delta = heat_lower_delta(mc.A, d, t, bp.r, bp.b, bp.c);
  const double C2 = bp.p == 1.0 ? 1.0 : c2_factor(bp.p, bp.c, delta);
  rep.kind = "manifold-le2";
  rep.smoothing_param = t;
  rep.constants = {{"C1", C1}, {"C2", C2}, {"C3", C3}, {"delta", delta}};
  rep.c1_term = C1 * std::sqrt(t) * std::sqrt(1.0 + C3 * std::sqrt(t));
  rep.series_retained = S;
  rep.series_tail = tail;
  rep.fourier_term = C2 * std::sqrt(S);
  rep.tail_contribution = tail_price(C2, S, tail, 2.0);
  return finish(rep, manifold_diameter(diff, mc));
}

BoundReport bound_manifold_heat_p_gt2(const GenericSpectrumDiff& diff, const BoundParams& bp,
                                      const ManifoldConstants& mc, double t) {
  check_finite_p(bp);
  hypothesis(bp.p > 2.0, "requires p > 2");
  hypothesis(t > 0.0, "requires t > 0");
  check_manifold(diff, bp, mc);
  const int d = bp.d;
  const double a = (d - 1) * mc.A;
  if (!mc.K_weyl || !(*mc.K_weyl > 0.0)) fail(ErrorKind::missing_constants, "K_weyl > 0 is required for p > 2");
  if (a > 0.0 && (!mc.K_poincare || !(*mc.K_poincare > 0.0))) {
    fail(ErrorKind::missing_constants, "K_poincare > 0 is required for p > 2 when A > 0");
  }
  const double p = bp.p;
  const double q = bp.q();
  const double gamma = (p - 2.0) * (d - 1) / (2.0 * p - 2.0);

  // Shells sqrt(Lambda) in [l, l+1); eigenvalues arrive sorted.
  double S = 0.0;
  if (!diff.identical) {
    std::size_t i = 0;
    while (i < diff.size()) {
      const double ell = std::floor(std::sqrt(diff.eigenvalues[i]));
      double shell = 0.0;
      for (; i < diff.size() && std::floor(std::sqrt(diff.eigenvalues[i])) == ell; ++i) {
        const double lam = diff.eigenvalues[i];
        shell += std::exp(-2.0 * lam * t) * diff.diffs[i] * diff.diffs[i] / (lam + a);
      }
      S += std::pow(ell + 1.0, gamma) * std::pow(shell, 0.5 * q);
    }
  }
  double tail = 0.0;
  BoundReport rep;
  if (diff.identical) {
  } else if (diff.torus_origin) {
    // Shells that reach past the window may be incomplete; (x + y)^{q/2} <= x^{q/2} + y^{q/2}
    // lets their missing mass be bounded separately.
    const int first = static_cast<int>(std::floor(2.0 * pi * diff.torus_origin->window));
    tail = torus_shell_tail(d, first, t, q, gamma, a);
    check_heat_tail(S, tail);
  } else {
    rep.tail_certified = false;
  }
  const double sqA = std::sqrt(mc.A);
  const double C1 = one_minus_c_root(p, bp.c) * std::sqrt(2.0 * d + p);
  const double C3 = 2.0 * (d - 1) * sqA * std::exp((p + 2.0) / 2.0 + (d - 1) * sqA * mc.diam / 2.0);
  const double delta = heat_lower_delta(mc.A, d, t, bp.r, bp.b, bp.c);
  const double riesz = mc.A == 0.0 ? 2.0 : 3.0 * std::sqrt(6.0);
  const double poinc = a > 0.0 ? std::sqrt(a) * *mc.K_poincare : 0.0;
  const double C2 = std::pow(*mc.K_weyl, (p - 2.0) / (2.0 * p)) * (riesz * (p - 1.0) + poinc) *
                    c2_factor(p, bp.c, delta);
  rep.kind = "manifold-gt2";
  rep.smoothing_param = t;
  rep.constants = {{"C1", C1}, {"C2", C2}, {"C3", C3}, {"delta", delta}, {"q", q}};
  rep.c1_term = C1 * std::sqrt(t) * std::pow(1.0 + C3 * std::sqrt(t), 1.0 / p);
  rep.series_retained = S;
  rep.series_tail = tail;
  rep.fourier_term = C2 * root(S, q);
  rep.tail_contribution = tail_price(C2, S, tail, q);
  return finish(rep, manifold_diameter(diff, mc));
}

// --- optimizer -----------------------------------------------------------------

namespace {

template <class F>
std::optional<BoundReport> try_eval(const F& eval, auto x) {
  try {
    BoundReport r = eval(x);
    if (!r.valid || !std::isfinite(r.value)) return std::nullopt;
    return r;
  } catch (const Error& e) {
    if (e.is_hypothesis()) return std::nullopt;
    throw;
  }
}

struct Best {
  bool found = false;
  double x = 0.0;
  BoundReport rep;

  void offer(double px, const std::optional<BoundReport>& r) {
    if (!r) return;
    if (!found || r->value < rep.value || (r->value == rep.value && px < x)) {
      found = true;
      x = px;
      rep = *r;
    }
  }
};

}  // namespace

OptimizeResult optimize_bound(const std::function<BoundReport(double)>& eval, double lo, double hi, int grid) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) fail(ErrorKind::domain, "parameter range must satisfy 0 < lo ≤ hi");
  if (grid < 2) fail(ErrorKind::domain, "grid needs at least 2 points");
  OptimizeResult out;
  Best best;
  const double ulo = std::log(lo);
  const double uhi = std::log(hi);
  std::vector<double> xs;
  if (lo == hi) {
    xs.push_back(lo);
  } else {
    for (int i = 0; i < grid; ++i) {
      xs.push_back(i == 0 ? lo : i == grid - 1 ? hi : std::exp(ulo + (uhi - ulo) * i / (grid - 1)));
    }
  }
  for (double x : xs) {
    best.offer(x, try_eval(eval, x));
    ++out.evaluations;
  }
  if (!best.found) fail(ErrorKind::no_valid_point, "no parameter in the range satisfies the hypotheses");

  if (xs.size() > 1) {
    const auto idx = static_cast<std::size_t>(std::find(xs.begin(), xs.end(), best.x) - xs.begin());
    double a = std::log(xs[idx == 0 ? 0 : idx - 1]);
    double b = std::log(xs[std::min(idx + 1, xs.size() - 1)]);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto value_at = [&](double u) {
      double x = std::clamp(std::exp(u), lo, hi);
      if (u - ulo < 1e-12) x = lo;
      if (uhi - u < 1e-12) x = hi;
      const auto r = try_eval(eval, x);
      ++out.evaluations;
      best.offer(x, r);
      return r ? r->value : kInf;
    };
    for (int round = 0; round < 2; ++round) {
      double u1 = b - g * (b - a);
      double u2 = a + g * (b - a);
      double f1 = value_at(u1);
      double f2 = value_at(u2);
      for (int it = 0; it < 20; ++it) {
        if (f1 <= f2) {
          b = u2;
          u2 = u1;
          f2 = f1;
          u1 = b - g * (b - a);
          f1 = value_at(u1);
        } else {
          a = u1;
          u1 = u2;
          f1 = f2;
          u2 = a + g * (b - a);
          f2 = value_at(u2);
        }
      }
      const double centre = std::log(best.x);
      const double half = (b - a) * 4.0;
      a = std::max(ulo, centre - half);
      b = std::min(uhi, centre + half);
    }
  }
  out.param = best.x;
  out.report = best.rep;
  return out;
}

OptimizeResult optimize_bound_int(const std::function<BoundReport(int)>& eval, int lo, int hi) {
  if (hi < lo) fail(ErrorKind::domain, "empty integer range");
  if (static_cast<long>(hi) - lo + 1 > 10'000) fail(ErrorKind::resource, "integer range exceeds 10^4 candidates");
  OptimizeResult out;
  Best best;
  for (int x = lo; x <= hi; ++x) {
    best.offer(x, try_eval(eval, x));
    ++out.evaluations;
  }
  if (!best.found) fail(ErrorKind::no_valid_point, "no parameter in the range satisfies the hypotheses");
  out.param = best.x;
  out.report = best.rep;
  return out;
}

}  // namespace wass_smooth
