#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wass_smooth/bounds.hpp"
#include "wass_smooth/error.hpp"
#include "wass_smooth/measures.hpp"
#include "wass_smooth/oracle.hpp"
#include "wass_smooth/tails.hpp"

using namespace wass_smooth;
using doctest::Approx;
using std::numbers::pi;
using hp = boost::multiprecision::cpp_bin_float_50;

namespace {

Measure torus_vol(int d) { return UniformVol{Space::torus, d}; }
Measure sphere_vol(int d) { return UniformVol{Space::sphere, d}; }

DiscreteMeasure random_torus(std::mt19937_64& g, int d, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(d * n));
  for (auto& x : c) x = u(g);
  return DiscreteMeasure::torus(d, c, oracle::random_weights(g, n));
}

BoundParams params(double p, double c, int d, double b = 0.0, double r = 0.0) {
  BoundParams bp;
  bp.p = p;
  bp.c = c;
  bp.d = d;
  bp.b = b;
  bp.r = r;
  return bp;
}

void check_sum(const BoundReport& r) {
  CHECK(r.c1_term >= 0.0);
  CHECK(r.fourier_term >= 0.0);
  CHECK(r.tail_contribution >= 0.0);
  CHECK(std::abs(r.value - (r.c1_term + r.fourier_term + r.tail_contribution)) <= 1e-15 * r.value);
}

}  // namespace

TEST_CASE("c2 factor") {
  CHECK(c2_factor(2.0, 1.0, 0.0) == Approx(2.0).epsilon(1e-15));
  CHECK(c2_factor(5.0, 1.0, 1.0) == 1.0);
  const hp ref = 3 * (boost::multiprecision::pow(hp(0.8), hp(1) / 3) - boost::multiprecision::pow(hp(0.2), hp(1) / 3)) /
                 (hp(0.8) - hp(0.2));
  CHECK(std::abs(c2_factor(3.0, 0.8, 0.2) - ref.convert_to<double>()) <= 1e-15);
  CHECK_THROWS_AS(c2_factor(2.0, 0.5, 0.6), Error);
  CHECK_THROWS_AS(c2_factor(2.0, 0.0, 0.0), Error);
  for (double p : {1.5, 2.0, 3.0, 10.0}) {
    for (double c : {0.1, 1.0}) {
      const double lim = std::pow(c, -(1.0 - 1.0 / p));
      CHECK(std::abs(c2_factor(p, c, c * (1.0 - 1e-10)) - lim) < 1e-7 * lim);
      // both sides of the switch
      const double a = c2_factor(p, c, c * (1.0 - 0.9e-9));
      const double b = c2_factor(p, c, c * (1.0 - 1.1e-9));
      CHECK(std::abs(a - b) < 1e-8 * lim);
    }
  }
}

TEST_CASE("Jackson bound examples") {
  const auto d0 = DiscreteMeasure::torus(1, {0.0});
  const auto same = torus_diff_table(d0, d0, 3.0, TailRule::jackson_window());
  const auto r = bound_torus_jackson(same, params(1.0, 1.0, 1), 3);
  CHECK(r.value == Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(r.fourier_term == 0.0);
  check_sum(r);

  const auto t = torus_diff_table(torus_vol(1), d0, 20.0, TailRule::jackson_window());
  const auto r2 = bound_torus_jackson(t, params(1.0, 0.0, 1), 2);
  const double expect = 2.0 * std::sqrt(2.0) + std::sqrt(2.0 / (4 * pi * pi) + 2.0 / (16 * pi * pi));
  CHECK(r2.value == Approx(expect).epsilon(1e-14));
  CHECK(r2.value == Approx(3.0801).epsilon(1e-4));
  CHECK(r2.value > circle_w1(torus_vol(1), d0).value);
  CHECK(bound_torus_jackson(t, params(1.0, 0.0, 1), 20).value < bound_torus_jackson(t, params(1.0, 0.0, 1), 10).value);

  CHECK_THROWS_AS(bound_torus_jackson(t, params(1.0, 0.0, 1), 1), Error);
  CHECK_THROWS_AS(bound_torus_jackson(t, params(2.0, 0.0, 1), 3), Error);
  CHECK_THROWS_AS(bound_torus_jackson(t, params(4.0, 1.0, 1), 3), Error);  // H0 = 3
  CHECK_NOTHROW(bound_torus_jackson(t, params(4.0, 1.0, 1), 4));
  try {
    bound_torus_jackson(t, params(1.0, 0.0, 1), 21);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::insufficient_window);
  }
}

TEST_CASE("torus heat examples") {
  const auto d0 = DiscreteMeasure::torus(1, {0.0});
  const auto same = torus_diff_table(d0, d0, 1.0, TailRule::heat(0.01));
  const auto r = bound_torus_heat(same, params(2.0, 1.0, 1), 0.01);
  const double g = std::exp(std::lgamma(1.5) - std::lgamma(0.5));
  CHECK(r.value == Approx(2.0 * std::sqrt(g) * 0.1).epsilon(1e-14));
  CHECK(r.value == Approx(0.14142).epsilon(1e-4));
  CHECK(r.fourier_term == 0.0);

  CHECK(heat_delta(1, 0.01, 1.0, 0.1, 1.0) == 1.0);
  const auto vt = torus_diff_table(torus_vol(1), d0, 1.0, TailRule::heat(0.01));
  const auto r2 = bound_torus_heat(vt, params(2.0, 1.0, 1, 1.0, 0.1), 0.01);
  CHECK(r2.constants.at("C2") == 1.0);
  check_sum(r2);
  CHECK_THROWS_AS(bound_torus_heat(vt, params(2.0, 0.0, 1), 0.01), Error);
}

TEST_CASE("heat C1 stays below the simpler majorant") {
  std::mt19937_64 g(1);
  std::uniform_int_distribution<int> di(1, 8);
  std::uniform_real_distribution<double> pu(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const int d = di(g);
    const double p = 1.0 + 20.0 * pu(g) * pu(g);
    const double c = pu(g);
    const double c1 = torus_heat_c1(d, p, c);
    CHECK(c1 <= (1.0 + std::pow(1.0 - c, 1.0 / p)) * std::sqrt(2.0 * d + p) * (1.0 + 1e-14));
    const double hpv = 2.0 * (1.0 + std::pow(1.0 - c, 1.0 / p)) * std::exp(oracle::lgamma_ratio_hp(0.5 * (d + p), 0.5 * d) / p);
    CHECK(c1 == Approx(hpv).epsilon(1e-13));
  }
}

TEST_CASE("torus W-infinity weights and delta") {
  CHECK(torus_winf_weight(1, 0.5, 2.0) == 1.0);
  const double a3 = std::exp(-(2.0 / (4.0 * std::log(2.0))) * std::log(1.5 * pi / 4.0) *
                             std::log(std::exp(2.0) * 1.5 * pi / 3.0));
  CHECK(torus_winf_weight(1, 0.5, 3.0) == Approx(a3).epsilon(1e-13));
  CHECK(a3 == Approx(0.748).epsilon(1e-3));
  const double delta = std::tgamma(1.5) * 4.0 / (27.0 * std::sqrt(pi) * 0.5);
  CHECK(torus_winf_delta(1, 0.5, 1.0, 1.0) == Approx(delta).epsilon(1e-14));
  CHECK(delta == Approx(0.1481).epsilon(1e-3));
  CHECK(torus_winf_delta(1, 0.5, 1.0, 0.1) == 0.1);

  const auto d0 = DiscreteMeasure::torus(1, {0.0});
  const auto tab = torus_diff_table(torus_vol(1), d0, 4.0, TailRule::winf(0.5));
  auto bp = params(INFINITY, 1.0, 1, 1.0, 0.05);
  const auto r = bound_torus_winf(tab, bp, 0.5);
  CHECK(r.valid);
  CHECK(r.constants.at("C1") == 1.0);
  check_sum(r);
  const auto bad = bound_torus_winf(tab, bp, 0.2);
  CHECK_FALSE(bad.valid);
  CHECK(bad.reason == "requires T ≥ 5r");
  bp.c = 0.0;
  CHECK(bound_torus_winf(tab, bp, 0.5).reason == "requires 0 < c ≤ 1");
  bp.c = 1.0;
  bp.b = 0.0;
  CHECK(bound_torus_winf(tab, bp, 0.5).reason == "requires 0 < b ≤ 1");
  const auto flip = torus_diff_table(d0, torus_vol(1), 4.0, TailRule::winf(0.5));
  CHECK(bound_torus_winf(flip, params(INFINITY, 1.0, 1, 1.0, 0.05), 0.5).constants.at("C1") == 2.0);
}

TEST_CASE("W-infinity tables that stop at the point cap say so") {
  const auto q = DiscreteMeasure::torus(2, {0.0, 0.0, 0.5, 0.5});
  TailOptions opts;
  opts.point_cap = 2000;
  CHECK_THROWS_AS(torus_diff_table(torus_vol(2), q, 4.0, TailRule::winf(0.5), opts), Error);
  opts.strict = false;
  const auto tab = torus_diff_table(torus_vol(2), q, 4.0, TailRule::winf(0.5), opts);
  CHECK_FALSE(tab.tail_target_met);
  const auto r = bound_torus_winf(tab, params(INFINITY, 1.0, 2, 0.5, 0.1), 0.5);
  CHECK(r.valid);
  CHECK_FALSE(r.tail_target_met);
  CHECK(r.series_tail > 0.0);
  check_sum(r);

  const auto wide = torus_diff_table(torus_vol(2), q, 4.0, TailRule::winf(0.5));
  CHECK(wide.tail_target_met);
  CHECK(bound_torus_winf(wide, params(INFINITY, 1.0, 2, 0.5, 0.1), 0.5).tail_target_met);
}

TEST_CASE("sphere heat and projection examples") {
  const auto a = DiscreteMeasure::sphere(2, {0.0, 0.0, 1.0});
  const auto same = sphere_energy_seq(a, a, 4, TailRule::heat(0.01));
  const auto r = bound_sphere_heat(same, params(2.0, 1.0, 2), 0.01);
  CHECK(r.value == Approx(0.2).epsilon(1e-14));

  const auto vseq = sphere_energy_seq(sphere_vol(2), a, 8, TailRule::heat(0.01));
  const auto vseq3 = sphere_energy_seq(sphere_vol(2), a, 8, TailRule::heat(0.01, 1.5));
  const auto r3 = bound_sphere_heat(vseq3, params(3.0, 1.0, 2), 0.01);
  CHECK(r3.constants.at("C2") == Approx(12.0).epsilon(1e-14));
  check_sum(r3);

  // partial sum with E_l = d_l, q0 = 2
  const auto r2 = bound_sphere_heat(vseq, params(2.0, 1.0, 2), 0.01);
  double S = 0.0;
  for (int l = 1; l <= vseq.max_ell(); ++l) {
    const double lam = l * (l + 1.0);
    S += (2 * l + 1) * std::exp(-lam * 2.0 * 0.01) * (1.0 / lam);
  }
  CHECK(r2.series_retained == Approx(S).epsilon(1e-12));
  CHECK(r2.fourier_term == Approx(r2.constants.at("C2") * std::sqrt(S)).epsilon(1e-12));
  CHECK(r2.series_tail <= 1e-11 * S);
  check_sum(r2);

  const auto proj_same = sphere_energy_seq(a, a, 10, TailRule::projection_window());
  const auto pr = bound_sphere_projection(proj_same, params(1.0, 1.0, 2), 10);
  CHECK(pr.constants.at("C1") == Approx(8.0 * 12.0 * 2.0 * std::exp(2.0) * 27.0).epsilon(1e-14));
  CHECK(pr.value == Approx(3830.4).epsilon(1e-4));
  const auto proj = sphere_energy_seq(sphere_vol(2), a, 10, TailRule::projection_window());
  CHECK(bound_sphere_projection(proj, params(4.0, 1.0, 2), 3).constants.at("C2") == Approx(24.0).epsilon(1e-14));
  CHECK_THROWS_AS(bound_sphere_projection(proj, params(1.0, 1.0, 2), 11), Error);

  const auto oct = DiscreteMeasure::sphere(2, {1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1});
  const auto oseq = sphere_energy_seq(sphere_vol(2), oct, 3, TailRule::projection_window());
  CHECK(bound_sphere_projection(oseq, params(1.0, 1.0, 2), 3).fourier_term < 1e-7);
}

TEST_CASE("sphere W-infinity") {
  const int d = 3;
  const double T = 0.1;
  CHECK(sphere_winf_weight(d, T, 100) == 1.0);
  CHECK(sphere_winf_weight(d, T, 320) == 1.0);
  const double a400 = 43.0 * std::exp(-(1.0 / std::log(2.0)) * std::log(2.5) * std::log(1.25));
  CHECK(sphere_winf_weight(d, T, 400) == Approx(a400).epsilon(1e-13));
  CHECK(a400 == Approx(32.0).epsilon(1e-2));

  using boost::multiprecision::pow;
  const hp ref = pow(hp(9), 3) / (hp(114) * 6 * pow(hp(2), hp(3)) * pow(hp(0.1), 3));
  CHECK(sphere_winf_delta(3, 0.1, 1e-3, 1.0) == Approx((ref * hp(1e-3)).convert_to<double>()).epsilon(1e-13));
  CHECK(sphere_winf_delta(3, 0.1, 1.0, 1.0) == 1.0);

  const std::vector<double> n{0.0, 0.0, 0.0, 1.0};
  const auto pt = DiscreteMeasure::sphere(3, n);
  TailOptions opts;
  opts.strict = false;
  const auto seq = sphere_energy_seq(sphere_vol(3), pt, 8, TailRule::winf(T), opts);
  const double rmax = std::ldexp(1.0, -6) / std::sqrt(3.0);
  const auto ok = bound_sphere_winf(seq, params(INFINITY, 1.0, 3, 0.5, rmax / 2), 0.3);
  CHECK(ok.valid);
  check_sum(ok);
  CHECK(bound_sphere_winf(seq, params(INFINITY, 1.0, 3, 0.5, rmax / 2), 0.4).reason == "requires T ≤ 1/d");
  CHECK(bound_sphere_winf(seq, params(INFINITY, 1.0, 3, 0.5, rmax * 2), 0.3).reason ==
        "requires 0 < r ≤ 2^{-d-3} d^{-1/2}");
  CHECK(bound_sphere_winf(seq, params(INFINITY, 1.0, 3, 0.5, rmax), 0.01).reason ==
        "requires T ≥ 2^{d+3} d^{-1/2} r");
  const auto s2 = sphere_energy_seq(sphere_vol(2), DiscreteMeasure::sphere(2, {0.0, 0.0, 1.0}), 4,
                                    TailRule::projection_window());
  CHECK(bound_sphere_winf(s2, params(INFINITY, 1.0, 2, 0.5, 1e-3), 0.3).reason == "requires d ≥ 3");
}

TEST_CASE("heat kernel lower bound delta") {
  CHECK(heat_lower_delta(0.0, 2, 0.01, 0.1, 1.0, 100.0) ==
        Approx(std::exp(-0.25) / (4 * pi * 0.01)).epsilon(1e-14));
  CHECK(heat_lower_delta(1.0, 2, 0.01, 0.0, 1.0, 10.0) == Approx(6.742).epsilon(1e-4));
  CHECK(heat_lower_delta(1.0, 2, 0.01, 0.0, 0.0, 10.0) == 0.0);

  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 4;
    const double A = 2.0 * u(g), t = 0.001 + 0.2 * u(g), r = 0.5 * u(g);
    const auto phi = [&](double ls) {
      const double s = std::exp(ls);
      const double dm = (d - 1.0) * (d - 1.0);
      return -0.5 * d * std::log(4 * pi * t) - (1.0 / (4 * t) + s / std::sqrt(18 * t)) * r * r - dm * A * t / 4 -
             (dm * A / (4 * s) + 2.0 * d * s / 3) * std::sqrt(2 * t);
    };
    const double sup = std::exp(oracle::golden_max(phi, -20.0, 20.0));
    CHECK(heat_lower_delta(A, d, t, r, 1.0, 1e300) == Approx(sup).epsilon(1e-9));
  }
}

TEST_CASE("manifold bounds") {
  std::mt19937_64 g(5);
  const auto nu = random_torus(g, 1, 6);
  const double t = 0.01;
  const auto tab = torus_diff_table(torus_vol(1), nu, 1.0, TailRule::heat(t));
  const auto gen = generic_diff_from_table(tab);
  ManifoldConstants mc;
  const auto bp = params(2.0, 1.0, 1, 0.2, 0.1);
  const auto m = bound_manifold_heat_p_le2(gen, bp, mc, t);
  const auto h = bound_torus_heat(tab, bp, t);
  CHECK(std::abs(m.value - h.value) <= 1e-12 * h.value);
  CHECK(m.constants.at("C3") == 0.0);
  check_sum(m);

  const auto same = generic_diff_from_torus(nu, nu, 4.0);
  mc.A = 1.0;
  mc.diam = 0.5;
  const auto ms = bound_manifold_heat_p_le2(same, params(1.0, 1.0, 1), mc, t);
  CHECK(ms.fourier_term == 0.0);
  const double C1 = std::sqrt(2.0);
  CHECK(ms.value == Approx(C1 * 0.1 * std::sqrt(1.0 + ms.constants.at("C3") * 0.1)).epsilon(1e-14));

  ManifoldConstants flat;
  flat.K_weyl = 1.0;
  // the shell-grouped tail needs a wider window than the heat rule picks
  const auto gen4 = generic_diff_from_table(torus_diff_table(torus_vol(1), nu, 64.0, TailRule::heat(t, 4.0 / 3.0)));
  const auto gt = bound_manifold_heat_p_gt2(gen4, params(4.0, 1.0, 1), flat, t);
  CHECK(gt.constants.at("C2") == Approx(24.0).epsilon(1e-14));
  CHECK(gt.valid);
  check_sum(gt);
  CHECK_THROWS_AS(bound_manifold_heat_p_gt2(gen, params(4.0, 1.0, 1), ManifoldConstants{}, t), Error);
  CHECK_THROWS_AS(bound_manifold_heat_p_le2(gen, params(3.0, 1.0, 1), flat, t), Error);
  CHECK(wp_vs_vol_enclosure(nu, 4.0, 1000).lower() <= gt.value);
}

TEST_CASE("identical measures give zero Fourier terms") {
  std::mt19937_64 g(6);
  const auto a = random_torus(g, 2, 5);
  const auto tab = torus_diff_table(a, a, 8.0, TailRule::heat(0.01));
  for (double p : {1.0, 2.0, 3.0}) {
    CHECK(bound_torus_jackson(tab, params(p, 0.5, 2), 4).fourier_term == 0.0);
    CHECK(bound_torus_heat(tab, params(p, 0.5, 2), 0.01).fourier_term == 0.0);
  }
  CHECK(bound_torus_winf(tab, params(INFINITY, 0.5, 2, 0.1, 0.01), 0.1).fourier_term == 0.0);
  const auto s = DiscreteMeasure::sphere(2, oracle::random_sphere_points(g, 4));
  const auto seq = sphere_energy_seq(s, s, 6, TailRule::heat(0.01));
  CHECK(bound_sphere_heat(seq, params(3.0, 0.5, 2), 0.01).fourier_term == 0.0);
  CHECK(bound_sphere_projection(seq, params(3.0, 0.5, 2), 6).fourier_term == 0.0);
}

TEST_CASE("design bound") {
  CHECK(design_bound(2, 1.0, 3) == Approx(98.90).epsilon(1e-4));
  CHECK(design_bound(2, 30.0, 3) == Approx(280.0).epsilon(1e-15));
  for (int d = 2; d <= 8; ++d) {
    for (double p : {1.0, 7.5, 40.0}) {
      const hp C = hp(14) * d * std::max<hp>(hp(d) * boost::multiprecision::log(hp(100) * d), hp(p));
      CHECK(design_bound(d, p, 5) == Approx((C / 5).convert_to<double>()).epsilon(1e-14));
      CHECK(design_bound(d, p, 10) == Approx(design_bound(d, p, 5) / 2.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("optimizer") {
  const auto d0 = DiscreteMeasure::torus(1, {0.0});
  const auto same = torus_diff_table(d0, d0, 1.0, TailRule::heat(1e-4));
  const auto r = optimize_bound([&](double t) { return bound_torus_heat(same, params(1.0, 1.0, 1), t); }, 1e-4, 1.0);
  CHECK(r.param == 1e-4);

  const auto vt = torus_diff_table(torus_vol(1), d0, 1.0, TailRule::heat(1e-4));
  // With c = 0 both terms scale like t^{-1/2} near 0 and the left end wins.
  const auto o0 = optimize_bound([&](double t) { return bound_torus_heat(vt, params(1.0, 0.0, 1), t); }, 1e-4, 1.0);
  CHECK(o0.param == 1e-4);
  CHECK(o0.report.value >= 0.25);
  const auto o = optimize_bound([&](double t) { return bound_torus_heat(vt, params(1.0, 1.0, 1), t); }, 1e-4, 1.0);
  CHECK(o.param > 1e-4);
  CHECK(o.param < 1.0);
  CHECK(o.report.value >= 0.25);
  // the refinement never does worse than the grid
  for (int i = 0; i < 64; ++i) {
    const double t = 1e-4 * std::pow(1e4, i / 63.0);
    CHECK(o.report.value <= bound_torus_heat(vt, params(1.0, 0.0, 1), t).value + 1e-15);
  }

  const auto jt = torus_diff_table(torus_vol(1), d0, 200.0, TailRule::jackson_window());
  const auto j = optimize_bound_int([&](int H) { return bound_torus_jackson(jt, params(1.0, 0.0, 1), H); }, 2, 200);
  double best = INFINITY;
  int arg = 0;
  for (int H = 2; H <= 200; ++H) {
    const double v = bound_torus_jackson(jt, params(1.0, 0.0, 1), H).value;
    if (v < best) {
      best = v;
      arg = H;
    }
  }
  CHECK(j.param == arg);
  CHECK(j.report.value == best);

  try {
    optimize_bound_int([&](int H) { return bound_torus_jackson(jt, params(1.0, 0.0, 1), H); }, 0, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_valid_point);
  }
  // invalid W-infinity points are skipped
  const auto wt = torus_diff_table(torus_vol(1), d0, 4.0, TailRule::winf(0.05));
  const auto w = optimize_bound([&](double T) { return bound_torus_winf(wt, params(INFINITY, 1.0, 1, 1.0, 0.01), T); },
                                1e-3, 1.0);
  CHECK(w.param >= 0.05);
}

TEST_CASE("Jackson and heat are both finite at t = 1/H^2") {
  std::mt19937_64 g(9);
  for (int i = 0; i < 10; ++i) {
    const auto nu = random_torus(g, 2, 5);
    const int H = 3 + i;
    const double t = 1.0 / (H * H);
    const auto jt = torus_diff_table(torus_vol(2), nu, H * std::sqrt(2.0), TailRule::jackson_window());
    const auto ht = torus_diff_table(torus_vol(2), nu, 2.0, TailRule::heat(t));
    CHECK(std::isfinite(bound_torus_jackson(jt, params(2.0, 1.0, 2), H).value));
    CHECK(std::isfinite(bound_torus_heat(ht, params(2.0, 1.0, 2), t).value));
  }
}
