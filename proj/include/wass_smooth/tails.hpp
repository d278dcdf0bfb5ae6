#pragma once

// Series weights of the W-infinity bounds and certified majorants for the
// parts of each infinite Fourier series that lie outside a finite window.
//
// Every majorant uses only |mu^(k) - nu^(k)| <= 2 on the torus and
// E_ell <= 4 d_ell on the sphere, so it holds for any pair of probability
// measures.

namespace wass_smooth {

/// A_k of the torus W-infinity series at |k| = knorm.
double torus_winf_weight(int d, double T, double knorm);

/// A_ell of the sphere W-infinity series.
double sphere_winf_weight(int d, double T, int ell);

/// Upper bound on sum_{|k|>R} e^{-4 pi^2 |k|^2 q0 t} 2^{q0} / (2 pi |k|)^{q0}.
double torus_heat_tail(int d, double R, double t, double q0);

/// Upper bound on sum_{|k|>R} A_k * 2 / (2 pi |k|).
double torus_winf_tail(int d, double R, double T);

/// Upper bound on sum_{ell>L} d_ell e^{-lambda_ell q0 t} (4 / lambda_ell)^{q0/2}.
double sphere_heat_tail(int d, int L, double t, double q0);

/// Upper bound on sum_{ell>L} A_ell (4 d_ell^2 / lambda_ell)^{1/2}.
double sphere_winf_tail(int d, int L, double T);

/// Shell-grouped torus tail used by the manifold bound for p > 2 when the
/// spectrum comes from a torus window of radius R: bounds
/// sum_{ell >= first_shell} (ell+1)^gamma (S_ell)^{q/2}, where S_ell collects
/// e^{-2 Lambda t} 4 / (Lambda + a) over Lambda = 4 pi^2 |k|^2 with
/// sqrt(Lambda) in [ell, ell+1).
double torus_shell_tail(int d, int first_shell, double t, double q, double gamma, double a);

/// Number of lattice points of Z^d with sup-norm exactly n.
double box_shell_count(int d, long n);

}  // namespace wass_smooth
