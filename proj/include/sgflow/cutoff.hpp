#pragma once

// Smooth dyadic cutoff.
//
//   chi(s) = 1                      s <= 1
//          = 1 - q(s - 1)           1 < s < 2,   q(t) = 6t^5 - 15t^4 + 10t^3
//          = 0                      s >= 2
//   rho(g) = chi(g) - chi(2 g)      supported in [1/2, 2]
//
// The dyadic sum over n <= m of rho(2^-n g) telescopes to chi(2^-m g), which is
// how the symbol s_m is evaluated.

namespace sgflow {

/// Quintic smoothstep on [0, 1], clamped outside.
double smoothstep5(double t);

double cutoff_chi(double s);
double cutoff_rho(double gamma);

/// s_m(gamma) = chi(gamma / 2^m). Throws std::invalid_argument for gamma <= 0.
double symbol_sm(double gamma, int m);

/// Sharp symbol of P_m: 1 for gamma < 2^(m+1), else 0.
double symbol_pm(double gamma, int m);

}  // namespace sgflow
