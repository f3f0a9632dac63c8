#include "sgflow/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace sgflow {

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double cutoff_chi(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  return 1.0 - smoothstep5(s - 1.0);
}

double cutoff_rho(double gamma) { return cutoff_chi(gamma) - cutoff_chi(2.0 * gamma); }

double symbol_sm(double gamma, int m) {
  if (!(gamma > 0.0)) throw std::invalid_argument("symbol argument must be positive");
  return cutoff_chi(std::ldexp(gamma, -m));
}

double symbol_pm(double gamma, int m) { return gamma < std::ldexp(1.0, m + 1) ? 1.0 : 0.0; }

}  // namespace sgflow
