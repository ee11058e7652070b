#include "elastica/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace elastica::elliptic {

namespace {

struct AgmScale {
  // a_n, c_n ladders of the arithmetic geometric mean of (1, sqrt(1-m)).
  double a[64];
  double c[64];
  int steps;
};

AgmScale agm_ladder(double m) {
  if (m < 0.0 || m >= 1.0)
    throw std::invalid_argument("elliptic: parameter must be in [0, 1)");
  AgmScale s;
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  int n = 0;
  s.a[0] = a;
  s.c[0] = c;
  while (std::abs(c) > 1e-17 * a && n < 62) {
    double an = 0.5 * (a + b);
    double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    c = cn;
    ++n;
    s.a[n] = a;
    s.c[n] = c;
  }
  s.steps = n;
  return s;
}

}  // namespace

double K(double m) {
  AgmScale s = agm_ladder(m);
  return std::numbers::pi / (2.0 * s.a[s.steps]);
}

double E(double m) {
  AgmScale s = agm_ladder(m);
  double sum = 0.0;
  double p = 0.5;
  for (int n = 0; n <= s.steps; ++n) {
    sum += p * s.c[n] * s.c[n];
    p *= 2.0;
  }
  return K(m) * (1.0 - sum);
}

Jacobi jacobi(double u, double m) {
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  AgmScale s = agm_ladder(m);
  int n = s.steps;
  double phi = std::ldexp(s.a[n] * u, n);
  double phi_prev = phi;
  for (int k = n; k >= 1; --k) {
    double t = s.c[k] / s.a[k] * std::sin(phi);
    phi_prev = phi;
    phi = 0.5 * (phi + std::asin(t));
  }
  // After the loop phi = phi_0 and phi_prev = phi_1.
  double sn = std::sin(phi);
  double cn = std::cos(phi);
  double dn = cn / std::cos(phi_prev - phi);
  return {sn, cn, dn};
}

}  // namespace elastica::elliptic
