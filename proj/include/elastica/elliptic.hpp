#pragma once

namespace elastica::elliptic {

// Complete elliptic integrals in the parameter convention: K(m) with
// m = k^2, so K(0) = pi/2 and K -> inf as m -> 1.
double K(double m);
double E(double m);

struct Jacobi {
  double sn;
  double cn;
  double dn;
};

// Jacobi elliptic functions of argument u and parameter m, by the arithmetic
// geometric mean descent.
Jacobi jacobi(double u, double m);

}  // namespace elastica::elliptic
