#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "elastica/hecurve.hpp"

namespace elastica {

// Full-cycle period matrices of the canonical differential bases; rows index
// forms, columns index cycles.  alpha_j is a loop around the branch-point
// pair (c_{2j-1}, c_{2j}); beta_j a loop around the suffix set
// {c_{2j}, ..., c_{2g+1}} (even count, so each loop closes on the double
// cover).  Branch points are used in the order given by the curve.
struct PeriodData {
  Eigen::MatrixXcd omega1, omega2;  // first kind over alpha / beta
  Eigen::MatrixXcd eta1, eta2;      // second kind over alpha / beta
  Eigen::MatrixXcd T;               // omega1^{-1} omega2, Im T > 0
  double t_symmetry_defect = 0.0;   // max |T - T^t|
  // Symplectic pairing of the stacked matrix M = [[omega1, omega2],
  // [eta1, eta2]]: M J M^t = legendre_constant * J with J the standard
  // symplectic form; the constant is +-2*pi*i for full cycles.
  std::complex<double> legendre_constant{0.0, 0.0};
  double legendre_defect = 0.0;  // max |M J M^t - c J| / |c|
};

// Computes all four period matrices by trapezoid sweeps along elliptical
// contours with the sheet of y = sqrt(h(x)) tracked continuously; every
// contour starts below all branch points, where a common global branch is
// defined, so the cycles share one sheet convention.  Throws DegenerateCurve
// when separating contours cannot be built and QuadratureFailure when sweeps
// do not converge.
PeriodData periods(const HECurve& curve, double tol = 1e-12);

// JSON export of the four matrices plus T (entries as [re, im]).
std::string periods_to_json(const PeriodData& p);

}  // namespace elastica
