#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace elastica {

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using cfun = std::function<std::complex<double>(double)>;

// Adaptive Gauss quadrature of f over [a, b].  Each panel is evaluated with
// nested 7- and 15-point Gauss rules; |G15 - G7| drives bisection until the
// panel error is below tol scaled by panel fraction.  Throws
// QuadratureFailure when the recursion depth limit is hit before the target.
std::complex<double> integrate(const cfun& f, double a, double b,
                               double tol = 1e-12, int max_depth = 40);

// Integral of a 2*pi-periodic function over one period by the trapezoid
// rule with doubling (exponentially convergent for analytic integrands).
// Stops when two successive refinements agree to tol; throws
// QuadratureFailure if max_n is reached first.
std::complex<double> periodic_trapezoid(const cfun& f, double tol = 1e-12,
                                        int min_n = 64, int max_n = 1 << 15);

}  // namespace elastica
