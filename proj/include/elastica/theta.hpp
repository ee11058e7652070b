#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace elastica {

struct RadiusTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Half-characteristics [a; b]; the built-in Riemann-constant characteristic
// has entries in {0, +-1/2} after mod-1 reduction.
struct ThetaChar {
  Eigen::VectorXd a, b;
};
ThetaChar zero_char(int g);

// theta[a; b](z; T) = sum_{n in Z^g} exp(2 pi i (1/2 (n+a)^t T (n+a)
//                                            + (n+a)^t (z+b))).
// The lattice sum is truncated to the box |n_i + a_i| <= radius; radius = 0
// picks the smallest radius whose Gaussian tail bound (from the smallest
// eigenvalue of Im T) certifies an absolute tail below tail_tol.  A caller
// radius too small for that bound throws RadiusTooSmall.
std::complex<double> theta(const Eigen::VectorXcd& z,
                           const Eigen::MatrixXcd& T, const ThetaChar& chr,
                           int radius = 0, double tail_tol = 1e-12);

// Partial derivative tensor of theta in z: one entry per index combination
// in `derivs` (each a list of coordinate indices, order <= 4); every
// derivative inserts a factor 2 pi i (n+a)_k into the lattice sum.
std::vector<std::complex<double>> theta_derivatives(
    const Eigen::VectorXcd& z, const Eigen::MatrixXcd& T, const ThetaChar& chr,
    const std::vector<std::vector<int>>& derivs, int radius = 0,
    double tail_tol = 1e-12);

}  // namespace elastica
