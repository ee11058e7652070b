#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "elastica/hecurve.hpp"
#include "elastica/periods.hpp"
#include "elastica/theta.hpp"

namespace elastica {

struct NearDivisor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Baker sigma function of a hyperelliptic curve,
//   sigma(t) = exp(-1/2 t^t kappa t) theta[d''; d'](omega1^{-1} t; T),
// kappa = eta1 omega1^{-1}, with the Riemann-constant half-characteristics
// d' = (g/2, (g-1)/2, ..., 1/2), d'' = (1/2, ..., 1/2) reduced mod 1.
// wp_{ij} = -d^2 log sigma / dt_i dt_j generalizes the Weierstrass wp;
// indices below are 0-based (i = g-1 is the arc-length direction).
class BakerSigma {
 public:
  BakerSigma(const HECurve& curve, const PeriodData& periods);

  int genus() const { return g_; }
  const HECurve& curve() const { return curve_; }
  const PeriodData& period_data() const { return periods_; }
  const Eigen::MatrixXcd& kappa() const { return kappa_; }
  double kappa_symmetry_defect() const { return kappa_defect_; }
  const ThetaChar& characteristic() const { return chr_; }

  std::complex<double> sigma(const Eigen::VectorXcd& t) const;

  // partial derivative of sigma for a multi-index (repeats allowed, order
  // <= 4), by Leibniz over the Gaussian prefactor and the theta contraction
  std::complex<double> sigma_partial(const Eigen::VectorXcd& t,
                                     const std::vector<int>& idx) const;

  // wp_{ij} by the pinned numerical route: central differences of sigma
  // with steps h and h/2, Richardson-extrapolated; throws NearDivisor when
  // |sigma(t)| is negligible against the stencil.
  std::complex<double> wp(int i, int j, const Eigen::VectorXcd& t) const;

  // analytic routes via sigma partials and log-derivative cumulants
  std::complex<double> wp_analytic(int i, int j,
                                   const Eigen::VectorXcd& t) const;
  std::complex<double> wp3(int i, int j, int k,
                           const Eigen::VectorXcd& t) const;
  std::complex<double> wp4(int i, int j, int k, int l,
                           const Eigen::VectorXcd& t) const;

  // Divisor polynomial F(x) = x^g - sum_i wp_{g,i} x^{i-1}; returns its g
  // roots (the x-coordinates of the Abel preimage), sorted by real part.
  Eigen::VectorXcd divisor_roots(const Eigen::VectorXcd& t) const;

 private:
  int g_;
  HECurve curve_;
  PeriodData periods_;
  Eigen::MatrixXcd omega1_inv_, kappa_;
  double kappa_defect_ = 0.0;
  ThetaChar chr_;
};

// Abel map: sum over the given points (x_i, y_i) of int_infty^{P_i} omega_j,
// integrated along branch-tracked paths that exit to the right of the
// branch points, matching the global sheet convention of periods().
Eigen::VectorXcd abel(const HECurve& curve,
                      const std::vector<std::array<std::complex<double>, 2>>&
                          points,
                      double tol = 1e-10);

// Distance from d to the period lattice spanned by the columns of
// [omega1 omega2] over Z^{2g} (max-norm of the residual after rounding).
double lattice_distance(const PeriodData& p, const Eigen::VectorXcd& d);

}  // namespace elastica
