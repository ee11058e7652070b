#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "elastica/sigma.hpp"

namespace elastica {

// Potential generated by the curve through its sigma function,
//   u(t) = -2 (wp_{gg}(t) - lambda_{2g} / 3),
// the last coordinate t_g playing the role of arc length.
std::complex<double> finite_gap_u_point(const BakerSigma& sig,
                                        const Eigen::VectorXcd& t);

// Samples u(t_fixed + s e_g) over the given s grid.
std::vector<std::complex<double>> finite_gap_u(
    const BakerSigma& sig, const Eigen::VectorXcd& t_fixed,
    const std::vector<double>& s_grid);

// g = 1 basepoint omega''/2: the real s line through it avoids the sigma
// divisor, so u(s) is real, nonsingular, and periodic with period omega'.
Eigen::VectorXcd g1_real_basepoint(const PeriodData& p);

// Residual 4 u_{t_{g-1}} - (u_sss + 6 u u_s - 8 lambda_{2g} u_s) at t.
// u, u_s, u_ss, u_t come from analytic sigma partials; u_sss is a
// Richardson-extrapolated central difference of wp_{gggg} along e_g with
// step ds.  The -8 lambda_{2g} u_s drift follows from differentiating the
// top quadratic wp relation with the lambda_{2g}/3 normalization above; it
// vanishes when the branch points sum to zero.  `drift` = false drops the
// term (the bare KdV form, exact only on centered curves).
std::complex<double> first_kdv_residual(const BakerSigma& sig,
                                        const Eigen::VectorXcd& t, double ds,
                                        bool drift = true);

// Second-flow decomposition at genus 3: expands u_{t_1} over the hierarchy
// fields X1 = u_s, X2 = u_sss + 6uu_s, X3 = u_5 + 10uu_3 + 20u_1u_2 +
// 30u^2u_1 by least squares over four points shifted along e_3; u_sss and
// u_5 come from the quartic wp relations, so every entry is analytic.  The
// exact identity behind the fit is
//   X3 = 16 u_{t_1} + (176/3) lam6 u_{t_2} + (56 lam6^2 - 8 lam5) u_s,
// hence c3 = 1/16 and fit_residual sits at rounding level, while
// naive_residual = |16 u_{t_1} - X3| / |X3| (the bare 2^4 rescaling, order
// one unless lam5 = lam6 = 0) shows the lower-flow admixture is real.
struct SecondFlowReport {
  std::complex<double> c3, c2, c1;  // fitted coefficients on X3, X2, X1
  double fit_residual = 0.0;
  double naive_residual = 0.0;
};
SecondFlowReport second_flow_report(const BakerSigma& sig,
                                    const Eigen::VectorXcd& t);

}  // namespace elastica
