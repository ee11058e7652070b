#include "elastica/finite_gap.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace elastica {
namespace {

using cd = std::complex<double>;

// -2 d^3/ds^3 wp_{gg} by central differences of wp_{gggg} along e_g,
// Richardson-extrapolated from steps ds and ds/2
cd u_sss_fd(const BakerSigma& sig, const Eigen::VectorXcd& t, double ds) {
  const int g = sig.genus();
  auto once = [&](double h) {
    Eigen::VectorXcd tp = t, tm = t;
    tp(g - 1) += h;
    tm(g - 1) -= h;
    return -2.0 *
           (sig.wp4(g - 1, g - 1, g - 1, g - 1, tp) -
            sig.wp4(g - 1, g - 1, g - 1, g - 1, tm)) /
           (2 * h);
  };
  return (4.0 * once(0.5 * ds) - once(ds)) / 3.0;
}

}  // namespace

std::complex<double> finite_gap_u_point(const BakerSigma& sig,
                                        const Eigen::VectorXcd& t) {
  const int g = sig.genus();
  cd lam = sig.curve().lambda[static_cast<size_t>(2 * g)];
  return -2.0 * (sig.wp_analytic(g - 1, g - 1, t) - lam / 3.0);
}

std::vector<std::complex<double>> finite_gap_u(
    const BakerSigma& sig, const Eigen::VectorXcd& t_fixed,
    const std::vector<double>& s_grid) {
  const int g = sig.genus();
  std::vector<cd> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    Eigen::VectorXcd t = t_fixed;
    t(g - 1) += s;
    out.push_back(finite_gap_u_point(sig, t));
  }
  return out;
}

Eigen::VectorXcd g1_real_basepoint(const PeriodData& p) {
  if (p.omega1.rows() != 1)
    throw std::invalid_argument("g1_real_basepoint: genus 1 only");
  return 0.5 * p.omega2.col(0);
}

std::complex<double> first_kdv_residual(const BakerSigma& sig,
                                        const Eigen::VectorXcd& t, double ds,
                                        bool drift) {
  const int g = sig.genus();
  if (g < 2)
    throw std::invalid_argument("first_kdv_residual: genus 2 or higher");
  cd lam = sig.curve().lambda[static_cast<size_t>(2 * g)];
  cd u = finite_gap_u_point(sig, t);
  cd u_s = -2.0 * sig.wp3(g - 1, g - 1, g - 1, t);
  cd u_t = -2.0 * sig.wp3(g - 1, g - 1, g - 2, t);
  cd u_sss = u_sss_fd(sig, t, ds);
  cd rhs = u_sss + 6.0 * u * u_s;
  if (drift) rhs -= 8.0 * lam * u_s;
  return 4.0 * u_t - rhs;
}

SecondFlowReport second_flow_report(const BakerSigma& sig,
                                    const Eigen::VectorXcd& t) {
  if (sig.genus() != 3)
    throw std::invalid_argument("second_flow_report: genus 3 only");
  cd lam = sig.curve().lambda[6];
  // u_sss and u_5 reduce to wp data through the quartic wp relations:
  // differentiating wp_3333 = 6 wp_33^2 + 2 lam5 + 4 lam6 wp_33 + 4 wp_32
  // along t_3 gives A1 = wp_33333; two more derivatives (with wp_3233 from
  // the neighbor relation wp_3332 = 6 wp_33 wp_32 + 4 lam6 wp_32 +
  // 6 wp_31 - 2 wp_22) give A3 = wp_3333333.  No finite differences.
  auto fields = [&](const Eigen::VectorXcd& tt) {
    cd p33 = sig.wp_analytic(2, 2, tt);
    cd p32 = sig.wp_analytic(2, 1, tt);
    cd p31 = sig.wp_analytic(2, 0, tt);
    cd p22 = sig.wp_analytic(1, 1, tt);
    cd p333 = sig.wp3(2, 2, 2, tt);
    cd p323 = sig.wp3(2, 1, 2, tt);
    cd p313 = sig.wp3(2, 0, 2, tt);
    cd p223 = sig.wp3(1, 1, 2, tt);
    cd p3333 = sig.wp4(2, 2, 2, 2, tt);
    cd A1 = 12.0 * p33 * p333 + 4.0 * lam * p333 + 4.0 * p323;
    cd A3 = 36.0 * p333 * p3333 + (12.0 * p33 + 4.0 * lam) * A1 +
            24.0 * p333 * p32 + 24.0 * p33 * p323 + 16.0 * lam * p323 +
            24.0 * p313 - 8.0 * p223;
    cd u = -2.0 * (p33 - lam / 3.0);
    cd u1 = -2.0 * p333;
    cd u2 = -2.0 * p3333;
    cd u3 = -2.0 * A1;
    cd u5 = -2.0 * A3;
    cd x1 = u1;
    cd x2 = u3 + 6.0 * u * u1;
    cd x3 = u5 + 10.0 * u * u3 + 20.0 * u1 * u2 + 30.0 * u * u * u1;
    cd ut = -2.0 * sig.wp3(2, 2, 0, tt);
    return std::array<cd, 4>{x1, x2, x3, ut};
  };

  Eigen::MatrixXcd A(4, 3);
  Eigen::VectorXcd b(4);
  for (int r = 0; r < 4; ++r) {
    Eigen::VectorXcd tt = t;
    tt(2) += 0.11 * r;
    auto f = fields(tt);
    A(r, 0) = f[2];
    A(r, 1) = f[1];
    A(r, 2) = f[0];
    b(r) = f[3];
  }
  Eigen::Vector3cd c = A.colPivHouseholderQr().solve(b);

  SecondFlowReport rep;
  rep.c3 = c(0);
  rep.c2 = c(1);
  rep.c1 = c(2);
  Eigen::VectorXcd tt = t;
  tt(2) += 0.44;
  auto f = fields(tt);
  cd pred = c(0) * f[2] + c(1) * f[1] + c(2) * f[0];
  rep.fit_residual = std::abs(pred - f[3]) / std::max(std::abs(f[3]), 1e-30);
  auto f0 = fields(t);
  rep.naive_residual = std::abs(16.0 * f0[3] - f0[2]) /
                       std::max(std::abs(f0[2]), 1e-30);
  return rep;
}

}  // namespace elastica
