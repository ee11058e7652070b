#include "elastica/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace elastica {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Smallest box radius whose Gaussian tail certifies tail < tol:
// |term| <= (2 pi |m|)^p exp(-pi lam |m|^2 + 2 pi mu |m|) with lam =
// min eig Im T, mu = |Im z|, p the highest requested derivative order, and
// shell r holds at most (2r+3)^g - (2r+1)^g points.
int certified_radius(const Eigen::MatrixXcd& T, double mu, int g, double tol,
                     int p) {
  Eigen::MatrixXd imT = 0.5 * (T.imag() + T.imag().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(imT);
  double lam = es.eigenvalues()(0);
  if (lam <= 0)
    throw RadiusTooSmall("theta: Im T is not positive definite");
  auto shell_bound = [&](int r) {
    double count = std::pow(2.0 * r + 3.0, g) - std::pow(2.0 * r + 1.0, g);
    double rr = static_cast<double>(r);
    double poly = std::pow(kTwoPi * std::sqrt(double(g)) * (rr + 1), p);
    return count * poly *
           std::exp(-std::numbers::pi * lam * rr * rr +
                    kTwoPi * mu * std::sqrt(double(g)) * (rr + 1));
  };
  for (int r = 1; r <= 64; ++r) {
    double b = shell_bound(r);
    // past the Gaussian turnover the shell bounds at least halve; the tail
    // is then below twice the current shell bound
    if (2 * b < tol && shell_bound(r + 1) < 0.5 * b) return r;
  }
  throw RadiusTooSmall("theta: no radius up to 64 certifies the tail bound");
}

}  // namespace

ThetaChar zero_char(int g) {
  ThetaChar c;
  c.a = Eigen::VectorXd::Zero(g);
  c.b = Eigen::VectorXd::Zero(g);
  return c;
}

std::vector<std::complex<double>> theta_derivatives(
    const Eigen::VectorXcd& z, const Eigen::MatrixXcd& T, const ThetaChar& chr,
    const std::vector<std::vector<int>>& derivs, int radius, double tail_tol) {
  const int g = static_cast<int>(z.size());
  const double mu = z.imag().norm();
  int max_order = 0;
  for (const auto& d : derivs)
    max_order = std::max(max_order, static_cast<int>(d.size()));
  const int need = certified_radius(T, mu, g, tail_tol, max_order);
  if (radius == 0) radius = need;
  if (radius < need)
    throw RadiusTooSmall("theta: requested radius " + std::to_string(radius) +
                         " below certified " + std::to_string(need));

  const std::complex<double> two_pi_i(0.0, kTwoPi);
  std::vector<std::complex<double>> out(derivs.size(), 0.0);
  Eigen::VectorXd m(g);
  Eigen::VectorXi n(g);
  Eigen::VectorXi lo(g), hi(g);
  for (int i = 0; i < g; ++i) {
    lo(i) = static_cast<int>(std::ceil(-radius - chr.a(i)));
    hi(i) = static_cast<int>(std::floor(radius - chr.a(i)));
    n(i) = lo(i);
  }
  Eigen::VectorXcd zb = z + chr.b.cast<std::complex<double>>();
  while (true) {
    for (int i = 0; i < g; ++i) m(i) = n(i) + chr.a(i);
    Eigen::VectorXcd Tm = T * m.cast<std::complex<double>>();
    std::complex<double> quad = 0.0, lin = 0.0;
    for (int i = 0; i < g; ++i) {
      quad += m(i) * Tm(i);
      lin += m(i) * zb(i);
    }
    std::complex<double> term = std::exp(two_pi_i * (0.5 * quad + lin));
    for (size_t d = 0; d < derivs.size(); ++d) {
      std::complex<double> t = term;
      for (int idx : derivs[d]) t *= two_pi_i * m(idx);
      out[d] += t;
    }
    // advance the box counter, innermost index fastest
    int i = g - 1;
    while (i >= 0 && n(i) == hi(i)) {
      n(i) = lo(i);
      --i;
    }
    if (i < 0) break;
    ++n(i);
  }
  return out;
}

std::complex<double> theta(const Eigen::VectorXcd& z,
                           const Eigen::MatrixXcd& T, const ThetaChar& chr,
                           int radius, double tail_tol) {
  return theta_derivatives(z, T, chr, {{}}, radius, tail_tol)[0];
}

}  // namespace elastica
