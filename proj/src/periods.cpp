#include "elastica/periods.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <vector>

#include "elastica/quadrature.hpp"
#include "json.hpp"

namespace elastica {
namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2 * std::numbers::pi;

cplx horner(const std::vector<cplx>& coeff, cplx x) {
  cplx v = 0.0;
  for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k)
    v = v * x + coeff[k];
  return v;
}

// Elliptical contour around the branch-point subset S, kept clear of the
// complement and anchored at its lowest point, where a globally consistent
// branch of y is available.
struct Contour {
  cplx center, axis;    // unit axis direction
  double semi_a, semi_b;
  double phase0;        // parameter of the lowest point

  cplx point(double t) const {
    return center + semi_a * std::cos(t + phase0) * axis +
           semi_b * std::sin(t + phase0) * (cplx(0, 1) * axis);
  }
  cplx tangent(double t) const {
    return -semi_a * std::sin(t + phase0) * axis +
           semi_b * std::cos(t + phase0) * (cplx(0, 1) * axis);
  }
};

Contour build_contour(const HECurve& curve, const std::vector<int>& inside) {
  const auto& c = curve.branch_points;
  const int m = static_cast<int>(c.size());
  std::vector<bool> is_in(m, false);
  for (int i : inside) is_in[i] = true;

  // farthest pair inside S fixes the axis
  int pi = inside[0], qi = inside[0];
  double best = -1.0;
  for (size_t a = 0; a < inside.size(); ++a)
    for (size_t b = a; b < inside.size(); ++b) {
      double d = std::abs(c[inside[a]] - c[inside[b]]);
      if (d > best) best = d, pi = inside[a], qi = inside[b];
    }
  Contour k;
  k.center = 0.5 * (c[pi] + c[qi]);
  k.axis = (best > 0) ? (c[qi] - c[pi]) / best : cplx(1, 0);

  double along_max = 0.0, perp_max = 0.0;
  for (int i : inside) {
    cplx v = (c[i] - k.center) * std::conj(k.axis);
    along_max = std::max(along_max, std::abs(v.real()));
    perp_max = std::max(perp_max, std::abs(v.imag()));
  }
  double dmin = std::numeric_limits<double>::infinity();
  for (int i : inside)
    for (int j = 0; j < m; ++j)
      if (!is_in[j]) dmin = std::min(dmin, std::abs(c[i] - c[j]));
  if (!std::isfinite(dmin)) dmin = curve.scale();  // g = 1 alpha-complement
  k.semi_a = along_max + 0.45 * dmin;
  k.semi_b = perp_max + 0.45 * dmin;

  // lowest point of the ellipse; anchor the sweep there
  // Im point(t) = Im center + gx cos(t + phase0) + gy sin(t + phase0)
  double gx = k.semi_a * k.axis.imag(), gy = k.semi_b * k.axis.real();
  k.phase0 = std::atan2(-gy, -gx);

  double im_min = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) im_min = std::min(im_min, c[j].imag());
  if (k.point(0.0).imag() >= im_min - 1e-12 * curve.scale())
    throw DegenerateCurve(
        "periods: contour anchor cannot reach below the branch points");

  // separation audit against a sampled contour
  const int ns = 512;
  for (int j = 0; j < m; ++j) {
    double d = std::numeric_limits<double>::infinity();
    for (int t = 0; t < ns; ++t)
      d = std::min(d, std::abs(k.point(kTwoPi * t / ns) - c[j]));
    if (d < 0.2 * std::min(dmin, curve.min_gap()))
      throw DegenerateCurve("periods: contour passes too close to a branch point");
    // inclusion/exclusion sanity by winding of the normalized coordinate
    cplx v = (c[j] - k.center) * std::conj(k.axis);
    double rho = std::hypot(v.real() / k.semi_a, v.imag() / k.semi_b);
    if (is_in[j] != (rho < 1.0))
      throw DegenerateCurve("periods: contour fails to separate branch points");
  }
  return k;
}

// One full-period trapezoid sweep of all 2g forms along the contour with
// continuity-tracked y; n doubles until every integral is stable.
std::vector<cplx> sweep_cycle(const HECurve& curve, const Contour& k,
                              const std::vector<std::vector<cplx>>& nums,
                              double tol) {
  const size_t nf = nums.size();
  std::vector<cplx> prev(nf, 0.0);
  bool have_prev = false;
  for (int n = 1 << 10; n <= (1 << 18); n *= 2) {
    std::vector<cplx> acc(nf, 0.0);
    cplx y0 = 0.0, y_prev = 0.0;
    bool ok = true;
    for (int j = 0; j <= n; ++j) {
      double t = kTwoPi * j / n;
      cplx x = k.point(t);
      cplx y;
      if (j == 0) {
        // global branch below the branch points: principal logs never jump
        cplx half_log = 0.0;
        for (const auto& c : curve.branch_points) half_log += std::log(x - c);
        y = std::exp(0.5 * half_log);
        y0 = y;
      } else {
        y = std::sqrt(curve.h(x));
        if (std::abs(y - y_prev) > std::abs(y + y_prev)) y = -y;
        if (std::abs(y - y_prev) > 0.8 * std::abs(y)) {
          ok = false;  // phase step too coarse for reliable tracking
          break;
        }
      }
      if (j == n) {
        if (std::abs(y - y0) > 1e-8 * std::abs(y0)) ok = false;
        break;  // closure sample only, not summed
      }
      y_prev = y;
      cplx w = k.tangent(t) / (2.0 * y);
      for (size_t f = 0; f < nf; ++f) acc[f] += horner(nums[f], x) * w;
    }
    if (ok) {
      for (auto& v : acc) v *= kTwoPi / n;
      if (have_prev) {
        bool done = true;
        for (size_t f = 0; f < nf; ++f)
          if (std::abs(acc[f] - prev[f]) > tol * std::max(1.0, std::abs(acc[f])))
            done = false;
        if (done) return acc;
      }
      prev = acc;
      have_prev = true;
    }
  }
  throw QuadratureFailure("periods: contour sweep did not converge");
}

}  // namespace

PeriodData periods(const HECurve& curve, double tol) {
  const int g = curve.genus;
  DifferentialBasis basis = differentials(curve);
  std::vector<std::vector<cplx>> nums;
  nums.insert(nums.end(), basis.omega_num.begin(), basis.omega_num.end());
  nums.insert(nums.end(), basis.eta_num.begin(), basis.eta_num.end());

  // cycle index 0..g-1: alpha_j;g..2g-1: beta_j
  std::vector<std::vector<int>> sets(2 * g);
  for (int j = 1; j <= g; ++j) {
    sets[j - 1] = {2 * j - 2, 2 * j - 1};
    for (int i = 2 * j - 1; i <= 2 * g; ++i) sets[g + j - 1].push_back(i);
  }

  std::vector<std::future<std::vector<cplx>>> jobs;
  for (int cyc = 0; cyc < 2 * g; ++cyc)
    jobs.push_back(std::async(std::launch::async, [&, cyc] {
      Contour k = build_contour(curve, sets[cyc]);
      return sweep_cycle(curve, k, nums, tol);
    }));

  PeriodData p;
  p.omega1.resize(g, g);
  p.omega2.resize(g, g);
  p.eta1.resize(g, g);
  p.eta2.resize(g, g);
  for (int cyc = 0; cyc < 2 * g; ++cyc) {
    std::vector<cplx> vals = jobs[cyc].get();
    for (int i = 0; i < g; ++i) {
      if (cyc < g) {
        p.omega1(i, cyc) = vals[i];
        p.eta1(i, cyc) = vals[g + i];
      } else {
        p.omega2(i, cyc - g) = vals[i];
        p.eta2(i, cyc - g) = vals[g + i];
      }
    }
  }

  p.T = p.omega1.partialPivLu().solve(p.omega2);
  // Orientation of the beta sweeps is fixed by demanding Im T > 0.
  Eigen::MatrixXd imT = 0.5 * (p.T.imag() + p.T.imag().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(imT);
  if (es.eigenvalues()(0) <= 0) {
    p.omega2 = -p.omega2;
    p.eta2 = -p.eta2;
    p.T = -p.T;
    es.compute(-imT);
    if (es.eigenvalues()(0) <= 0)
      throw DegenerateCurve("periods: Im T is not definite");
  }
  p.t_symmetry_defect = (p.T - p.T.transpose()).cwiseAbs().maxCoeff();

  Eigen::MatrixXcd M(2 * g, 2 * g), J = Eigen::MatrixXcd::Zero(2 * g, 2 * g);
  M << p.omega1, p.omega2, p.eta1, p.eta2;
  for (int i = 0; i < g; ++i) {
    J(i, g + i) = 1.0;
    J(g + i, i) = -1.0;
  }
  Eigen::MatrixXcd P = M * J * M.transpose();
  cplx kappa = 0.0;
  for (int i = 0; i < g; ++i) kappa += P(i, g + i);
  kappa /= g;
  p.legendre_constant = kappa;
  p.legendre_defect = (P - kappa * J).cwiseAbs().maxCoeff() / std::abs(kappa);
  return p;
}

std::string periods_to_json(const PeriodData& p) {
  auto dump = [](const Eigen::MatrixXcd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json j;
  j["omega1"] = dump(p.omega1);
  j["omega2"] = dump(p.omega2);
  j["eta1"] = dump(p.eta1);
  j["eta2"] = dump(p.eta2);
  j["T"] = dump(p.T);
  j["t_symmetry_defect"] = p.t_symmetry_defect;
  j["legendre_constant"] = {p.legendre_constant.real(),
                            p.legendre_constant.imag()};
  j["legendre_defect"] = p.legendre_defect;
  return j.dump(2);
}

}  // namespace elastica
