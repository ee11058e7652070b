#include "elastica/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "elastica/quadrature.hpp"

namespace elastica {
namespace {

using cd = std::complex<double>;

double reduce_half(double x) { return x - std::ceil(x - 0.5); }

// Global sheet anchor: exp(1/2 sum Log(x - c_j)) is one analytic branch of
// sqrt(h) on the region below, right of, and above all branch points (the
// principal-log cuts all run left), matching the periods() convention.
cd y_global(const HECurve& c, cd x) {
  cd acc = 0.0;
  for (cd root : c.branch_points) {
    cd d = x - root;
    // a point exactly on a cut line takes the limit from above
    if (d.imag() == 0.0) d = cd(d.real(), 0.0);
    acc += std::log(d);
  }
  return std::exp(0.5 * acc);
}

}  // namespace

BakerSigma::BakerSigma(const HECurve& curve, const PeriodData& periods)
    : g_(curve.genus), curve_(curve), periods_(periods) {
  const int g = g_;
  omega1_inv_ =
      periods_.omega1.partialPivLu().solve(Eigen::MatrixXcd::Identity(g, g));
  Eigen::MatrixXcd kap = periods_.eta1 * omega1_inv_;
  kappa_defect_ = (kap - kap.transpose()).cwiseAbs().maxCoeff() /
                  std::max(1.0, kap.cwiseAbs().maxCoeff());
  // only the symmetric part enters the quadratic form
  kappa_ = 0.5 * (kap + kap.transpose());
  chr_.a = Eigen::VectorXd::Constant(g, 0.5);
  chr_.b = Eigen::VectorXd(g);
  for (int j = 0; j < g; ++j) chr_.b(j) = reduce_half(0.5 * (g - j));
}

std::complex<double> BakerSigma::sigma(const Eigen::VectorXcd& t) const {
  cd q = (t.transpose() * (kappa_ * t)).value();
  return std::exp(-0.5 * q) * theta(omega1_inv_ * t, periods_.T, chr_);
}

std::complex<double> BakerSigma::sigma_partial(
    const Eigen::VectorXcd& t, const std::vector<int>& idx) const {
  const int g = g_;
  const int p = static_cast<int>(idx.size());
  if (p > 4) throw std::invalid_argument("sigma_partial: order above 4");
  for (int i : idx)
    if (i < 0 || i >= g) throw std::invalid_argument("sigma_partial: index");

  // Gaussian prefactor exp(Q), Q = -1/2 t^t kappa t: first and second
  // derivatives q_i = -(kappa t)_i, q_ij = -kappa_ij; P(S) = e^{-Q} d_S e^Q
  // by the recursion P(S + x) = q_x P(S) + sum_{y in S} q_xy P(S - y).
  Eigen::VectorXcd kt = kappa_ * t;
  std::function<cd(const std::vector<int>&)> pref =
      [&](const std::vector<int>& s) -> cd {
    if (s.empty()) return 1.0;
    std::vector<int> rest(s.begin(), s.end() - 1);
    int x = s.back();
    cd acc = -kt(x) * pref(rest);
    for (size_t y = 0; y < rest.size(); ++y) {
      std::vector<int> sub = rest;
      sub.erase(sub.begin() + y);
      acc += -kappa_(x, rest[y]) * pref(sub);
    }
    return acc;
  };

  // theta derivative tensors for every sorted multi-index of order <= p,
  // fetched in one lattice pass
  std::vector<std::vector<int>> keys;
  std::function<void(std::vector<int>&, int, int)> gen =
      [&](std::vector<int>& cur, int start, int left) {
        keys.push_back(cur);
        if (left == 0) return;
        for (int i = start; i < g; ++i) {
          cur.push_back(i);
          gen(cur, i, left - 1);
          cur.pop_back();
        }
      };
  std::vector<int> cur;
  gen(cur, 0, p);
  std::map<std::vector<int>, size_t> pos;
  for (size_t k = 0; k < keys.size(); ++k) pos[keys[k]] = k;
  Eigen::VectorXcd z = omega1_inv_ * t;
  std::vector<cd> th = theta_derivatives(z, periods_.T, chr_, keys);

  // d_J theta(M t) = sum over maps m of prod_r M(m_r, J_r) theta_{m}
  auto theta_contract = [&](const std::vector<int>& J) -> cd {
    int k = static_cast<int>(J.size());
    if (k == 0) return th[pos.at({})];
    cd acc = 0.0;
    std::vector<int> m(k, 0);
    while (true) {
      cd w = 1.0;
      for (int r = 0; r < k; ++r) w *= omega1_inv_(m[r], J[r]);
      std::vector<int> srt = m;
      std::sort(srt.begin(), srt.end());
      acc += w * th[pos.at(srt)];
      int r = k - 1;
      while (r >= 0 && m[r] == g - 1) m[r--] = 0;
      if (r < 0) break;
      ++m[r];
    }
    return acc;
  };

  // Leibniz over subsets of derivative positions
  cd sum = 0.0;
  for (int mask = 0; mask < (1 << p); ++mask) {
    std::vector<int> s, c;
    for (int b = 0; b < p; ++b) (mask >> b & 1 ? s : c).push_back(idx[b]);
    sum += pref(s) * theta_contract(c);
  }
  cd q = (t.transpose() * (kappa_ * t)).value();
  return std::exp(-0.5 * q) * sum;
}

std::complex<double> BakerSigma::wp(int i, int j,
                                    const Eigen::VectorXcd& t) const {
  const double h0 = 1e-3 * std::max(1.0, t.cwiseAbs().maxCoeff());
  const cd s0 = sigma(t);
  double stencil_max = std::abs(s0);
  auto shifted = [&](double hi, int ei, double hj, int ej) {
    Eigen::VectorXcd u = t;
    u(ei) += hi;
    u(ej) += hj;
    cd v = sigma(u);
    stencil_max = std::max(stencil_max, std::abs(v));
    return v;
  };
  auto value = [&](double h) -> cd {
    cd spi = shifted(h, i, 0, j), smi = shifted(-h, i, 0, j);
    cd si = (spi - smi) / (2 * h);
    cd sj, sij;
    if (i == j) {
      sj = si;
      sij = (spi - 2.0 * s0 + smi) / (h * h);
    } else {
      sj = (shifted(0, i, h, j) - shifted(0, i, -h, j)) / (2 * h);
      sij = (shifted(h, i, h, j) - shifted(h, i, -h, j) -
             shifted(-h, i, h, j) + shifted(-h, i, -h, j)) /
            (4 * h * h);
    }
    return (si * sj - sij * s0) / (s0 * s0);
  };
  cd vh = value(h0), vh2 = value(0.5 * h0);
  if (std::abs(s0) < 1e-8 * stencil_max)
    throw NearDivisor("wp: sigma vanishes against its stencil");
  return (4.0 * vh2 - vh) / 3.0;
}

std::complex<double> BakerSigma::wp_analytic(int i, int j,
                                             const Eigen::VectorXcd& t) const {
  cd s = sigma(t);
  cd si = sigma_partial(t, {i});
  cd sj = (j == i) ? si : sigma_partial(t, {j});
  cd sij = sigma_partial(t, {i, j});
  double m = std::max({std::abs(s), std::abs(si), std::abs(sj)});
  if (std::abs(s) < 1e-12 * m)
    throw NearDivisor("wp_analytic: sigma vanishes");
  cd ri = si / s, rj = sj / s, rij = sij / s;
  return -(rij - ri * rj);
}

std::complex<double> BakerSigma::wp3(int i, int j, int k,
                                     const Eigen::VectorXcd& t) const {
  cd s = sigma(t);
  if (std::abs(s) == 0.0) throw NearDivisor("wp3: sigma vanishes");
  auto r = [&](std::vector<int> v) { return sigma_partial(t, v) / s; };
  cd ri = r({i}), rj = r({j}), rk = r({k});
  cd rij = r({i, j}), rik = r({i, k}), rjk = r({j, k});
  cd rijk = r({i, j, k});
  // third log-derivative cumulant
  cd f = rijk - ri * rjk - rj * rik - rk * rij + 2.0 * ri * rj * rk;
  return -f;
}

std::complex<double> BakerSigma::wp4(int i, int j, int k, int l,
                                     const Eigen::VectorXcd& t) const {
  cd s = sigma(t);
  if (std::abs(s) == 0.0) throw NearDivisor("wp4: sigma vanishes");
  auto r = [&](std::vector<int> v) { return sigma_partial(t, v) / s; };
  cd ri = r({i}), rj = r({j}), rk = r({k}), rl = r({l});
  cd rij = r({i, j}), rik = r({i, k}), ril = r({i, l});
  cd rjk = r({j, k}), rjl = r({j, l}), rkl = r({k, l});
  cd rijk = r({i, j, k}), rijl = r({i, j, l}), rikl = r({i, k, l}),
     rjkl = r({j, k, l});
  cd rijkl = r({i, j, k, l});
  // fourth log-derivative cumulant
  cd f = rijkl - (ri * rjkl + rj * rikl + rk * rijl + rl * rijk) -
         (rij * rkl + rik * rjl + ril * rjk) +
         2.0 * (rij * rk * rl + rik * rj * rl + ril * rj * rk +
                rjk * ri * rl + rjl * ri * rk + rkl * ri * rj) -
         6.0 * ri * rj * rk * rl;
  return -f;
}

Eigen::VectorXcd BakerSigma::divisor_roots(const Eigen::VectorXcd& t) const {
  const int g = g_;
  // companion matrix of F(x) = x^g - sum_{k=0}^{g-1} wp_{g,k+1} x^k
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(g, g);
  for (int k = 0; k + 1 < g; ++k) C(k + 1, k) = 1.0;
  for (int k = 0; k < g; ++k) C(k, g - 1) = wp_analytic(g - 1, k, t);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("divisor_roots: eigensolver failed");
  Eigen::VectorXcd r = es.eigenvalues();
  std::vector<cd> v(r.data(), r.data() + g);
  std::sort(v.begin(), v.end(), [](cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (int k = 0; k < g; ++k) r(k) = v[k];
  return r;
}

namespace {

// y_global is single-valued off the principal-log cuts (a horizontal ray
// running left from each branch point) and flips sign across each one.  The
// correct branch at a path point is therefore (-1)^parity y_global with
// parity the number of cut crossings accumulated along the path from
// infinity; crossings are counted exactly from the path geometry, so no
// step-by-step continuity tracking is needed.

// Crossings of the straight segment p -> q with the cut of c.  An endpoint
// exactly on a cut line takes the principal-log boundary value (the limit
// from above), so touching the line from below counts as a crossing.
int cut_crossings(const std::vector<cd>& bp, cd p, cd q) {
  int cnt = 0;
  for (cd c : bp) {
    double hp = p.imag() - c.imag(), hq = q.imag() - c.imag();
    if (hp == 0.0 && hq == 0.0)
      throw QuadratureFailure("abel: path runs along a branch cut");
    bool crossed = false;
    if ((hp < 0 && hq > 0) || (hp > 0 && hq < 0)) {
      double s = hp / (hp - hq);
      double re = p.real() + s * (q.real() - p.real());
      crossed = re < c.real();
    } else if (hq == 0.0 && hp < 0) {
      crossed = q.real() < c.real();
    } else if (hp == 0.0 && hq < 0) {
      crossed = p.real() < c.real();
    }
    if (crossed) ++cnt;
  }
  return cnt;
}

// Crossings of the ray piece {u a : u in (u_lo, infinity)} with the cuts.
// Horizontal rays are only admitted when they stay right of every cut.
int ray_crossings(const std::vector<cd>& bp, cd a, double u_lo) {
  if (a.imag() == 0.0) return 0;
  int cnt = 0;
  for (cd c : bp) {
    double ustar = c.imag() / a.imag();
    if (ustar > u_lo && ustar * a.real() < c.real()) ++cnt;
  }
  return cnt;
}

double halfline_clearance(const std::vector<cd>& pts, cd a) {
  // distance of the nearest point to the half line {u a : u >= 1}
  double best = 1e300;
  for (cd p : pts) {
    double u = (p * std::conj(a)).real() / std::norm(a);
    cd foot = (u < 1.0) ? a : u * a;
    best = std::min(best, std::abs(p - foot));
  }
  return best;
}

double segment_clearance(const std::vector<cd>& pts, cd p, cd q) {
  double best = 1e300;
  for (cd c : pts) {
    double u = ((c - p) * std::conj(q - p)).real() / std::norm(q - p);
    u = std::clamp(u, 0.0, 1.0);
    best = std::min(best, std::abs(c - (p + u * (q - p))));
  }
  return best;
}

// A ray needs either a genuine tilt (so cut crossings are transversal) or
// to stay entirely right of every cut tip.
bool ray_admissible(const std::vector<cd>& bp, cd a, double scale) {
  if (std::abs(a.imag()) > 1e-9 * scale) return true;
  for (cd c : bp)
    if (a.real() <= c.real() + 1e-9 * scale) return false;
  return true;
}

// Abel contribution of one finite point, base point at infinity.
Eigen::VectorXcd abel_single(const HECurve& curve, cd xp, cd yp, double tol) {
  const int g = curve.genus;
  const double scale = std::max(curve.scale(), 1e-30);
  const auto& bp = curve.branch_points;
  double rho = 1e300;
  for (cd c : bp) rho = std::min(rho, std::abs(xp - c));
  if (rho < 1e-8 * scale)
    throw QuadratureFailure("abel: point too close to a branch point");
  if (std::abs(yp * yp - curve.h(xp)) > 1e-6 * std::max(1.0, std::abs(curve.h(xp))))
    throw QuadratureFailure("abel: point does not satisfy y^2 = h(x)");

  // Route: a ray x = a / v^2 in from infinity, then straight segments to xp.
  const double clear = 0.04 * scale;
  std::vector<cd> waypoints;  // segment corners after the ray anchor a
  cd a;
  bool found = false;
  if (std::abs(xp) > 1e-12 * scale && ray_admissible(bp, xp, scale) &&
      halfline_clearance(bp, xp) > std::min(clear, 0.5 * rho)) {
    a = xp;
    waypoints = {a};
    found = true;
  }
  if (!found) {
    for (int k = 0; k < 12 && !found; ++k) {
      double phi = 2 * std::numbers::pi * k / 12;
      cd cand = xp + rho / 3 * std::exp(cd(0, phi));
      if (std::abs(cand) > 1e-12 * scale && ray_admissible(bp, cand, scale) &&
          halfline_clearance(bp, cand) > clear) {
        a = cand;
        waypoints = {a, xp};
        found = true;
      }
    }
  }
  if (!found) {
    double max_re = -1e300;
    for (cd c : bp) max_re = std::max(max_re, c.real());
    for (double dy : {0.9, -0.9, 1.7, -1.7, 2.6, -2.6}) {
      cd xc = xp + cd(0, dy * scale);
      cd xr(max_re + 2.5 * scale, xc.imag());
      if (!ray_admissible(bp, xr, scale)) continue;
      if (halfline_clearance(bp, xr) < clear) continue;
      if (segment_clearance(bp, xr, xc) < clear) continue;
      if (segment_clearance(bp, xc, xp) < std::min(clear, 0.6 * rho)) continue;
      a = xr;
      waypoints = {a, xc, xp};
      found = true;
      break;
    }
  }
  if (!found)
    throw QuadratureFailure("abel: no branch-safe integration route");

  // parities at the start of each segment leg and at the target point
  std::vector<int> base(waypoints.size());
  base[0] = ray_crossings(bp, a, 1.0);
  for (size_t w = 0; w + 1 < waypoints.size(); ++w)
    base[w + 1] = base[w] + cut_crossings(bp, waypoints[w], waypoints[w + 1]);
  cd y_end = ((base.back() & 1) ? -1.0 : 1.0) * y_global(curve, xp);
  double sign = (std::abs(y_end - yp) <= std::abs(y_end + yp)) ? 1.0 : -1.0;

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g);
  for (int j = 1; j <= g; ++j) {
    cd total = 0.0;
    {
      // tail: x = a / v^2, v in (0, 1]; parity counts ray crossings beyond u
      auto f = [&](double v) -> cd {
        cd x = a / (v * v);
        cd dx = -2.0 * a / (v * v * v);
        int par = ray_crossings(bp, a, 1.0 / (v * v));
        cd y = ((par & 1) ? -1.0 : 1.0) * y_global(curve, x);
        return std::pow(x, j - 1) * dx / (2.0 * y);
      };
      total += integrate(f, 0.0, 1.0, tol);
    }
    for (size_t w = 0; w + 1 < waypoints.size(); ++w) {
      cd p = waypoints[w], q = waypoints[w + 1];
      int b0 = base[w];
      auto f = [&, p, q, b0](double s) -> cd {
        cd x = p + s * (q - p);
        int par = b0 + cut_crossings(bp, p, x);
        cd y = ((par & 1) ? -1.0 : 1.0) * y_global(curve, x);
        return std::pow(x, j - 1) * (q - p) / (2.0 * y);
      };
      total += integrate(f, 0.0, 1.0, tol);
    }
    out(j - 1) = sign * total;
  }
  return out;
}

}  // namespace

Eigen::VectorXcd abel(
    const HECurve& curve,
    const std::vector<std::array<std::complex<double>, 2>>& points,
    double tol) {
  Eigen::VectorXcd t = Eigen::VectorXcd::Zero(curve.genus);
  for (const auto& p : points) t += abel_single(curve, p[0], p[1], tol);
  return t;
}

double lattice_distance(const PeriodData& p, const Eigen::VectorXcd& d) {
  const int g = static_cast<int>(p.omega1.rows());
  Eigen::MatrixXd B(2 * g, 2 * g);
  for (int k = 0; k < g; ++k) {
    B.block(0, k, g, 1) = p.omega1.col(k).real();
    B.block(g, k, g, 1) = p.omega1.col(k).imag();
    B.block(0, g + k, g, 1) = p.omega2.col(k).real();
    B.block(g, g + k, g, 1) = p.omega2.col(k).imag();
  }
  Eigen::VectorXd rhs(2 * g);
  rhs.head(g) = d.real();
  rhs.tail(g) = d.imag();
  Eigen::VectorXd q = B.partialPivLu().solve(rhs);
  Eigen::VectorXd qr = q.array().round().matrix();
  return (rhs - B * qr).cwiseAbs().maxCoeff();
}

}  // namespace elastica
