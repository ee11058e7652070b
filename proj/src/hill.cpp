#include "elastica/hill.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

namespace elastica {
namespace {

using cd = std::complex<double>;
using State = Eigen::Matrix<cd, 8, 1>;

// psi'' = -(u + xbar) psi for the two canonical columns, plus the
// variational system d/dxbar: z'' = -(u + xbar) z - psi.
State rhs(const PeriodicPotential& u, cd xbar, double s, const State& y) {
  cd q = -(u(s) + xbar);
  State d;
  d(0) = y(1);
  d(1) = q * y(0);
  d(2) = y(3);
  d(3) = q * y(2);
  d(4) = y(5);
  d(5) = q * y(4) - y(0);
  d(6) = y(7);
  d(7) = q * y(6) - y(2);
  return d;
}

// Dormand-Prince 5(4) pair, FSAL
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600,
                 kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640,
                 kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;

State integrate_period(const PeriodicPotential& u, cd xbar, State y,
                       double rtol, double atol) {
  const double P = u.period();
  double s = 0.0;
  double h = P / 100;
  State k1 = rhs(u, xbar, s, y);
  long steps = 0;
  while (s < P) {
    if (++steps > 2000000)
      throw IntegrationFailure("monodromy: step limit exceeded");
    h = std::min(h, P - s);
    State k2 = rhs(u, xbar, s + kC2 * h, y + h * kA21 * k1);
    State k3 = rhs(u, xbar, s + kC3 * h, y + h * (kA31 * k1 + kA32 * k2));
    State k4 = rhs(u, xbar, s + kC4 * h,
                   y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    State k5 = rhs(u, xbar, s + kC5 * h,
                   y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    State k6 = rhs(u, xbar, s + h,
                   y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 +
                            kA65 * k5));
    State y5 =
        y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    State k7 = rhs(u, xbar, s + h, y5);
    State err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 +
                     kE7 * k7);
    double norm = 0.0;
    for (int i = 0; i < 8; ++i) {
      double sc = atol + rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
      norm = std::max(norm, std::abs(err(i)) / sc);
    }
    if (norm <= 1.0) {
      s += h;
      y = y5;
      k1 = k7;  // first-same-as-last
    } else {
      k1 = rhs(u, xbar, s, y);
    }
    double fac = 0.9 * std::pow(std::max(norm, 1e-10), -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
    if (h < 1e-14 * P)
      throw IntegrationFailure("monodromy: step size underflow");
  }
  return y;
}

// Brent root refinement on a bracketing interval
template <typename F>
double brent(F f, double a, double b, double fa, double fb, double xtol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    double tol = 2 * 1e-16 * std::abs(b) + 0.5 * xtol;
    double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;
    } else {
      double p, q, r, ss = fb / fa;
      if (a == c) {
        p = 2 * m * ss;
        q = 1 - ss;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = ss * (2 * m * q * (q - r) - (b - a) * (r - 1));
        q = (q - 1) * (r - 1) * (ss - 1);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2 * p < std::min(3 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
  }
  throw NoConvergence("brent: no convergence in 200 iterations");
}

}  // namespace

PeriodicPotential::PeriodicPotential(const std::vector<double>& samples,
                                     double period)
    : sampled_(true), period_(period) {
  if (period <= 0)
    throw std::invalid_argument("PeriodicPotential: period must be positive");
  if (samples.size() < 32)
    throw std::invalid_argument("PeriodicPotential: grid size below 32");
  spectral::cvec c(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i]))
      throw std::invalid_argument("PeriodicPotential: non-finite sample");
    c[i] = samples[i];
  }
  interp_ = spectral::TrigInterp(c, period);
}

PeriodicPotential::PeriodicPotential(std::function<double(double)> f,
                                     double period)
    : f_(std::move(f)), period_(period) {
  if (period <= 0)
    throw std::invalid_argument("PeriodicPotential: period must be positive");
}

double PeriodicPotential::operator()(double s) const {
  return sampled_ ? interp_(s).real() : f_(s);
}

MonodromyResult monodromy(const PeriodicPotential& u, std::complex<double> xbar,
                          double rtol, double atol) {
  State y0 = State::Zero();
  y0(0) = 1.0;  // y0(0) = 1, y0'(0) = 0
  y0(3) = 1.0;  // y1(0) = 0, y1'(0) = 1
  State yP = integrate_period(u, xbar, y0, rtol, atol);
  MonodromyResult r;
  r.M << yP(0), yP(2), yP(1), yP(3);
  r.delta = yP(0) + yP(3);
  r.delta_prime = yP(4) + yP(7);
  cd det = r.M(0, 0) * r.M(1, 1) - r.M(0, 1) * r.M(1, 0);
  r.det_defect = std::abs(det - 1.0);
  cd disc = std::sqrt(r.delta * r.delta - 4.0);
  r.rho1 = 0.5 * (r.delta + disc);
  r.rho2 = 0.5 * (r.delta - disc);
  r.stable = std::abs(r.delta.imag()) < 1e-9 &&
             r.delta.real() * r.delta.real() <= 4.0;
  return r;
}

DiscriminantScan discriminant_scan(const PeriodicPotential& u,
                                   const std::vector<double>& xbar_grid,
                                   double rtol, double atol) {
  const size_t n = xbar_grid.size();
  DiscriminantScan scan;
  scan.xbar = xbar_grid;
  scan.delta.resize(n);
  scan.delta_prime.resize(n);
  scan.stable.resize(n);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  std::vector<std::future<void>> jobs;
  std::atomic<size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&] {
      for (size_t i = next++; i < n; i = next++) {
        MonodromyResult m = monodromy(u, xbar_grid[i], rtol, atol);
        scan.delta[i] = m.delta.real();
        scan.delta_prime[i] = m.delta_prime.real();
        scan.stable[i] = m.stable;
      }
    }));
  for (auto& j : jobs) j.get();
  return scan;
}

std::vector<BandEdge> band_edges(const PeriodicPotential& u, double lo,
                                 double hi, int grid, double rtol,
                                 double atol) {
  std::vector<double> xs(static_cast<size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) xs[i] = lo + (hi - lo) * i / grid;
  DiscriminantScan scan = discriminant_scan(u, xs, rtol, atol);

  auto delta_at = [&](double x) {
    return monodromy(u, x, rtol, atol).delta.real();
  };
  auto dprime_at = [&](double x) {
    return monodromy(u, x, rtol, atol).delta_prime.real();
  };

  std::vector<double> roots;
  // simple edges: sign changes of delta -+ 2
  for (double off : {-2.0, 2.0}) {
    for (int i = 0; i < grid; ++i) {
      double fa = scan.delta[i] + off, fb = scan.delta[i + 1] + off;
      if (fa == 0.0) {
        roots.push_back(xs[i]);
        continue;
      }
      if (fa * fb < 0) {
        auto f = [&](double x) { return delta_at(x) + off; };
        roots.push_back(brent(f, xs[i], xs[i + 1], fa, fb, 1e-12));
      }
    }
  }
  // closed-gap (double) edges: roots of delta' where |delta| = 2
  for (int i = 0; i < grid; ++i) {
    double fa = scan.delta_prime[i], fb = scan.delta_prime[i + 1];
    if (fa * fb < 0) {
      double x =
          brent([&](double t) { return dprime_at(t); }, xs[i], xs[i + 1], fa,
                fb, 1e-12);
      if (std::abs(std::abs(delta_at(x)) - 2.0) < 1e-6) roots.push_back(x);
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<BandEdge> out;
  for (double x : roots) {
    if (!out.empty() && std::abs(x - out.back().xbar) < 1e-8) continue;
    BandEdge e;
    e.xbar = x;
    e.simple = std::abs(dprime_at(x)) > 1e-4;
    out.push_back(e);
  }
  return out;
}

}  // namespace elastica
