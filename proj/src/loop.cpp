#include "elastica/loop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "elastica/elliptic.hpp"

namespace elastica {

namespace {
constexpr double kPi = std::numbers::pi;
}

void validate(const LoopState& state) {
  if (state.n() < 16 || state.n() % 2 != 0)
    throw std::invalid_argument("LoopState: need at least 16 samples, even");
  if (!(state.length > 0.0))
    throw std::invalid_argument("LoopState: length must be positive");
}

spectral::cvec periodic_part(const LoopState& state) {
  int n = state.n();
  spectral::cvec p(n);
  double ramp = 2.0 * kPi * state.winding / n;
  for (int j = 0; j < n; ++j) p[j] = state.phi[j] - ramp * j;
  return p;
}

std::vector<double> curvature(const LoopState& state) {
  validate(state);
  spectral::cvec dp = spectral::derivative(periodic_part(state), 1,
                                           state.length);
  double mean_k = 2.0 * kPi * state.winding / state.length;
  std::vector<double> k(state.n());
  for (int j = 0; j < state.n(); ++j) k[j] = dp[j].real() + mean_k;
  return k;
}

spectral::cvec tangent(const LoopState& state) {
  spectral::cvec t(state.n());
  for (int j = 0; j < state.n(); ++j)
    t[j] = std::complex<double>(std::cos(state.phi[j]),
                                std::sin(state.phi[j]));
  return t;
}

spectral::cvec gamma_samples(const LoopState& state) {
  validate(state);
  spectral::cvec t = tangent(state);
  std::complex<double> tbar = spectral::mean(t);
  spectral::cvec pr = spectral::primitive(t, state.length);
  spectral::cvec g(state.n());
  for (int j = 0; j < state.n(); ++j)
    g[j] = state.basepoint + tbar * state.s(j) + pr[j] - pr[0];
  return g;
}

std::complex<double> closure_defect(const LoopState& state) {
  return spectral::mean(tangent(state)) * state.length;
}

spectral::cvec schwarz(const LoopState& state) {
  std::vector<double> k = curvature(state);
  spectral::cvec kc(k.begin(), k.end());
  spectral::cvec dk = spectral::derivative(kc, 1, state.length);
  spectral::cvec out(state.n());
  for (int j = 0; j < state.n(); ++j)
    out[j] = std::complex<double>(0.0, 1.0) * dk[j] + 0.5 * k[j] * k[j];
  return out;
}

double energy(const LoopState& state) {
  std::vector<double> k = curvature(state);
  double acc = 0.0;
  for (double v : k) acc += 0.5 * v * v;
  return acc * state.ds() / (2.0 * kPi);
}

LoopState circle(double radius, int n) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: radius > 0");
  LoopState st;
  st.length = 2.0 * kPi * radius;
  st.winding = 1;
  st.basepoint = std::complex<double>(0.0, -radius);
  st.phi.resize(n);
  for (int j = 0; j < n; ++j) st.phi[j] = st.s(j) / radius;
  return st;
}

double figure_eight_modulus() {
  // The sampled closure defect of the two-lobed elastica reduces to
  // 8 E(m) - 4 K(m) with m = l^2 (the sine part cancels by symmetry), so the
  // closing modulus is the root of that expression.
  double lo = 0.85, hi = 0.95;
  auto f = [](double l) {
    double m = l * l;
    return 8.0 * elliptic::E(m) - 4.0 * elliptic::K(m);
  };
  double flo = f(lo);
  if (!(flo > 0.0) || !(f(hi) < 0.0))
    throw ClosureFailure("figure_eight_modulus: root not bracketed");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

LoopState figure_eight(int n) {
  double l = figure_eight_modulus();
  double m = l * l;
  LoopState st;
  st.length = 4.0 * elliptic::K(m);
  st.winding = 0;
  st.basepoint = 0.0;
  st.phi.resize(n);
  for (int j = 0; j < n; ++j) {
    elliptic::Jacobi jc = elliptic::jacobi(st.s(j), m);
    st.phi[j] = 2.0 * std::asin(l * jc.sn);
  }
  return st;
}

LoopState soliton(double alpha, int n, double window) {
  if (!(alpha > 0.0)) throw std::invalid_argument("soliton: alpha > 0");
  double w = window > 0.0 ? window : 40.0 / alpha;
  LoopState st;
  st.length = w;
  st.winding = -1;
  st.phi.resize(n);
  for (int j = 0; j < n; ++j) {
    double xi = alpha * (st.s(j) - 0.5 * w);
    // gamma' = (tanh + i sech)^2, a unit tangent; phi decreases from 2 pi
    // to 0 across the window.
    st.phi[j] = 2.0 * std::atan2(1.0 / std::cosh(xi), std::tanh(xi));
  }
  double xi0 = -0.5 * alpha * w;
  st.basepoint =
      std::complex<double>(-0.5 * w - (2.0 / alpha) * std::tanh(xi0),
                           -(2.0 / alpha) / std::cosh(xi0));
  return st;
}

spectral::cvec soliton_positions(const LoopState& state,
                                 bool unbounded_variant, double alpha) {
  if (!unbounded_variant) return gamma_samples(state);
  spectral::cvec g(state.n());
  for (int j = 0; j < state.n(); ++j) {
    double s = state.s(j) - 0.5 * state.length;
    g[j] = std::complex<double>(s - (2.0 / alpha) * std::tanh(alpha * s),
                                (2.0 / alpha) * std::sinh(alpha * s));
  }
  return g;
}

LoopState random_loop(unsigned long seed, double amplitude, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  constexpr int kModes = 8;
  double a[kModes + 1], b[kModes + 1];
  for (int m = 1; m <= kModes; ++m) {
    a[m] = amplitude / (m * m) * uni(rng);
    b[m] = amplitude / (m * m) * uni(rng);
  }
  LoopState st;
  st.length = 2.0 * kPi;
  st.winding = 1;
  st.basepoint = 0.0;
  st.phi.resize(n);
  auto build = [&](double c1, double c2) {
    for (int j = 0; j < n; ++j) {
      double s = st.s(j);
      double p = c1 * std::cos(s) + c2 * std::sin(s);
      for (int m = 1; m <= kModes; ++m)
        p += a[m] * std::cos(m * s) + b[m] * std::sin(m * s);
      st.phi[j] = p + s;
    }
  };
  // Newton iteration on the two first-harmonic coefficients driving the
  // closure defect to zero; the Jacobian columns are i cos(s) e^{i phi} and
  // i sin(s) e^{i phi} integrated over the loop.
  double c1 = 0.0, c2 = 0.0;
  for (int it = 0; it < 50; ++it) {
    build(c1, c2);
    std::complex<double> d = closure_defect(st);
    if (std::abs(d) < 1e-13) return st;
    std::complex<double> j1 = 0.0, j2 = 0.0;
    for (int j = 0; j < n; ++j) {
      double s = st.s(j);
      std::complex<double> e(std::cos(st.phi[j]), std::sin(st.phi[j]));
      std::complex<double> ie = std::complex<double>(0.0, 1.0) * e;
      j1 += ie * std::cos(s);
      j2 += ie * std::sin(s);
    }
    j1 *= st.ds();
    j2 *= st.ds();
    double det = j1.real() * j2.imag() - j2.real() * j1.imag();
    if (std::abs(det) < 1e-14)
      throw ClosureFailure("random_loop: singular closure Jacobian");
    c1 -= (d.real() * j2.imag() - j2.real() * d.imag()) / det;
    c2 -= (j1.real() * d.imag() - d.real() * j1.imag()) / det;
  }
  throw ClosureFailure("random_loop: Newton did not close the loop");
}

double shape_distance(const LoopState& a, const LoopState& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("shape_distance: sample counts differ");
  int n = a.n();
  spectral::cvec ga = gamma_samples(a);
  spectral::cvec gb = gamma_samples(b);
  std::complex<double> ca = spectral::mean(ga), cb = spectral::mean(gb);
  for (auto& z : ga) z -= ca;
  for (auto& z : gb) z -= cb;
  double sa = 0.0, sb = 0.0;
  for (int j = 0; j < n; ++j) {
    sa += std::norm(ga[j]);
    sb += std::norm(gb[j]);
  }
  // Best rotation for a given cyclic shift has |rho| with
  // rho = sum ga_j conj(gb_{j+shift}); scan all grid shifts first.
  auto rho_grid = [&](int j0) {
    std::complex<double> r = 0.0;
    for (int j = 0; j < n; ++j) r += ga[j] * std::conj(gb[(j + j0) % n]);
    return r;
  };
  int best_j = 0;
  double best = -1.0;
  for (int j0 = 0; j0 < n; ++j0) {
    double v = std::abs(rho_grid(j0));
    if (v > best) {
      best = v;
      best_j = j0;
    }
  }
  // Refine with golden-section on the fractional shift around the best node.
  auto rho_frac = [&](double delta) {
    spectral::cvec shifted = spectral::shift(gb, delta, b.length);
    std::complex<double> r = 0.0;
    for (int j = 0; j < n; ++j) r += ga[j] * std::conj(shifted[j]);
    return std::abs(r);
  };
  double ds = b.length / n;
  double lo = best_j * ds - ds, hi = best_j * ds + ds;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = rho_frac(x1), f2 = rho_frac(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = rho_frac(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = rho_frac(x1);
    }
  }
  double rho = std::max(f1, f2);
  double d2 = (sa + sb - 2.0 * rho) / n;
  return std::sqrt(std::max(0.0, d2));
}

}  // namespace elastica
