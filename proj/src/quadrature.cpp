#include "elastica/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace elastica {
namespace {

struct Node {
  double x, w;
};

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr Node kG7[] = {
    {-9.49107912342758486e-01, 1.29484966168870647e-01},
    {-7.41531185599394460e-01, 2.79705391489276589e-01},
    {-4.05845151377397184e-01, 3.81830050505118312e-01},
    {+0.00000000000000000e+00, 4.17959183673468959e-01},
    {+4.05845151377397184e-01, 3.81830050505118312e-01},
    {+7.41531185599394460e-01, 2.79705391489276589e-01},
    {+9.49107912342758486e-01, 1.29484966168870647e-01},
};
constexpr Node kG15[] = {
    {-9.87992518020485377e-01, 3.07532419961186465e-02},
    {-9.37273392400705951e-01, 7.03660474881080689e-02},
    {-8.48206583410427206e-01, 1.07159220467171773e-01},
    {-7.24417731360170070e-01, 1.39570677926153908e-01},
    {-5.70972172608538830e-01, 1.66269205816993781e-01},
    {-3.94151347077563385e-01, 1.86161000015561878e-01},
    {-2.01194093997434514e-01, 1.98431485327111246e-01},
    {+0.00000000000000000e+00, 2.02578241925560898e-01},
    {+2.01194093997434514e-01, 1.98431485327111246e-01},
    {+3.94151347077563385e-01, 1.86161000015561878e-01},
    {+5.70972172608538830e-01, 1.66269205816993781e-01},
    {+7.24417731360170070e-01, 1.39570677926153908e-01},
    {+8.48206583410427206e-01, 1.07159220467171773e-01},
    {+9.37273392400705951e-01, 7.03660474881080689e-02},
    {+9.87992518020485377e-01, 3.07532419961186465e-02},
};

std::complex<double> panel(const cfun& f, double a, double b, double& err) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::complex<double> g7 = 0.0, g15 = 0.0;
  for (const Node& n : kG7) g7 += n.w * f(mid + half * n.x);
  for (const Node& n : kG15) g15 += n.w * f(mid + half * n.x);
  g7 *= half;
  g15 *= half;
  err = std::abs(g15 - g7);
  return g15;
}

std::complex<double> adapt(const cfun& f, double a, double b, double tol,
                           int depth) {
  double err;
  std::complex<double> v = panel(f, a, b, err);
  if (err <= tol || err <= 1e-16 * std::abs(v)) return v;
  if (depth <= 0)
    throw QuadratureFailure("integrate: depth limit at [" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            "], panel error " + std::to_string(err));
  double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth - 1) +
         adapt(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace

std::complex<double> integrate(const cfun& f, double a, double b, double tol,
                               int max_depth) {
  if (!(tol > 0)) throw QuadratureFailure("integrate: tol must be positive");
  if (a == b) return 0.0;
  return adapt(f, a, b, tol, max_depth);
}

std::complex<double> periodic_trapezoid(const cfun& f, double tol, int min_n,
                                        int max_n) {
  constexpr double period = 2 * std::numbers::pi;
  auto sweep = [&](int n) {
    std::complex<double> s = 0.0;
    for (int j = 0; j < n; ++j) s += f(period * j / n);
    return s * (period / n);
  };
  std::complex<double> prev = sweep(min_n);
  for (int n = 2 * min_n; n <= max_n; n *= 2) {
    std::complex<double> cur = sweep(n);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw QuadratureFailure("periodic_trapezoid: no convergence by n = " +
                          std::to_string(max_n));
}

}  // namespace elastica
