#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "elastica/elliptic.hpp"
#include "elastica/finite_gap.hpp"
#include "elastica/hecurve.hpp"
#include "elastica/hill.hpp"
#include "elastica/periods.hpp"
#include "elastica/sigma.hpp"

using namespace elastica;
using cd = std::complex<double>;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("free monodromy matches the closed form") {
  const double P = 2.0 * M_PI;
  PeriodicPotential zero([](double) { return 0.0; }, P);

  SUBCASE("positive energy") {
    for (double xb : {0.3, 1.7}) {
      MonodromyResult r = monodromy(zero, xb);
      double w = std::sqrt(xb);
      CHECK(std::abs(r.M(0, 0) - std::cos(w * P)) < 1e-10);
      CHECK(std::abs(r.M(0, 1) - std::sin(w * P) / w) < 1e-10);
      CHECK(std::abs(r.M(1, 0) + w * std::sin(w * P)) < 1e-10);
      CHECK(std::abs(r.M(1, 1) - std::cos(w * P)) < 1e-10);
      CHECK(std::abs(r.delta - 2.0 * std::cos(w * P)) < 1e-10);
      // variational route against d/dxbar of 2 cos(sqrt(xbar) P)
      CHECK(std::abs(r.delta_prime + P * std::sin(w * P) / w) < 1e-9);
      CHECK(r.det_defect < 1e-10);
    }
  }
  SUBCASE("zero energy is the shear matrix") {
    MonodromyResult r = monodromy(zero, 0.0);
    CHECK(std::abs(r.M(0, 0) - 1.0) < 1e-11);
    CHECK(std::abs(r.M(0, 1) - P) < 1e-10);
    CHECK(std::abs(r.M(1, 0)) < 1e-11);
    CHECK(std::abs(r.M(1, 1) - 1.0) < 1e-11);
    CHECK(r.stable);  // delta = 2 exactly: edge of stability
  }
  SUBCASE("negative energy grows hyperbolically") {
    double xb = -0.4, w = std::sqrt(0.4);
    MonodromyResult r = monodromy(zero, xb);
    CHECK(std::abs(r.M(0, 0) - std::cosh(w * P)) < 1e-8);
    CHECK(std::abs(r.M(0, 1) - std::sinh(w * P) / w) < 1e-8);
    CHECK(std::abs(r.delta - 2.0 * std::cosh(w * P)) < 1e-8);
    CHECK(!r.stable);
  }
  SUBCASE("complex energy") {
    cd xb(0.0, 1.0);
    MonodromyResult r = monodromy(zero, xb);
    cd expect = 2.0 * std::cos(std::sqrt(xb) * P);
    CHECK(std::abs(r.delta - expect) < 1e-9);
    CHECK(std::abs(r.delta.real() - (-22.6400797224)) < 1e-9);
    CHECK(std::abs(r.delta.imag() - 81.9393621648) < 1e-9);
    CHECK(!r.stable);
    CHECK(r.det_defect < 1e-9);
  }
}

TEST_CASE("floquet multipliers satisfy the trace and determinant identities") {
  PeriodicPotential lame(
      [](double s) {
        auto j = elliptic::jacobi(s, 0.5);
        return -2.0 * 0.5 * j.sn * j.sn;
      },
      2.0 * elliptic::K(0.5));
  for (double xb : {-1.0, 0.2, 0.75, 1.2, 2.5}) {
    MonodromyResult r = monodromy(lame, xb);
    CHECK(std::abs(r.rho1 * r.rho2 - 1.0) < 1e-9);
    CHECK(std::abs(r.rho1 + r.rho2 - r.delta) < 1e-9);
    bool in_band = (r.delta * r.delta - 4.0).real() <= 0.0;
    CHECK(r.stable == in_band);
    double grow = std::max(std::abs(r.rho1), std::abs(r.rho2));
    if (r.stable) CHECK(grow <= 1.0 + 1e-8);
    else CHECK(grow > 1.0 + 1e-8);
  }
}

TEST_CASE("free band edges sit at the closed gaps") {
  PeriodicPotential zero([](double) { return 0.0; }, M_PI);
  // period pi: delta = 2 cos(pi sqrt(xbar)), edges at xbar = n^2
  auto edges = band_edges(zero, -0.5, 10.0, 400);
  REQUIRE(edges.size() == 4);
  CHECK(std::abs(edges[0].xbar - 0.0) < 1e-8);
  CHECK(edges[0].simple);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(edges[n].xbar - n * n) < 1e-7);
    CHECK(!edges[n].simple);  // gaps are closed for the free operator
  }
}

TEST_CASE("one gap potential opens exactly one gap") {
  const double m = 0.5;
  const double P = 2.0 * elliptic::K(m);
  PeriodicPotential lame(
      [m](double s) {
        auto j = elliptic::jacobi(s, m);
        return -2.0 * m * j.sn * j.sn;
      },
      P);
  auto edges = band_edges(lame, -2.0, 4.0, 400);
  std::vector<double> simple;
  for (const auto& e : edges)
    if (e.simple) simple.push_back(e.xbar);
  REQUIRE(simple.size() == 3);
  // spectrum of -d^2 - 2m sn^2: band edges at m, 1, 1+m
  CHECK(std::abs(simple[0] - m) < 1e-8);
  CHECK(std::abs(simple[1] - 1.0) < 1e-8);
  CHECK(std::abs(simple[2] - (1.0 + m)) < 1e-8);
  // the first closed gap beyond the open one
  REQUIRE(edges.size() >= 4);
  bool found = false;
  for (const auto& e : edges)
    if (!e.simple && std::abs(e.xbar - 3.42843703735) < 1e-7) found = true;
  CHECK(found);
}

TEST_CASE("curve built potential reproduces its branch points") {
  HECurve c = make_curve(1, {cd(-1.0, 0.0), cd(0.2, 0.0), cd(0.8, 0.0)});
  PeriodData pd = periods(c, 1e-12);
  BakerSigma sig(c, pd);
  Eigen::VectorXcd base = g1_real_basepoint(pd);
  double P = std::abs(pd.omega1(0, 0));

  const int n = 128;
  std::vector<double> samples(n);
  Eigen::VectorXcd t(1);
  for (int i = 0; i < n; ++i) {
    t(0) = base(0) + pd.omega1(0, 0) * (double(i) / n);
    cd uv = finite_gap_u_point(sig, t);
    REQUIRE(std::abs(uv.imag()) < 1e-9);
    samples[i] = uv.real();
  }
  PeriodicPotential u(samples, P);
  auto edges = band_edges(u, -2.0, 3.0, 400);
  std::vector<double> simple;
  for (const auto& e : edges)
    if (e.simple) simple.push_back(e.xbar);
  REQUIRE(simple.size() == 3);
  // edges are the reflected branch points up to one common shift:
  // chat_j = mean(c) - (xbar_{2-j} - mean(xbar))
  std::vector<double> bp = {-1.0, 0.2, 0.8};
  double mc = (bp[0] + bp[1] + bp[2]) / 3.0;
  double mx = (simple[0] + simple[1] + simple[2]) / 3.0;
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(mc - (simple[2 - j] - mx) - bp[j]) < 1e-6);
}

TEST_CASE("discriminant scan agrees with pointwise monodromy") {
  PeriodicPotential lame(
      [](double s) {
        auto j = elliptic::jacobi(s, 0.5);
        return -2.0 * 0.5 * j.sn * j.sn;
      },
      2.0 * elliptic::K(0.5));
  auto grid = linspace(-1.0, 3.0, 41);
  DiscriminantScan scan = discriminant_scan(lame, grid);
  REQUIRE(scan.xbar.size() == grid.size());
  for (size_t i = 0; i < grid.size(); i += 8) {
    MonodromyResult r = monodromy(lame, grid[i]);
    CHECK(std::abs(scan.delta[i] - r.delta.real()) < 1e-10);
    CHECK(std::abs(scan.delta_prime[i] - r.delta_prime.real()) < 1e-9);
    CHECK(scan.stable[i] == r.stable);
  }
  // stability from the scan matches the |delta| <= 2 criterion
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(scan.stable[i] == (scan.delta[i] * scan.delta[i] <= 4.0));
}

TEST_CASE("potential wrappers validate and agree") {
  CHECK_THROWS_AS(PeriodicPotential(std::vector<double>(16, 0.0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PeriodicPotential([](double) { return 0.0; }, -1.0),
                  std::invalid_argument);
  // trig interpolation of a band-limited function is exact off-grid
  const double P = 2.0;
  const int n = 64;
  auto f = [P](double s) {
    return 0.3 * std::cos(2.0 * M_PI * s / P) -
           0.1 * std::sin(6.0 * M_PI * s / P);
  };
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = f(P * i / n);
  PeriodicPotential sampled(samples, P);
  PeriodicPotential direct(f, P);
  for (double s : {0.123, 0.77, 1.501, 1.999})
    CHECK(std::abs(sampled(s) - direct(s)) < 1e-12);
}
