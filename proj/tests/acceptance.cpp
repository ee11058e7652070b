// Acceptance gate: one line per criterion, exit code = number of failures.
// Every numeric threshold here is deliberate; loosening one is a red flag.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "elastica/dressing.hpp"
#include "elastica/elliptic.hpp"
#include "elastica/flow.hpp"
#include "elastica/hecurve.hpp"
#include "elastica/hill.hpp"
#include "elastica/jetpoly.hpp"
#include "elastica/loop.hpp"
#include "elastica/periods.hpp"
#include "elastica/psido.hpp"
#include "elastica/sigma.hpp"
#include "elastica/tseries.hpp"
#include "elastica/verify.hpp"
#include "oracles.hpp"

using namespace elastica;
using cd = std::complex<double>;

namespace {

JetPoly u(unsigned k, unsigned p = 1) { return JetPoly::jet(k, p); }

double agm(double a, double b) {
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-15 * a; ++i) {
    double m = 0.5 * (a + b), g = std::sqrt(a * b);
    a = m;
    b = g;
  }
  return a;
}

struct Gate {
  int failures = 0;
  int index = 0;

  void run(const char* name, double budget_s,
           const std::function<bool(std::string&)>& fn) {
    ++index;
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    bool in_budget = dt <= budget_s;
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] %02d %-58s %6.2f s / %3.0f s%s%s\n",
                pass ? "PASS" : "FAIL", index, name, dt, budget_s,
                detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
  }
};

}  // namespace

int main() {
  Gate g;

  g.run("hierarchy fields carry the integer coefficients", 1.0,
        [](std::string& d) {
          JetPoly x1 = u(1);
          JetPoly x2 = u(3) + Rational(6) * u(0) * u(1);
          JetPoly x3 = u(5) + Rational(10) * u(0) * u(3) +
                       Rational(20) * u(1) * u(2) +
                       Rational(30) * u(0, 2) * u(1);
          bool ok = (kdv_rhs(1) - x1).is_zero() &&
                    (kdv_rhs(2) - x2).is_zero() &&
                    (kdv_rhs(3) - x3).is_zero();
          if (!ok) d = "symbolic mismatch in X_1..X_3";
          return ok;
        });

  g.run("operator square root matches through del^-4 and squares back", 1.0,
        [](std::string& d) {
          JetOp S = sqrt_L(u(0), 8);
          bool ok = S.at(1) == JetPoly(Rational(1)) && S.at(0).is_zero() &&
                    S.at(-1) == Rational(1, 2) * u(0) &&
                    S.at(-2) == Rational(-1, 4) * u(1) &&
                    S.at(-3) == Rational(1, 8) * (u(2) - u(0, 2)) &&
                    S.at(-4) == Rational(1, 16) *
                                    (Rational(6) * u(0) * u(1) - u(3));
          if (!ok) {
            d = "leading coefficients differ";
            return false;
          }
          JetOp R = compose(S, S, -8) - lax_operator(u(0));
          for (const auto& [deg, a] : R.coef())
            if (!a.is_zero()) {
              d = "S o S - L nonzero at degree " + std::to_string(deg);
              return false;
            }
          return true;
        });

  g.run("lax bracket reproduces the hierarchy fields n=1..3", 5.0,
        [](std::string& d) {
          for (int n = 1; n <= 3; ++n)
            if (!(lax_bracket(u(0), n) - kdv_rhs(n)).is_zero()) {
              d = "bracket differs at n=" + std::to_string(n);
              return false;
            }
          return true;
        });

  g.run("recursion operator advances the residue hamiltonians", 5.0,
        [](std::string& d) {
          for (int n = 2; n <= 3; ++n) {
            JetPoly lhs = total_derivative(residue_hamiltonian(u(0), n));
            JetPoly rhs =
                apply_recursion(total_derivative(residue_hamiltonian(u(0), n - 1)));
            if (!(lhs - rhs).is_zero()) {
              d = "recursion fails at n=" + std::to_string(n);
              return false;
            }
          }
          return true;
        });

  g.run("dressing conjugates del^2 to del^2 + u at depth 6", 5.0,
        [](std::string& d) {
          std::mt19937 rng(4242);
          std::uniform_real_distribution<double> un(-1.0, 1.0);
          std::vector<cd> coeffs(5);
          for (auto& c : coeffs) c = cd(un(rng), un(rng));
          TSeries uu = TSeries::polynomial(coeffs);
          DressingOperator w = dressing(uu, 6);
          double defect = dressing_defect(w, uu);
          char buf[64];
          std::snprintf(buf, sizeof(buf), "defect %.2e", defect);
          d = buf;
          return defect <= 1e-10;
        });

  g.run("isometric flow holds energy, closure, and length to t=1", 120.0,
        [](std::string& d) {
          LoopState loop = random_loop(12345, 0.25, 256);
          FlowParams p;
          p.dt = 1e-5;
          p.steps = 100000;
          p.scheme = Scheme::integrating_factor;
          p.save_every = 10000;
          Trajectory traj = evolve_mkdv(loop, p);
          double e0 = traj.diagnostics.front().energy;
          double rel = traj.max_energy_drift / std::abs(e0);
          double worst_closure = 0.0;
          for (const auto& f : traj.diagnostics)
            worst_closure = std::max(worst_closure, std::abs(f.closure));
          bool length_exact = traj.frames.back().length == loop.length;
          char buf[96];
          std::snprintf(buf, sizeof(buf), "drift %.2e closure %.2e", rel,
                        worst_closure);
          d = buf;
          return rel <= 1e-6 && worst_closure <= 1e-8 && length_exact;
        });

  g.run("miura lift obeys kdv with fourth-order step contraction", 120.0,
        [](std::string& d) {
          LoopState loop = random_loop(12345, 0.25, 256);
          auto residual = [&](double dt) {
            FlowParams p;
            p.dt = dt;
            p.steps = static_cast<int>(std::lround(0.05 / dt));
            p.scheme = Scheme::integrating_factor;
            p.save_every = 5;
            Trajectory traj = evolve_mkdv(loop, p);
            int mid = static_cast<int>(traj.frames.size()) / 2;
            std::array<spectral::cvec, 5> uf;
            for (int k = 0; k < 5; ++k)
              uf[k] = miura_u(traj.frames[mid - 2 + k]);
            return kdv_residual(uf, p.save_every * dt, loop.length);
          };
          double base = residual(1e-5);
          double half = residual(5e-6);
          char buf[96];
          std::snprintf(buf, sizeof(buf), "residual %.2e ratio %.1f", base,
                        base / half);
          d = buf;
          return base <= 1e-4 && base / half >= 4.0;
        });

  g.run("circle and figure eight reference states", 120.0,
        [](std::string& d) {
          LoopState circ = circle(1.0, 256);
          if (std::abs(energy(circ) - 0.5) > 1e-12) {
            d = "circle energy off";
            return false;
          }
          double mod = figure_eight_modulus();
          if (std::abs(mod - 0.908911) > 5e-3) {
            d = "modulus off";
            return false;
          }
          LoopState f8 = figure_eight(256);
          FlowParams p;
          p.dt = 1e-5;
          p.steps = 5000;
          p.scheme = Scheme::integrating_factor;
          Trajectory traj = evolve_mkdv(f8, p);
          double dist = shape_distance(traj.frames.back(), f8);
          char buf[96];
          std::snprintf(buf, sizeof(buf), "modulus %.6f shape drift %.2e",
                        mod, dist);
          d = buf;
          return dist <= 1e-4;
        });

  g.run("genus one periods, sigma, and wp against independent oracles",
        10.0, [](std::string& d) {
          HECurve c = make_curve(
              1, {cd(-1.0, 0.0), cd(0.2, 0.0), cd(0.8, 0.0)});
          PeriodData pd = periods(c, 1e-12);
          double c1 = -1.0, c2 = 0.2, c3 = 0.8;
          double wr = M_PI / agm(std::sqrt(c3 - c1), std::sqrt(c3 - c2));
          double wi = M_PI / agm(std::sqrt(c3 - c1), std::sqrt(c2 - c1));
          if (std::abs(std::abs(pd.omega1(0, 0)) - wr) > 1e-10 ||
              std::abs(std::abs(pd.omega2(0, 0)) - wi) > 1e-10) {
            d = "agm period mismatch";
            return false;
          }
          if (pd.legendre_defect > 1e-10) {
            d = "legendre defect too large";
            return false;
          }
          cd g2, g3;
          oracles::cubic_invariants(c.lambda[1], c.lambda[0], g2, g3);
          oracles::Weierstrass w(g2, g3);
          BakerSigma sig(c, pd);
          cd sp = sig.sigma_partial(Eigen::VectorXcd::Zero(1), {0});
          double worst = 0.0;
          for (cd z : {cd(0.31, 0.12), cd(-0.4, 0.05), cd(0.1, -0.33)}) {
            Eigen::VectorXcd t(1);
            t << z;
            worst = std::max(worst, std::abs(sig.sigma(t) / sp - w.sigma(z)));
            worst = std::max(worst,
                             std::abs(sig.wp_analytic(0, 0, t) - w.wp(z)));
          }
          char buf[64];
          std::snprintf(buf, sizeof(buf), "worst oracle gap %.2e", worst);
          d = buf;
          return worst <= 1e-8;
        });

  g.run("genus three quartic wp relations at ten random points", 120.0,
        [](std::string& d) {
          SuiteReport rep = verify_genus3(12345, 10);
          int passed = 0;
          double worst = 0.0;
          for (const auto& ck : rep.checks) {
            if (ck.residual < 1e-6) ++passed;
            worst = std::max(worst, ck.residual);
          }
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%d/15 worst %.2e", passed, worst);
          d = buf;
          return passed == 15;
        });

  g.run("one gap potential round trip recovers its branch points", 60.0,
        [](std::string& d) {
          SuiteReport rep = verify_roundtrip();
          for (const auto& ck : rep.checks)
            if (!ck.pass) {
              d = "failed: " + ck.name;
              return false;
            }
          return true;
        });

  g.run("free hill discriminant matches 2 cos(sqrt(xbar) P)", 120.0,
        [](std::string& d) {
          const double P = 2.0 * M_PI;
          PeriodicPotential zero([](double) { return 0.0; }, P);
          double worst_delta = 0.0, worst_det = 0.0;
          for (int j = 0; j < 200; ++j) {
            double xb = -1.0 + 7.0 * j / 199.0;
            // |delta| reaches 2 cosh(2 pi) ~ 535 at the left end, so the
            // integrator must run below the default tolerance
            MonodromyResult r = monodromy(zero, xb, 1e-12, 1e-14);
            cd expect = 2.0 * std::cos(std::sqrt(cd(xb, 0.0)) * P);
            worst_delta = std::max(worst_delta, std::abs(r.delta - expect));
            worst_det = std::max(worst_det, r.det_defect);
          }
          char buf[96];
          std::snprintf(buf, sizeof(buf), "delta gap %.2e det defect %.2e",
                        worst_delta, worst_det);
          d = buf;
          return worst_delta <= 1e-9 && worst_det <= 1e-8;
        });

  std::printf("%d/12 criteria pass\n", 12 - g.failures);
  return g.failures;
}
