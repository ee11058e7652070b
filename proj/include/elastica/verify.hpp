#pragma once

#include <string>
#include <vector>

#include "elastica/hecurve.hpp"
#include "elastica/periods.hpp"

namespace elastica {

// One identity check: residual against its pinned tolerance.
struct SuiteCheck {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Symbolic cross-checks in the jet ring: the Lax bracket collapses to the
// hierarchy field for n = 1..3, the operator square root splits L at depth 8,
// and the residue Hamiltonians satisfy the recursion D hbar_n = Omega D
// hbar_{n-1}.  All residuals are exact 0/1 indicators.
SuiteReport verify_lax();

// Dynamic check: evolve a random smooth loop (N = 256) under the isometric
// curvature flow and measure the KdV residual of the Miura lift across saved
// frames, plus the Wronskian and ODE defects of the wave-function lift.
SuiteReport verify_miura(unsigned long seed = 12345);

// Max relative residual of each of the 15 quartic wp relations over `points`
// random off-divisor points of the given genus-3 curve,
// rel = |L - R| / max(1, |L|, |R|).  Throws std::runtime_error when
// off-divisor sampling fails.
std::vector<double> genus3_relation_residuals(const HECurve& curve,
                                              const PeriodData& pd,
                                              unsigned long seed, int points);

// The 15 quartic wp relations at genus 3, evaluated at `points` random
// off-divisor points of a randomized non-degenerate curve (branch points
// jittered around a fixed ladder, sum not normalized to zero so every lambda
// enters).  Tolerance 1e-6 per relation.
SuiteReport verify_genus3(unsigned long seed = 12345, int points = 10);

// Finite-gap round trip at genus 1: curve -> sigma -> u(s) on the real
// nonsingular line -> Hill discriminant -> band edges, which must recover
// the branch points after additive normalization, with an odd number (3) of
// simple edges.
SuiteReport verify_roundtrip();

// Renders reports as an aligned pass/fail table.
std::string format_reports(const std::vector<SuiteReport>& reports);

}  // namespace elastica
