#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "elastica/spectral.hpp"

namespace elastica {

struct IntegrationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Real potential over one period P, from uniform samples (trigonometric
// interpolation, grid size >= 32) or a closed-form callback.
class PeriodicPotential {
 public:
  PeriodicPotential(const std::vector<double>& samples, double period);
  PeriodicPotential(std::function<double(double)> f, double period);
  double operator()(double s) const;
  double period() const { return period_; }

 private:
  std::function<double(double)> f_;
  spectral::TrigInterp interp_;
  bool sampled_ = false;
  double period_ = 1.0;
};

// Monodromy of psi'' = -(u + xbar) psi over one period, columns built from
// the canonical initial data y0(0) = 1, y0'(0) = 0 and y1(0) = 0, y1'(0) = 1.
struct MonodromyResult {
  Eigen::Matrix2cd M;
  std::complex<double> rho1, rho2;    // Floquet multipliers
  std::complex<double> delta;         // tr M
  std::complex<double> delta_prime;   // d(tr M)/d xbar, variational system
  double det_defect = 0.0;            // |det M - 1|, Wronskian check
  bool stable = false;                // real case: delta^2 <= 4
};

MonodromyResult monodromy(const PeriodicPotential& u,
                          std::complex<double> xbar, double rtol = 1e-11,
                          double atol = 1e-13);

struct DiscriminantScan {
  std::vector<double> xbar;
  std::vector<double> delta;
  std::vector<double> delta_prime;
  std::vector<bool> stable;
};

// Samples the discriminant over a real grid; evaluations are independent
// and run in parallel.
DiscriminantScan discriminant_scan(const PeriodicPotential& u,
                                   const std::vector<double>& xbar_grid,
                                   double rtol = 1e-11, double atol = 1e-13);

struct BandEdge {
  double xbar = 0.0;
  bool simple = true;  // simple root of delta^2 - 4 (band boundary with gap)
};

// Roots of delta^2 - 4 on [lo, hi], found on a scan grid and polished to
// about 1e-10: sign changes of delta -+ 2 give simple edges; interior roots
// of delta' where |delta| = 2 give double (closed-gap) edges.
std::vector<BandEdge> band_edges(const PeriodicPotential& u, double lo,
                                 double hi, int grid = 400,
                                 double rtol = 1e-11, double atol = 1e-13);

}  // namespace elastica
