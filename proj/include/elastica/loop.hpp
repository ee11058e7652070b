#pragma once

#include <complex>
#include <vector>

#include "elastica/spectral.hpp"

namespace elastica {

// Root-finding for a closing parameter failed to converge.
struct ClosureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed arc-length-parameterized plane curve, stored through its tangent
// angle phi at the uniform nodes s_j = j L / n.  The curve itself is
// gamma(s) = basepoint + int_0^s e^{i phi}, so |gamma'| = 1 holds by
// construction.  phi - 2 pi * winding * s / L is periodic; spectral
// operations act on that periodic part.
struct LoopState {
  std::vector<double> phi;
  double length = 0.0;
  std::complex<double> basepoint = 0.0;
  int winding = 0;

  int n() const { return static_cast<int>(phi.size()); }
  double ds() const { return length / n(); }
  double s(int j) const { return j * length / n(); }
};

// Throws std::invalid_argument unless n >= 16 and even and length > 0.
void validate(const LoopState& state);

// Periodic part p_j = phi_j - 2 pi w j / n as a complex vector for spectral
// work.  Exact: the ramp is evaluated at the nodes, not interpolated.
spectral::cvec periodic_part(const LoopState& state);

// Curvature k = d phi / ds; the constant mode is 2 pi w / L exactly.
std::vector<double> curvature(const LoopState& state);

// Unit tangent samples e^{i phi}.
spectral::cvec tangent(const LoopState& state);

// gamma(s_j), reconstructed spectrally: the tangent splits into its mean
// (the per-length closure defect) and a periodic remainder with an exact
// periodic primitive.
spectral::cvec gamma_samples(const LoopState& state);

// Integral of the tangent over one period; zero for a closed curve.
std::complex<double> closure_defect(const LoopState& state);

// Schwarz derivative samples i k' + k^2 / 2.
spectral::cvec schwarz(const LoopState& state);

// Bending energy (1/2pi) * integral of k^2/2 ds; >= 0, circle of radius 1
// gives 1/2.
double energy(const LoopState& state);

// --- reference curves ------------------------------------------------------

LoopState circle(double radius, int n);

// Modulus l at which the two-lobed elastica closes (root of the closure
// defect; approximately 0.9089).
double figure_eight_modulus();

// Closed two-lobed elastica: k(s) = 2 l cn(s | l^2) on [0, 4K(l^2)) at the
// closing modulus.
LoopState figure_eight(int n);

// Single-loop curve with k = -2 alpha sech(alpha (s - W/2)) on a window of
// width W (default 40/alpha).  Open: the natural closure defect is
// W - 4/alpha.  `unbounded_variant` selects the alternative form
// gamma(s) = s - (2/alpha)(tanh - i sinh)(alpha s), which is not unit speed;
// it is provided for comparison only and returned as sampled positions.
LoopState soliton(double alpha, int n, double window = 0.0);
spectral::cvec soliton_positions(const LoopState& state,
                                 bool unbounded_variant, double alpha);

// Smooth random loop: periodic tangent-angle perturbation with modes <= 8,
// coefficient m bounded by amplitude / m^2, winding 1, length 2 pi; the two
// first-harmonic coefficients are adjusted by Newton iteration until the
// closure defect is below 1e-13.
LoopState random_loop(unsigned long seed, double amplitude, int n);

// Minimal RMS distance between the position samples of two loops of equal
// sample count, over cyclic parameter shifts, rotations, and translations.
double shape_distance(const LoopState& a, const LoopState& b);

}  // namespace elastica
