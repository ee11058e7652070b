#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace elastica {

struct DegenerateCurve : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hyperelliptic curve y^2 = h(x) = prod_{j=1}^{2g+1} (x - c_j), genus g.
// lambda holds the monic expansion h(x) = sum_k lambda[k] x^k,
// lambda[2g+1] = 1.
struct HECurve {
  int genus = 0;
  std::vector<std::complex<double>> branch_points;  // 2g+1 pairwise distinct
  std::vector<std::complex<double>> lambda;         // 2g+2 coefficients

  // h(x) by Horner on lambda.
  std::complex<double> h(std::complex<double> x) const;
  // min pairwise branch-point distance.
  double min_gap() const;
  // max |c_j|, scale of the configuration.
  double scale() const;
};

// Builds the curve from branch points; expands lambda as elementary
// symmetric functions of the roots.  Throws DegenerateCurve when two branch
// points are closer than degeneracy_tol * scale.
HECurve make_curve(int genus,
                   const std::vector<std::complex<double>>& branch_points,
                   double degeneracy_tol = 1e-7);

// Numerator polynomial coefficients (index = power of x) of the canonical
// differential bases, each understood over the common denominator 2y:
//   omega_i = x^{i-1} dx / 2y                         (first kind, i = 1..g)
//   eta_j   = sum_{k=j}^{2g-j} (k+1-j) lambda_{k+1+j} x^k dx / 2y
//                                                     (second kind, j = 1..g)
struct DifferentialBasis {
  std::vector<std::vector<std::complex<double>>> omega_num;  // g entries
  std::vector<std::vector<std::complex<double>>> eta_num;    // g entries
};
DifferentialBasis differentials(const HECurve& curve);

// JSON round trip: {"genus": g, "branch_points": [[re, im], ...]}.
std::string curve_to_json(const HECurve& curve);
HECurve curve_from_json(const std::string& text);

}  // namespace elastica
