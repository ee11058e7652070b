#pragma once

#include "elastica/psido.hpp"
#include "elastica/tseries.hpp"

namespace elastica {

using SeriesOp = PsiDO<TSeries>;

// W = 1 + w_1 del^{-1} + ... + w_depth del^{-depth} conjugating the bare
// operator to the dressed one: W o del^2 o W^{-1} = del^2 + u.  The w_k solve
//   D w_k = -(1/2)(D^2 w_{k-1} + u w_{k-1}),    w_0 = 1,
// obtained by matching coefficients of del^{2-k-1} in L o W = W o del^2.
// Gauge: every integration constant is zero, which picks one representative
// of the right coset of constant-coefficient operators.
//
// Truncation: with u trusted to t1-order M, w_k is trusted to order
// M + 2 - k (each step differentiates twice and integrates once).  W_inv is
// the Neumann series of -(W - 1), exact to the same depth.
struct DressingOperator {
  SeriesOp W;
  SeriesOp W_inv;
  int depth;
};

DressingOperator dressing(const TSeries& u, int depth);

// sup over stored coefficients of |W o (del^2) o W^{-1} - (del^2 + u)|,
// restricted to degrees >= -depth and each coefficient's trusted t1-window.
double dressing_defect(const DressingOperator& d, const TSeries& u);

}  // namespace elastica
