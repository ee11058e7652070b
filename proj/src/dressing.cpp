#include "elastica/dressing.hpp"

namespace elastica {

DressingOperator dressing(const TSeries& u, int depth) {
  if (depth < 0) throw std::invalid_argument("dressing: depth must be >= 0");
  DressingOperator out;
  out.depth = depth;

  // Two spare orders: composing W with del^2 pulls contributions of w_{k+1},
  // w_{k+2} up into degree -k, so verifying down to -depth needs the tail.
  const int internal = depth + 2;

  SeriesOp W = SeriesOp::monomial(TSeries(1.0), 0);
  TSeries wk = TSeries(1.0);
  for (int k = 1; k <= internal; ++k) {
    TSeries rhs = derivative(derivative(wk)) + u * wk;
    wk = scale_c(antiderivative(rhs), -0.5);
    if (!is_zero(wk)) W.add(-k, wk);
  }
  W.set_exact_floor(-internal);

  // Neumann inverse: W = 1 + A with A strictly lowering, so
  // W^{-1} = sum_{j<=internal} (-A)^j terminates at the truncation depth.
  SeriesOp A = W;
  A.add(0, scale_c(TSeries(1.0), -1.0));
  SeriesOp inv = SeriesOp::monomial(TSeries(1.0), 0);
  SeriesOp Ap = SeriesOp::monomial(TSeries(1.0), 0);
  for (int j = 1; j <= internal; ++j) {
    Ap = compose(Ap, A, -internal);
    if (j % 2)
      inv -= Ap;
    else
      inv += Ap;
  }
  inv.set_exact_floor(-internal);
  out.W = std::move(W);
  out.W_inv = std::move(inv);
  return out;
}

double dressing_defect(const DressingOperator& d, const TSeries& u) {
  SeriesOp del2 = SeriesOp::monomial(TSeries(1.0), 2);
  SeriesOp lhs = compose(compose(d.W, del2, -d.depth), d.W_inv, -d.depth);
  SeriesOp rhs = del2;
  rhs.add(0, u);
  rhs.set_exact_floor(-d.depth);
  SeriesOp diff = lhs - rhs;
  double sup = 0.0;
  for (const auto& [deg, c] : diff.coef()) {
    (void)deg;
    sup = std::max(sup, c.sup_norm());
  }
  return sup;
}

}  // namespace elastica
