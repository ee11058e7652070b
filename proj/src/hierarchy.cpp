#include "elastica/psido.hpp"

namespace elastica {

JetOp lax_operator(const JetPoly& u) {
  JetOp L = JetOp::monomial(JetPoly(Rational(1)), 2);
  L.add(0, u);
  return L;
}

JetOp sqrt_L(const JetPoly& u, int depth) {
  if (depth < 0) throw std::invalid_argument("sqrt_L: depth must be >= 0");
  JetOp L = lax_operator(u);
  // S accumulates del + s_0 + s_1 del^{-1} + ...; at step k the coefficient
  // of del^{1-k} in L - S o S is exactly 2 s_k (unknowns below k cannot reach
  // that degree), so the system is triangular and every s_k is exact.
  JetOp S = JetOp::monomial(JetPoly(Rational(1)), 1);
  for (int k = 0; k <= depth; ++k) {
    JetOp R = L - compose(S, S, -k);
    JetPoly sk = scale(R.at(1 - k), Rational(1, 2));
    if (!sk.is_zero()) S.add(-k, sk);
  }
  S.set_exact_floor(-depth);
  S.truncate(-depth);
  return S;
}

JetOp frac_power(const JetPoly& u, int m, int depth) {
  if (m < 1 || m % 2 == 0)
    throw std::invalid_argument("frac_power: m must be odd and >= 1");
  if (depth < 0)
    throw std::invalid_argument("frac_power: depth must be >= 0");
  JetOp S = sqrt_L(u, depth + m - 1);
  // Each composition with S costs one degree of exactness (floor + top(S)),
  // so request the full depth of S and let the floor rule rise by one per
  // step: after m-1 steps the floor lands exactly at -depth.
  JetOp P = S;
  for (int i = 1; i < m; ++i) P = compose(P, S, -(depth + m - 1));
  P.truncate(-depth);
  return P;
}

JetPoly lax_bracket(const JetPoly& u, int n) {
  if (n < 1) throw std::invalid_argument("lax_bracket: n must be >= 1");
  JetOp P = pow2(2 * (n - 1)) * plus_part(frac_power(u, 2 * n - 1, 2));
  JetOp B = commutator(P, lax_operator(u));
  for (const auto& [d, a] : B.coef()) {
    if (d >= 1 && !a.is_zero())
      throw NotMultiplication(
          "lax_bracket: commutator has a nonzero del^" + std::to_string(d) +
          " coefficient");
    if (d <= -1 && !a.is_zero())
      throw NotMultiplication("lax_bracket: commutator has negative degrees");
  }
  return B.at(0);
}

JetPoly residue_hamiltonian(const JetPoly& u, int n) {
  if (n < 1)
    throw std::invalid_argument("residue_hamiltonian: n must be >= 1");
  return scale(residue(frac_power(u, 2 * n - 1, 3)), pow2(2 * (n - 1)));
}

JetPoly hamiltonian_density(int n) {
  if (n < 0)
    throw std::invalid_argument("hamiltonian_density: n must be >= 0");
  JetPoly u = JetPoly::jet(0);
  if (n == 0) return scale(u, Rational(1, 2));
  Rational c = pow2(2 * n) / Rational(2 * n + 1);
  JetPoly r = residue(frac_power(u, 2 * n + 1, 3));
  return normalize_mod_exact(scale(r, c));
}

}  // namespace elastica
