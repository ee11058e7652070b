#pragma once

#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "elastica/jetpoly.hpp"
#include "elastica/rational.hpp"

namespace elastica {

// Requesting a coefficient below the exactness floor of a truncated operator.
struct DepthUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A commutator that should collapse to a multiplication operator did not.
struct NotMultiplication : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const JetPoly& p) { return p.is_zero(); }
inline JetPoly scale(const JetPoly& p, const Rational& c) { return p * c; }

// Sentinel floor for operators whose stored coefficients are exact at every
// degree (finite differential operators, truncations treated as polynomials).
inline constexpr int kExactEverywhere = std::numeric_limits<int>::min() / 4;

// Truncated pseudo-differential operator sum_k a_k del^k with coefficients in
// a differential ring C (jet polynomials for the symbolic algebra, truncated
// power series for the dressing construction).
//
// Truncation bookkeeping: `exact_floor` is the lowest degree whose stored
// coefficient is guaranteed exact.  Degrees below it were either never
// computed or may have lost contributions to composition truncation; reading
// them throws DepthUnderflow.  Composition propagates the floor by
//   exact(A o B) = max(exact(A) + top(B), exact(B) + top(A), requested)
// because a discarded coefficient a_i (i < exact(A)) multiplies b_j
// (j <= top(B)) into degrees <= i + j < exact(A) + top(B), and symmetrically;
// the extended Leibniz tail only moves contributions further down.
template <class C>
class PsiDO {
 public:
  PsiDO() : exact_floor_(kExactEverywhere) {}

  static PsiDO monomial(C a, int degree,
                        int exact_floor = kExactEverywhere) {
    PsiDO p;
    p.exact_floor_ = exact_floor;
    if (!is_zero(a)) p.coef_.emplace(degree, std::move(a));
    return p;
  }

  const std::map<int, C, std::greater<int>>& coef() const { return coef_; }
  int exact_floor() const { return exact_floor_; }

  // Highest degree with a nonzero coefficient; kExactEverywhere when empty.
  int top() const {
    return coef_.empty() ? kExactEverywhere : coef_.begin()->first;
  }

  bool stored_zero() const { return coef_.empty(); }

  const C& at(int degree) const {
    if (degree < exact_floor_)
      throw DepthUnderflow("PsiDO: coefficient below exactness floor");
    static const C zero{};
    auto it = coef_.find(degree);
    return it == coef_.end() ? zero : it->second;
  }

  void set(int degree, C a) {
    if (is_zero(a))
      coef_.erase(degree);
    else
      coef_[degree] = std::move(a);
  }

  void add(int degree, const C& a) {
    if (is_zero(a)) return;
    auto it = coef_.find(degree);
    if (it == coef_.end()) {
      coef_.emplace(degree, a);
    } else {
      it->second += a;
      if (is_zero(it->second)) coef_.erase(it);
    }
  }

  void set_exact_floor(int f) { exact_floor_ = f; }

  // Discards stored coefficients below `f` and raises the floor.
  void truncate(int f) {
    exact_floor_ = std::max(exact_floor_, f);
    for (auto it = coef_.begin(); it != coef_.end();) {
      if (it->first < exact_floor_)
        it = coef_.erase(it);
      else
        ++it;
    }
  }

  PsiDO& operator+=(const PsiDO& o) {
    exact_floor_ = std::max(exact_floor_, o.exact_floor_);
    for (const auto& [d, a] : o.coef_)
      if (d >= exact_floor_) add(d, a);
    truncate(exact_floor_);
    return *this;
  }
  PsiDO& operator-=(const PsiDO& o) {
    exact_floor_ = std::max(exact_floor_, o.exact_floor_);
    for (const auto& [d, a] : o.coef_)
      if (d >= exact_floor_) add(d, scale(a, Rational(-1)));
    truncate(exact_floor_);
    return *this;
  }
  friend PsiDO operator+(PsiDO a, const PsiDO& b) { return a += b; }
  friend PsiDO operator-(PsiDO a, const PsiDO& b) { return a -= b; }

  friend PsiDO operator*(const Rational& c, const PsiDO& p) {
    PsiDO out;
    out.exact_floor_ = p.exact_floor_;
    for (const auto& [d, a] : p.coef_) out.set(d, scale(a, c));
    return out;
  }

 private:
  std::map<int, C, std::greater<int>> coef_;
  int exact_floor_;
};

// A o B via the extended Leibniz rule
//   del^n a = sum_{r>=0} C(n, r) (D^r a) del^{n-r},
// with generalized binomials for negative n (infinite tail, truncated at
// `want_floor`).  See the class comment for the exactness floor of the
// result.
template <class C>
PsiDO<C> compose(const PsiDO<C>& A, const PsiDO<C>& B,
                 int want_floor = kExactEverywhere) {
  int bound = kExactEverywhere;
  if (A.exact_floor() != kExactEverywhere)
    bound = std::max(bound, A.exact_floor() + B.top());
  if (B.exact_floor() != kExactEverywhere)
    bound = std::max(bound, B.exact_floor() + A.top());
  int floor = std::max(bound, want_floor);
  if (floor == kExactEverywhere && !A.stored_zero() && !B.stored_zero()) {
    // Both operands exact: infinite expansions still need a truncation
    // depth; composing two differential operators is fine.
    bool neg = A.coef().rbegin()->first < 0;
    if (neg)
      throw std::invalid_argument(
          "compose: unbounded expansion needs an explicit truncation floor");
  }

  PsiDO<C> out;
  out.set_exact_floor(floor);
  for (const auto& [i, a] : A.coef()) {
    for (const auto& [j, b] : B.coef()) {
      C db = b;
      for (int r = 0;; ++r) {
        int deg = i + j - r;
        if (deg < floor) break;
        if (i >= 0 && r > i) break;
        if (r > 0) db = derivative(db);
        if (is_zero(db)) {
          // Coefficient differentiates to zero: all further terms vanish.
          break;
        }
        Rational binom_ir = binomial(i, static_cast<unsigned long>(r));
        if (binom_ir != 0) out.add(deg, a * scale(db, binom_ir));
      }
    }
  }
  out.truncate(floor);
  return out;
}

template <class C>
PsiDO<C> commutator(const PsiDO<C>& A, const PsiDO<C>& B,
                    int want_floor = kExactEverywhere) {
  return compose(A, B, want_floor) - compose(B, A, want_floor);
}

// Projection onto degrees >= 0.  The result is a finite differential
// operator, exact at every degree.
template <class C>
PsiDO<C> plus_part(const PsiDO<C>& A) {
  if (A.exact_floor() > 0)
    throw DepthUnderflow("plus_part: operator not exact down to degree 0");
  PsiDO<C> out;
  for (const auto& [d, a] : A.coef())
    if (d >= 0) out.set(d, a);
  return out;
}

// Projection onto degrees < 0; keeps the argument's exactness floor.
template <class C>
PsiDO<C> minus_part(const PsiDO<C>& A) {
  PsiDO<C> out;
  out.set_exact_floor(A.exact_floor());
  for (const auto& [d, a] : A.coef())
    if (d < 0) out.set(d, a);
  return out;
}

// Coefficient of del^{-1}.
template <class C>
C residue(const PsiDO<C>& A) {
  if (A.exact_floor() > -1)
    throw DepthUnderflow("residue: operator not exact down to degree -1");
  return A.at(-1);
}

template <class C, class Fmt>
std::string to_text(const PsiDO<C>& A, Fmt&& fmt) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, a] : A.coef()) {
    if (!first) os << "\n";
    first = false;
    os << "(" << fmt(a) << ") * del^" << d;
  }
  if (first) os << "0";
  return os.str();
}

inline std::string to_text(const PsiDO<JetPoly>& A) {
  return to_text(A, [](const JetPoly& p) { return to_string(p); });
}

// --- KdV Lax algebra with jet-polynomial coefficients ---------------------

using JetOp = PsiDO<JetPoly>;

// L = del^2 + u.
JetOp lax_operator(const JetPoly& u);

// S = del + sum_{k>=0} s_k del^{-k} with S o S = L, solved degree by degree;
// the triangular structure makes every retained coefficient exact, so the
// result has exact_floor = -depth.
JetOp sqrt_L(const JetPoly& u, int depth);

// (L^{1/2})^m for odd m >= 1, exact down to degree -depth (the internal
// square root is deepened by m-1 to absorb the composition loss).
JetOp frac_power(const JetPoly& u, int m, int depth);

// [2^{2(n-1)} (L^{(2n-1)/2})_+, L], verified to collapse to a multiplication
// operator (throws NotMultiplication otherwise).  Equals kdv_rhs(n).
JetPoly lax_bracket(const JetPoly& u, int n);

// 4^{n-1} res L^{(2n-1)/2}; satisfies D hbar_n = Omega D hbar_{n-1} with
// hbar_1 = u/2.
JetPoly residue_hamiltonian(const JetPoly& u, int n);

// Density h_n with D(Euler(h_n)) = X_n, reduced by normalize_mod_exact:
// h_0 = u/2, h_1 = u^2/2, h_2 = u^3 - u1^2/2, higher n from residues of
// odd powers of L^{1/2}.
JetPoly hamiltonian_density(int n);

}  // namespace elastica
