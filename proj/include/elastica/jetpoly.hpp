#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastica/rational.hpp"

namespace elastica {

// Thrown by antiderivative() when the argument is not a total derivative.
struct NotExact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monomial in the jet variables u0, u1, u2, ...  exponents[k] is the power of
// u_k; the vector carries no trailing zeros, so the representation is unique
// and the default lexicographic vector order is a canonical term order.
using JetMonomial = std::vector<unsigned>;

// Differential polynomial in the jets of a single dependent variable u with
// exact rational coefficients.  Terms are kept in canonical sorted order and
// zero coefficients are never stored.
class JetPoly {
 public:
  JetPoly() = default;
  explicit JetPoly(const Rational& c);

  // u_k^power
  static JetPoly jet(unsigned k, unsigned power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;

  // Highest jet index appearing in any term; -1 for constants and zero.
  int top_jet() const;

  // Total polynomial degree in the jets (max over terms), 0 for constants.
  unsigned degree() const;

  const std::map<JetMonomial, Rational>& terms() const { return terms_; }

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  JetPoly& operator*=(const JetPoly& o);
  JetPoly& operator*=(const Rational& c);

  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(JetPoly a, const JetPoly& b) { return a *= b; }
  friend JetPoly operator*(JetPoly a, const Rational& c) { return a *= c; }
  friend JetPoly operator*(const Rational& c, JetPoly a) { return a *= c; }
  friend JetPoly operator-(JetPoly a) { return a *= Rational(-1); }
  friend bool operator==(const JetPoly& a, const JetPoly& b) {
    return a.terms_ == b.terms_;
  }

  void add_term(const JetMonomial& m, const Rational& c);

  // Numeric substitution: jets[k] supplies the value of u_k (missing entries
  // are an error).  Used by numeric cross-checks against the sample-based
  // modules.
  std::complex<double> eval(std::span<const std::complex<double>> jets) const;

 private:
  std::map<JetMonomial, Rational> terms_;
};

// d/du_k
JetPoly partial(const JetPoly& p, unsigned k);

// Total derivative D = sum_k u_{k+1} d/du_k.
JetPoly total_derivative(const JetPoly& p);

// ADL hook used by the generic operator algebra.
inline JetPoly derivative(const JetPoly& p) { return total_derivative(p); }

// Iterated total derivative.
JetPoly total_derivative(JetPoly p, unsigned order);

// Variational derivative sum_m (-D)^m d/du_m.  Kernel = im D + constants.
JetPoly euler_operator(const JetPoly& p);

// Exact formal antiderivative: the unique q with D q = p and no additive
// constant.  Throws NotExact when p is not a total derivative.
JetPoly antiderivative(const JetPoly& p);

// Canonical representative of p modulo im D: integrate by parts until every
// term's highest jet appears with exponent >= 2 (pure u0-polynomials and
// constants are already reduced).  p - normalize_mod_exact(p) is exact.
JetPoly normalize_mod_exact(const JetPoly& p);

// True iff p = D q for some q (equivalently Euler(p) = 0 with no constant).
bool is_exact(const JetPoly& p);

// Recursion operator applied to p:
//   Omega p = D^2 p + 4 u0 p + 2 u1 D^{-1} p.
// The first-order term acts by composition (2 del u del^{-1}), which after
// the Leibniz expansion contributes 2 u0 D p + 2 u1 D^{-1} p on top of the
// plain multiplication 2 u0 p; together with del^2 + 2 u0 this collapses to
// the closed form above.  Requires p in the image of D (throws NotExact).
JetPoly apply_recursion(const JetPoly& p);

// n-th symmetry X_n = Omega^{n-1} u1 of u_t + 6 u u_s + u_sss = 0; n >= 1.
// X_1 = u1, X_2 = 6 u0 u1 + u3, X_3 = 30 u0^2 u1 + 20 u1 u2 + 10 u0 u3 + u5.
JetPoly kdv_rhs(int n);

// Canonical text form: terms in canonical order, each "c * u0^a u1^b ...";
// the constant monomial renders as just "c".  Zero renders as "0".
std::string to_string(const JetPoly& p);

}  // namespace elastica
