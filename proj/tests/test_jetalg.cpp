#include <doctest.h>

#include <random>

#include "elastica/jetpoly.hpp"
#include "elastica/psido.hpp"

using namespace elastica;

namespace {

JetPoly u(unsigned k, unsigned p = 1) { return JetPoly::jet(k, p); }

// Small random differential polynomial; deterministic per seed.
JetPoly random_poly(std::mt19937& rng, int max_jet = 3, int terms = 4) {
  std::uniform_int_distribution<int> jet(0, max_jet);
  std::uniform_int_distribution<int> expo(1, 2);
  std::uniform_int_distribution<int> coef(-5, 5);
  JetPoly p;
  for (int t = 0; t < terms; ++t) {
    JetPoly mono(Rational(1));
    int factors = 1 + (rng() % 2);
    for (int f = 0; f < factors; ++f)
      mono *= JetPoly::jet(jet(rng), expo(rng));
    p += Rational(coef(rng)) * mono;
  }
  return p;
}

}  // namespace

TEST_CASE("total derivative is a derivation") {
  std::mt19937 rng(7101);
  for (int i = 0; i < 20; ++i) {
    JetPoly p = random_poly(rng);
    JetPoly q = random_poly(rng);
    CHECK(total_derivative(p * q) ==
          total_derivative(p) * q + p * total_derivative(q));
  }
}

TEST_CASE("total derivative on basic terms") {
  CHECK(total_derivative(u(0)) == u(1));
  CHECK(total_derivative(u(0, 2)) == Rational(2) * u(0) * u(1));
  CHECK(total_derivative(JetPoly(Rational(3))).is_zero());
  CHECK(total_derivative(u(0) * u(2)) == u(1) * u(2) + u(0) * u(3));
}

TEST_CASE("euler operator annihilates total derivatives") {
  std::mt19937 rng(7102);
  for (int i = 0; i < 20; ++i) {
    JetPoly p = random_poly(rng);
    CHECK(euler_operator(total_derivative(p)).is_zero());
  }
}

TEST_CASE("euler operator on a cubic energy density") {
  // p = u0^3 + (1/2) u1^2  ->  3 u0^2 - u2
  JetPoly p = u(0, 3) + Rational(1, 2) * u(1, 2);
  JetPoly expect = Rational(3) * u(0, 2) - u(2);
  CHECK(euler_operator(p) == expect);
}

TEST_CASE("antiderivative inverts the total derivative") {
  std::mt19937 rng(7103);
  for (int i = 0; i < 20; ++i) {
    JetPoly q = random_poly(rng);
    // Strip the constant part: D kills it, so the primitive cannot see it.
    q -= JetPoly(q.constant_term());
    CHECK(antiderivative(total_derivative(q)) == q);
  }
}

TEST_CASE("antiderivative rejects non-exact input") {
  CHECK_THROWS_AS((void)antiderivative(u(0)), NotExact);
  CHECK_THROWS_AS((void)antiderivative(u(1, 2)), NotExact);
  CHECK_THROWS_AS((void)antiderivative(JetPoly(Rational(1))), NotExact);
  CHECK(antiderivative(JetPoly()).is_zero());
  // u1^2 + u0 u2 = D(u0 u1) is exact even though u1^2 alone is not.
  CHECK(antiderivative(u(1, 2) + u(0) * u(2)) == u(0) * u(1));
}

TEST_CASE("exactness predicate") {
  CHECK(is_exact(total_derivative(u(0, 4) + u(2) * u(1))));
  CHECK_FALSE(is_exact(u(1, 2)));
  CHECK_FALSE(is_exact(JetPoly(Rational(2))));
  CHECK(is_exact(JetPoly()));
}

TEST_CASE("normalize_mod_exact canonical forms") {
  CHECK(normalize_mod_exact(u(1, 2)) == u(1, 2));
  CHECK(normalize_mod_exact(u(0) * u(2)) == -u(1, 2));
  CHECK(normalize_mod_exact(u(3)).is_zero());
  std::mt19937 rng(7104);
  for (int i = 0; i < 10; ++i) {
    JetPoly q = random_poly(rng);
    CHECK(normalize_mod_exact(total_derivative(q)).is_zero());
    // The normalization only moves p within its coset.
    JetPoly p = random_poly(rng);
    CHECK(is_exact(p - JetPoly(p.constant_term()) -
                   (normalize_mod_exact(p) -
                    JetPoly(normalize_mod_exact(p).constant_term()))));
  }
}

TEST_CASE("recursion operator reproduces the hierarchy step") {
  // Omega u1 = u3 + 6 u0 u1.
  CHECK(apply_recursion(u(1)) == u(3) + Rational(6) * u(0) * u(1));
  // Linearity over the rationals on exact inputs.
  JetPoly p = total_derivative(u(0, 2));
  JetPoly q = total_derivative(u(1) * u(0));
  CHECK(apply_recursion(Rational(2) * p + Rational(-3) * q) ==
        Rational(2) * apply_recursion(p) + Rational(-3) * apply_recursion(q));
  CHECK_THROWS_AS((void)apply_recursion(u(0, 2)), NotExact);
}

TEST_CASE("kdv hierarchy right-hand sides") {
  CHECK(kdv_rhs(1) == u(1));
  CHECK(kdv_rhs(2) == Rational(6) * u(0) * u(1) + u(3));
  CHECK(kdv_rhs(2) == total_derivative(Rational(3) * u(0, 2) + u(2)));
  JetPoly x3 = Rational(30) * u(0, 2) * u(1) + Rational(20) * u(1) * u(2) +
               Rational(10) * u(0) * u(3) + u(5);
  CHECK(kdv_rhs(3) == x3);
  for (int n = 1; n <= 5; ++n) {
    JetPoly x = kdv_rhs(n);
    CHECK(x.top_jet() == 2 * n - 1);
    CHECK(is_exact(x));
  }
}

TEST_CASE("hamiltonian densities generate the hierarchy") {
  CHECK(hamiltonian_density(0) == Rational(1, 2) * u(0));
  CHECK(hamiltonian_density(1) == Rational(1, 2) * u(0, 2));
  CHECK(hamiltonian_density(2) == u(0, 3) - Rational(1, 2) * u(1, 2));
  for (int n = 1; n <= 4; ++n) {
    JetPoly h = hamiltonian_density(n);
    CHECK(total_derivative(euler_operator(h)) == kdv_rhs(n));
  }
}

TEST_CASE("hamiltonians are in involution") {
  // The bracket {H_n, H_m} integrates Euler(h_n) * X_m; vanishing means the
  // integrand is exact.
  for (int n = 1; n <= 3; ++n) {
    JetPoly en = euler_operator(hamiltonian_density(n));
    for (int m = 1; m <= 3; ++m) CHECK(is_exact(en * kdv_rhs(m)));
  }
}

TEST_CASE("canonical text form") {
  CHECK(to_string(JetPoly()) == "0");
  CHECK(to_string(JetPoly(Rational(-1, 2))) == "-1/2");
  CHECK(to_string(kdv_rhs(1)) == "1 * u1");
  CHECK(to_string(kdv_rhs(2)) == "1 * u3 + 6 * u0 u1");
  CHECK(to_string(u(0, 3) - Rational(1, 2) * u(1, 2)) ==
        "-1/2 * u1^2 + 1 * u0^3");
}

TEST_CASE("numeric substitution") {
  std::vector<std::complex<double>> jets = {2.0, 3.0, 0.0, 5.0};
  CHECK(kdv_rhs(2).eval(jets).real() == doctest::Approx(41.0));
  std::mt19937 rng(7105);
  // eval is a ring homomorphism.
  JetPoly p = random_poly(rng);
  JetPoly q = random_poly(rng);
  std::vector<std::complex<double>> v = {0.3, -1.2, 0.7, 2.5};
  auto lhs = (p * q).eval(v);
  auto rhs = p.eval(v) * q.eval(v);
  CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
}
