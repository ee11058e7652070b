#include "elastica/jetpoly.hpp"

#include <algorithm>
#include <sstream>

namespace elastica {

namespace {

void trim(JetMonomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

JetPoly::JetPoly(const Rational& c) {
  if (c != 0) terms_[JetMonomial{}] = c;
}

JetPoly JetPoly::jet(unsigned k, unsigned power) {
  JetPoly p;
  if (power == 0) return JetPoly(Rational(1));
  JetMonomial m(k + 1, 0);
  m[k] = power;
  p.terms_[m] = 1;
  return p;
}

bool JetPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational JetPoly::constant_term() const {
  auto it = terms_.find(JetMonomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int JetPoly::top_jet() const {
  int top = -1;
  for (const auto& [m, c] : terms_)
    top = std::max(top, static_cast<int>(m.size()) - 1);
  return top;
}

unsigned JetPoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned t = 0;
    for (unsigned e : m) t += e;
    d = std::max(d, t);
  }
  return d;
}

void JetPoly::add_term(const JetMonomial& mono, const Rational& c) {
  if (c == 0) return;
  JetMonomial m = mono;
  trim(m);
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

JetPoly& JetPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

JetPoly& JetPoly::operator*=(const JetPoly& o) {
  std::map<JetMonomial, Rational> out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      JetMonomial m(std::max(ma.size(), mb.size()), 0);
      for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      Rational c = ca * cb;
      auto it = out.find(m);
      if (it == out.end()) {
        out.emplace(std::move(m), std::move(c));
      } else {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  terms_ = std::move(out);
  return *this;
}

std::complex<double> JetPoly::eval(
    std::span<const std::complex<double>> jets) const {
  std::complex<double> acc = 0.0;
  for (const auto& [m, c] : terms_) {
    if (m.size() > jets.size())
      throw std::invalid_argument("JetPoly::eval: not enough jet values");
    std::complex<double> t = to_double(c);
    for (size_t k = 0; k < m.size(); ++k)
      for (unsigned e = 0; e < m[k]; ++e) t *= jets[k];
    acc += t;
  }
  return acc;
}

JetPoly partial(const JetPoly& p, unsigned k) {
  JetPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.size() <= k || m[k] == 0) continue;
    JetMonomial d = m;
    Rational cc = c * Rational(m[k]);
    d[k] -= 1;
    out.add_term(d, cc);
  }
  return out;
}

JetPoly total_derivative(const JetPoly& p) {
  JetPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      JetMonomial d = m;
      d[k] -= 1;
      if (d.size() < k + 2) d.resize(k + 2, 0);
      d[k + 1] += 1;
      out.add_term(d, c * Rational(m[k]));
    }
  }
  return out;
}

JetPoly total_derivative(JetPoly p, unsigned order) {
  for (unsigned i = 0; i < order; ++i) p = total_derivative(p);
  return p;
}

JetPoly euler_operator(const JetPoly& p) {
  JetPoly out;
  int top = p.top_jet();
  for (int m = 0; m <= top; ++m) {
    JetPoly term = total_derivative(partial(p, m), m);
    if (m % 2)
      out -= term;
    else
      out += term;
  }
  return out;
}

namespace {

// Polynomial antiderivative in the single variable u_k (power rule per term).
JetPoly integrate_in_jet(const JetPoly& p, unsigned k) {
  JetPoly out;
  for (const auto& [m, c] : p.terms()) {
    JetMonomial d = m;
    if (d.size() < k + 1) d.resize(k + 1, 0);
    d[k] += 1;
    out.add_term(d, c / Rational(d[k]));
  }
  return out;
}

// Terms of p that are exactly linear in u_m, returned as the coefficient
// polynomial (divided by u_m); `rest` receives everything else.
JetPoly linear_top_coefficient(const JetPoly& p, unsigned m, JetPoly* rest) {
  JetPoly lin;
  *rest = JetPoly();
  for (const auto& [mono, c] : p.terms()) {
    if (mono.size() == m + 1 && mono[m] == 1) {
      JetMonomial q = mono;
      q[m] = 0;
      lin.add_term(q, c);
    } else {
      rest->add_term(mono, c);
    }
  }
  return lin;
}

}  // namespace

JetPoly antiderivative(const JetPoly& p) {
  JetPoly q;
  JetPoly r = p;
  while (!r.is_zero()) {
    int m = r.top_jet();
    if (m < 1) throw NotExact("antiderivative: residue in u0/constants");
    // In D q with top(q) = m-1 the jet u_m appears exactly linearly, with
    // coefficient dq/du_{m-1}; any other occurrence of u_m is an obstruction.
    JetPoly rest;
    JetPoly lin = linear_top_coefficient(r, m, &rest);
    if (rest.top_jet() == m)
      throw NotExact("antiderivative: top jet appears nonlinearly");
    if (lin.top_jet() >= m)
      throw NotExact("antiderivative: malformed linear coefficient");
    JetPoly q1 = integrate_in_jet(lin, m - 1);
    q += q1;
    r -= total_derivative(q1);
  }
  return q;
}

JetPoly normalize_mod_exact(const JetPoly& p) {
  JetPoly r = p;
  for (;;) {
    // Highest jet that appears exactly linearly in some term.
    int m_lin = -1;
    for (const auto& [mono, c] : r.terms()) {
      int top = static_cast<int>(mono.size()) - 1;
      if (top >= 1 && mono[top] == 1) m_lin = std::max(m_lin, top);
    }
    if (m_lin < 1) return r;
    JetPoly rest;
    JetPoly lin = linear_top_coefficient(r, m_lin, &rest);
    JetPoly q1 = integrate_in_jet(lin, m_lin - 1);
    r -= total_derivative(q1);
  }
}

bool is_exact(const JetPoly& p) {
  if (p.constant_term() != 0) return false;
  return euler_operator(p).is_zero();
}

JetPoly apply_recursion(const JetPoly& p) {
  JetPoly anti = antiderivative(p);  // throws NotExact outside im D
  JetPoly out = total_derivative(p, 2);
  out += Rational(4) * JetPoly::jet(0) * p;
  out += Rational(2) * JetPoly::jet(1) * anti;
  return out;
}

JetPoly kdv_rhs(int n) {
  if (n < 1) throw std::invalid_argument("kdv_rhs: n must be >= 1");
  JetPoly x = JetPoly::jet(1);
  for (int i = 1; i < n; ++i) x = apply_recursion(x);
  return x;
}

std::string to_string(const JetPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    bool any = false;
    for (size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      os << (any ? " " : " * ") << "u" << k;
      if (m[k] > 1) os << "^" << m[k];
      any = true;
    }
  }
  return os.str();
}

}  // namespace elastica
