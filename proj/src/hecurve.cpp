#include "elastica/hecurve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace elastica {

std::complex<double> HECurve::h(std::complex<double> x) const {
  std::complex<double> v = 0.0;
  for (int k = static_cast<int>(lambda.size()) - 1; k >= 0; --k)
    v = v * x + lambda[k];
  return v;
}

double HECurve::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < branch_points.size(); ++i)
    for (size_t j = i + 1; j < branch_points.size(); ++j)
      gap = std::min(gap, std::abs(branch_points[i] - branch_points[j]));
  return gap;
}

double HECurve::scale() const {
  double s = 1.0;
  for (const auto& c : branch_points) s = std::max(s, std::abs(c));
  return s;
}

HECurve make_curve(int genus,
                   const std::vector<std::complex<double>>& branch_points,
                   double degeneracy_tol) {
  if (genus < 1) throw DegenerateCurve("make_curve: genus must be >= 1");
  const size_t m = 2 * static_cast<size_t>(genus) + 1;
  if (branch_points.size() != m)
    throw DegenerateCurve("make_curve: expected " + std::to_string(m) +
                          " branch points, got " +
                          std::to_string(branch_points.size()));
  HECurve c;
  c.genus = genus;
  c.branch_points = branch_points;
  if (c.min_gap() <= degeneracy_tol * c.scale())
    throw DegenerateCurve("make_curve: branch points closer than " +
                          std::to_string(degeneracy_tol) + " * scale");
  // lambda = elementary-symmetric expansion of prod (x - c_j), built by
  // multiplying the monic partial product by (x - root) one root at a time.
  c.lambda.assign(m + 1, 0.0);
  c.lambda[0] = 1.0;
  size_t deg = 0;
  for (const auto& root : branch_points) {
    c.lambda[deg + 1] = c.lambda[deg];
    for (size_t k = deg; k >= 1; --k)
      c.lambda[k] = c.lambda[k - 1] - root * c.lambda[k];
    c.lambda[0] *= -root;
    ++deg;
  }
  return c;
}

DifferentialBasis differentials(const HECurve& curve) {
  const int g = curve.genus;
  DifferentialBasis b;
  b.omega_num.resize(g);
  b.eta_num.resize(g);
  for (int i = 1; i <= g; ++i) {
    b.omega_num[i - 1].assign(i, 0.0);
    b.omega_num[i - 1][i - 1] = 1.0;  // x^{i-1}
  }
  for (int j = 1; j <= g; ++j) {
    auto& num = b.eta_num[j - 1];
    num.assign(2 * g - j + 1, 0.0);
    for (int k = j; k <= 2 * g - j; ++k)
      num[k] = static_cast<double>(k + 1 - j) * curve.lambda[k + 1 + j];
  }
  return b;
}

std::string curve_to_json(const HECurve& curve) {
  nlohmann::json j;
  j["genus"] = curve.genus;
  auto& pts = j["branch_points"];
  pts = nlohmann::json::array();
  for (const auto& c : curve.branch_points)
    pts.push_back({c.real(), c.imag()});
  return j.dump(2);
}

HECurve curve_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const int genus = j.at("genus").get<int>();
  std::vector<std::complex<double>> pts;
  for (const auto& p : j.at("branch_points"))
    pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return make_curve(genus, pts);
}

}  // namespace elastica
