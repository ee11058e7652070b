#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "elastica/rational.hpp"

namespace elastica {

// Truncated power series in the first hierarchy time t1, with complex double
// coefficients.  `valid` counts the trusted orders: coefficients of t^0 ..
// t^valid are exact up to roundoff; anything beyond is unknown.  Stored
// coefficients past the end of `c` are exact zeros (within the valid window),
// so polynomials carry a large validity cheaply.  Differentiation lowers the
// validity by one, integration raises it by one; products and sums keep the
// minimum, which is the standard truncation-loss bookkeeping.
class TSeries {
 public:
  static constexpr int kMaxValid = 1 << 20;

  TSeries() : valid_(kMaxValid) {}
  explicit TSeries(std::complex<double> c0) : valid_(kMaxValid) {
    if (c0 != 0.0) c_.push_back(c0);
  }
  TSeries(std::vector<std::complex<double>> coeffs, int valid)
      : c_(std::move(coeffs)), valid_(valid) {
    if (valid_ < 0) throw std::invalid_argument("TSeries: negative validity");
    if (static_cast<int>(c_.size()) > valid_ + 1) c_.resize(valid_ + 1);
    shrink();
  }

  static TSeries polynomial(std::vector<std::complex<double>> coeffs) {
    return TSeries(std::move(coeffs), kMaxValid);
  }

  int valid() const { return valid_; }

  std::complex<double> at(int k) const {
    if (k < 0 || k > valid_)
      throw std::out_of_range("TSeries: coefficient beyond validity");
    return k < static_cast<int>(c_.size()) ? c_[k] : 0.0;
  }

  const std::vector<std::complex<double>>& coeffs() const { return c_; }
  bool is_exact_zero() const { return c_.empty(); }

  TSeries& operator+=(const TSeries& o) {
    valid_ = std::min(valid_, o.valid_);
    if (static_cast<int>(c_.size()) < std::min<int>(o.c_.size(), valid_ + 1))
      c_.resize(std::min<int>(o.c_.size(), valid_ + 1), 0.0);
    if (static_cast<int>(c_.size()) > valid_ + 1) c_.resize(valid_ + 1);
    for (int k = 0; k < static_cast<int>(c_.size()); ++k)
      if (k < static_cast<int>(o.c_.size())) c_[k] += o.c_[k];
    shrink();
    return *this;
  }

  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }

  friend TSeries operator-(const TSeries& a, const TSeries& b) {
    TSeries mb = scale_c(b, -1.0);
    TSeries r = a;
    r += mb;
    return r;
  }

  friend TSeries operator*(const TSeries& a, const TSeries& b) {
    int valid = std::min(a.valid_, b.valid_);
    if (a.c_.empty() || b.c_.empty()) {
      TSeries z;
      z.valid_ = valid;
      return z;
    }
    int n = std::min<int>(valid + 1,
                          static_cast<int>(a.c_.size() + b.c_.size()) - 1);
    std::vector<std::complex<double>> out(std::max(n, 0), 0.0);
    for (int i = 0; i < static_cast<int>(a.c_.size()); ++i) {
      if (a.c_[i] == 0.0) continue;
      int jmax = std::min<int>(b.c_.size(), n - i);
      for (int j = 0; j < jmax; ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return TSeries(std::move(out), valid);
  }

  friend TSeries derivative(const TSeries& a) {
    int valid = a.valid_ == kMaxValid ? kMaxValid : std::max(a.valid_ - 1, 0);
    std::vector<std::complex<double>> out;
    if (a.c_.size() > 1) {
      out.resize(a.c_.size() - 1);
      for (size_t k = 1; k < a.c_.size(); ++k)
        out[k - 1] = a.c_[k] * static_cast<double>(k);
    }
    return TSeries(std::move(out), valid);
  }

  friend TSeries antiderivative(const TSeries& a) {
    int valid =
        a.valid_ >= kMaxValid - 1 ? kMaxValid : a.valid_ + 1;
    std::vector<std::complex<double>> out;
    if (!a.c_.empty()) {
      out.resize(a.c_.size() + 1, 0.0);
      for (size_t k = 0; k < a.c_.size(); ++k)
        out[k + 1] = a.c_[k] / static_cast<double>(k + 1);
    }
    return TSeries(std::move(out), valid);
  }

  friend TSeries scale(const TSeries& a, const Rational& r) {
    return scale_c(a, to_double(r));
  }

  friend TSeries scale_c(const TSeries& a, std::complex<double> z) {
    TSeries out = a;
    if (z == 0.0) {
      out.c_.clear();
      return out;
    }
    for (auto& c : out.c_) c *= z;
    return out;
  }

  friend bool is_zero(const TSeries& a) { return a.c_.empty(); }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  void shrink() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }

  std::vector<std::complex<double>> c_;
  int valid_;
};

}  // namespace elastica
