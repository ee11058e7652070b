#include "elastica/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace elastica::spectral {

namespace {

// One cached plan pair per transform size.  Plans are created with
// FFTW_UNALIGNED so they can execute on any caller buffer via the new-array
// interface, which is thread safe; creation itself is serialized.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(n), b(n);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, flags);
  p.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, flags);
  return cache.emplace(n, p).first->second;
}

void run(fftw_plan plan, const cvec& in, cvec& out) {
  auto* pi = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* po = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, pi, po);
}

}  // namespace

cvec fft(const cvec& f) {
  int n = static_cast<int>(f.size());
  if (n == 0) throw std::invalid_argument("fft: empty input");
  cvec c(n);
  run(plans_for(n).fwd, f, c);
  double inv = 1.0 / n;
  for (auto& z : c) z *= inv;
  return c;
}

cvec ifft(const cvec& c) {
  int n = static_cast<int>(c.size());
  if (n == 0) throw std::invalid_argument("ifft: empty input");
  cvec f(n);
  run(plans_for(n).bwd, c, f);
  return f;
}

int wave_index(int m, int n) { return m <= n / 2 ? m : m - n; }

std::complex<double> mean(const cvec& f) {
  std::complex<double> s = 0.0;
  for (const auto& z : f) s += z;
  return s / static_cast<double>(f.size());
}

cvec derivative(const cvec& f, int order, double period) {
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  if (order == 0) return f;
  int n = static_cast<int>(f.size());
  cvec c = fft(f);
  double base = 2.0 * std::numbers::pi / period;
  for (int m = 0; m < n; ++m) {
    int w = wave_index(m, n);
    if (n % 2 == 0 && m == n / 2 && order % 2 == 1) {
      c[m] = 0.0;
      continue;
    }
    std::complex<double> ixi(0.0, base * w);
    std::complex<double> mult = 1.0;
    for (int k = 0; k < order; ++k) mult *= ixi;
    c[m] *= mult;
  }
  return ifft(c);
}

cvec primitive(const cvec& f, double period) {
  int n = static_cast<int>(f.size());
  cvec c = fft(f);
  double base = 2.0 * std::numbers::pi / period;
  c[0] = 0.0;
  for (int m = 1; m < n; ++m) {
    int w = wave_index(m, n);
    c[m] /= std::complex<double>(0.0, base * w);
  }
  return ifft(c);
}

cvec shift(const cvec& f, double delta, double period) {
  int n = static_cast<int>(f.size());
  cvec c = fft(f);
  double base = 2.0 * std::numbers::pi / period;
  for (int m = 0; m < n; ++m) {
    int w = wave_index(m, n);
    double phase = base * w * delta;
    if (n % 2 == 0 && m == n / 2)
      c[m] *= std::cos(phase);
    else
      c[m] *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return ifft(c);
}

cvec dealias(const cvec& f) {
  int n = static_cast<int>(f.size());
  cvec c = fft(f);
  for (int m = 0; m < n; ++m)
    if (std::abs(wave_index(m, n)) > n / 3) c[m] = 0.0;
  return ifft(c);
}

TrigInterp::TrigInterp(const cvec& samples, double period)
    : coef_(fft(samples)), period_(period) {}

std::complex<double> TrigInterp::operator()(double s) const {
  int n = static_cast<int>(coef_.size());
  double base = 2.0 * std::numbers::pi / period_;
  std::complex<double> acc = 0.0;
  for (int m = 0; m < n; ++m) {
    int w = wave_index(m, n);
    double phase = base * w * s;
    if (n % 2 == 0 && m == n / 2)
      acc += coef_[m] * std::cos(phase);
    else
      acc += coef_[m] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace elastica::spectral
