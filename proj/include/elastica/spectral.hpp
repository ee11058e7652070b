#pragma once

#include <complex>
#include <vector>

namespace elastica::spectral {

using cvec = std::vector<std::complex<double>>;

// Forward transform, normalized: fft(f)[m] = (1/N) sum_j f_j e^{-2pi i j m/N},
// so the coefficients are the trigonometric interpolation coefficients.
// Plans are cached per size; safe to call from multiple threads.
cvec fft(const cvec& f);
cvec ifft(const cvec& c);

// Signed wave index for bin m of an N-point grid: 0..N/2, then negative.
int wave_index(int m, int n);

std::complex<double> mean(const cvec& f);

// Spectral derivative of the given order on a grid of the given period.
// Odd orders zero the Nyquist bin (its sign is ambiguous); even orders keep
// it.  The zero mode dies for order >= 1, so the result has exact zero mean.
cvec derivative(const cvec& f, int order, double period);

// Zero-mean primitive of the zero-mean part of f: the constant mode of the
// input is ignored, the output's constant mode is zero.
cvec primitive(const cvec& f, double period);

// Samples of f translated by delta: g_j ~ f(s_j + delta).  The Nyquist mode
// is modulated by cos so real inputs stay real.
cvec shift(const cvec& f, double delta, double period);

// Zeroes all modes with |wave index| > n/3 (the 2/3 rule for quadratic and
// cubic products).
cvec dealias(const cvec& f);

// Trigonometric interpolant through N periodic samples; eval is O(N).
class TrigInterp {
 public:
  TrigInterp() : period_(1.0) {}
  TrigInterp(const cvec& samples, double period);
  std::complex<double> operator()(double s) const;
  double period() const { return period_; }

 private:
  cvec coef_;
  double period_;
};

}  // namespace elastica::spectral
