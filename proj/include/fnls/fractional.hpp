#pragma once

#include "fnls/grid.hpp"

namespace fnls {

// Dispersion strength for the fractional Laplacian (-d^2/dx^2)^alpha.
// Valid range is the open interval (1/2, 1); the classical endpoint
// alpha = 1 is accepted only when comparison_mode is set.
class Alpha {
 public:
  explicit Alpha(double value, bool comparison_mode = false);
  double value() const { return value_; }
  bool comparison_mode() const { return comparison_mode_; }

 private:
  double value_ = 0.75;
  bool comparison_mode_ = false;
};

// Symbol |n|^(2 alpha) of the fractional Laplacian on integer frequencies.
double symbol_laplacian(long long n, Alpha alpha);

// |nabla|^alpha: c_k -> |k|^alpha c_k.
SpectralField apply_frac_derivative(const SpectralField& field, Alpha alpha);

// Free/gauged linear flow: c_k -> exp(i t |k|^(2 alpha)) exp(-i gauge_P t) c_k.
// gauge_P = 0 disables the constant-phase gauge.
SpectralField propagate_linear(const SpectralField& field, double t, Alpha alpha,
                               double gauge_P = 0.0);

struct Projection {
  enum class Mode { low, high };
  int cutoff = 0;
  Mode mode = Mode::low;
};

// Sharp Fourier cutoff: `low` keeps |n| <= cutoff, `high` keeps |n| > cutoff.
// The cutoff must be resolved: 0 <= cutoff < M/2.
SpectralField project(const SpectralField& field, Projection p);

// Gap of the four-point dispersion relation,
//   g(j,k,n) = | |n+k|^2a - |n+j+k|^2a + |n+j|^2a - |n|^2a |,  2a = 2*alpha.
// Grouped as (|n+k|^2a + |n+j|^2a) - (|n+j+k|^2a + |n|^2a) so the value is
// exactly symmetric under j <-> k. Evaluated in 80-bit precision when any
// argument exceeds 1e4 in magnitude, where the four terms cancel
// catastrophically in double.
double freq_quadruple_gap(long long j, long long k, long long n, Alpha alpha);

}  // namespace fnls
