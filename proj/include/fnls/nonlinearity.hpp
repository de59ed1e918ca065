#pragma once

#include "fnls/grid.hpp"

namespace fnls {

// `strict` evaluates products on a 2x zero-padded grid, which is exact for a
// cubic on the retained band; `none` multiplies on the bare collocation grid
// and exists to demonstrate aliasing corruption.
enum class Dealias { strict, none };

// |u|^2 u restricted to the band of u's grid.
SpectralField cubic(const SpectralField& field, Dealias dealias = Dealias::strict);

// Literal triple convolution sum, O(M^3). Guarded to M <= 256.
SpectralField cubic_oracle(const SpectralField& field);

// Resonant constant P = (1/pi) ||u||_{L^2}^2 = 2 sum_k |c_k|^2.
double resonant_constant(const SpectralField& field);

// Splitting of the cubic on the Fourier side:
//   (|u|^2 u)^(k) = P u^(k) + rho^(k) + R^(k),
//   rho^(k) = -|u^(k)|^2 u^(k),
//   R^(k)   = sum over k1 != k, k2 != k1 of u^(k1) conj(u^(k2)) u^(k-k1+k2).
struct ResonantParts {
  double P = 0.0;
  SpectralField rho;
  SpectralField R;
};

// Fast path: R = cubic(u) - P u - rho with the dealiased cubic.
ResonantParts resonant_decompose(const SpectralField& field);

// Oracle path: R by the literal restricted double sum. Guarded to M <= 256.
ResonantParts resonant_decompose_oracle(const SpectralField& field);

// Trilinear version of the splitting (no P piece; the caller reconstitutes
// it). rho^(k) = -u^(k) conj(v^(k)) w^(k); R^ the restricted sum. Reduces to
// the parts of resonant_decompose when u = v = w.
struct MultilinearParts {
  SpectralField rho;
  SpectralField R;
};
MultilinearParts resonant_decompose_multilinear(const SpectralField& u, const SpectralField& v,
                                                const SpectralField& w);

// ||rho(u)||_{H^{s+c}} by the closed form sqrt(sum |u^(k)|^6 <k>^{2s+2c}),
// cross-checked against the generic norm of the assembled rho field.
// Requires 0 <= c <= 2s, the window in which this norm is bounded by
// ||u||_{H^s}^3.
double rho_sobolev_norm(const SpectralField& field, double s, double c);

}  // namespace fnls
