#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "fnls/grid.hpp"

namespace fnls {

// Japanese bracket <x> = (1 + x^2)^(1/2) and its powers.
inline double jap(double x) { return std::sqrt(1.0 + x * x); }
inline double jap_pow(double x, double e) { return std::pow(1.0 + x * x, 0.5 * e); }

struct NormSpec {
  enum class Kind { sobolev, lebesgue2, lebesgue4, lebesgue_inf };
  Kind kind = Kind::lebesgue2;
  double s = 0.0;

  static NormSpec sobolev(double s) { return {Kind::sobolev, s}; }
  static NormSpec l2() { return {Kind::lebesgue2, 0.0}; }
  static NormSpec l4() { return {Kind::lebesgue4, 0.0}; }
  static NormSpec linf() { return {Kind::lebesgue_inf, 0.0}; }

  std::string label() const;
  bool operator==(const NormSpec&) const = default;
};

// H^s uses the unweighted coefficient sum sqrt(sum <k>^{2s} |c_k|^2); the
// Lebesgue norms carry the 2*pi volume factor (L^2 via Plancherel, L^4 by
// quadrature on a 2x zero-padded grid, L^inf as the max over the padded
// nodes).
double norm(const SpectralField& field, NormSpec spec);

// Deterministic rough data: c_k = <k>^{-sigma} e^{i theta_k} with theta_k a
// hash of (seed, k), so the same seed yields literally the same coefficients
// at every resolution on the shared band. The mode k = -M/2 is set to zero.
SpectralField random_field(GridSpec grid, double sigma, std::uint64_t seed);

}  // namespace fnls
