#pragma once

#include "fnls/fractional.hpp"
#include "fnls/grid.hpp"

namespace fnls {

// Conserved quantities of i u_t + (-Lap)^alpha u = mu |u|^2 u at one instant.
// mu = +1 is focusing, mu = -1 defocusing, mu = 0 linear-only.
//   mass      = ||u||_{L^2}^2 = 2 pi sum |c_k|^2
//   kinetic   = || |nabla|^alpha u ||_{L^2}^2 = 2 pi sum |k|^{2 alpha} |c_k|^2
//   potential = (1/2) int |u|^4
//   energy    = kinetic - mu * potential
struct InvariantSnapshot {
  double t = 0.0;
  double mass = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double energy = 0.0;
};

double mass(const SpectralField& field);

InvariantSnapshot invariants(const SpectralField& field, Alpha alpha, int mu, double t = 0.0);

// ||u||_{L^4}^4 / ( || |nabla|^alpha u ||_{L^2}^{1/alpha} ||u||_{L^2}^{4 - 1/alpha} ),
// the scale-invariant Gagliardo-Nirenberg quotient. Zero field is rejected;
// a field supported only on k = 0 has zero fractional gradient and the ratio
// is returned as +infinity.
double gagliardo_nirenberg_ratio(const SpectralField& field, Alpha alpha);

}  // namespace fnls
