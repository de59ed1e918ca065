#pragma once

#include <optional>
#include <vector>

#include "fnls/fractional.hpp"
#include "fnls/grid.hpp"
#include "fnls/invariants.hpp"
#include "fnls/nonlinearity.hpp"
#include "fnls/norms.hpp"

namespace fnls {

enum class Integrator { strang_split, if_rk4 };

// Fixed-step integration of i u_t + (-Lap)^alpha u = mu |u|^2 u, or of its
// gauged form i u_t + (-Lap)^alpha u + |u|^2 u - P u = 0 (defocusing only)
// with P = (1/pi) ||u0||_{L^2}^2 frozen from the initial data.
struct EvolutionConfig {
  Alpha alpha{0.75};
  int mu = -1;
  bool gauged = false;
  double dt = 1e-3;
  Integrator integrator = Integrator::strang_split;
  Dealias dealias = Dealias::strict;  // right-hand-side policy for if_rk4
  int sample_every = 1;
  bool store_fields = false;
  // The high-low driver evolves the low equation with the gauge constant of
  // the full initial data rather than of the evolved field.
  std::optional<double> gauge_P_override;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<InvariantSnapshot> snapshots;
  std::vector<NormSpec> norm_specs;
  std::vector<std::vector<double>> norms;  // norms[i][j]: tracked norm j at sample i
  std::vector<SpectralField> fields;       // populated when store_fields is set
};

// Gauge constant the config resolves to for data u: the override if present,
// else (1/pi)||u||_{L^2}^2 when gauged, else 0.
double effective_gauge(const SpectralField& u, const EvolutionConfig& cfg);

// One step of size cfg.dt. Strang splitting applies a half linear phase, the
// exact pointwise nonlinear rotation u -> u exp(-i mu dt |u|^2) at the
// collocation nodes (a diagonal unitary, so the discrete L^2 norm is
// conserved identically), and a second half phase. if_rk4 is an
// integrating-factor RK4 on the coefficients with the dealiased cubic.
SpectralField step(const SpectralField& u, const EvolutionConfig& cfg);

// Integrates to time T exactly (the last step is shortened), sampling
// invariants and the requested norms every sample_every steps plus at both
// endpoints. Throws InstabilityError if the field leaves the finite range.
TrajectoryRecord evolve(const SpectralField& u0, double T, const EvolutionConfig& cfg,
                        const std::vector<NormSpec>& track = {});

// T_loc = c0 * ||u0||_{H^s}^{-4}, the fixed-point lifespan scale for data in
// H^s, s > 1/2.
double local_existence_heuristic(const SpectralField& u0, double s, double c0 = 1.0);

// Step-size default: 0.5 * min(1, 1 / max_j |u0(x_j)|^2), additionally capped
// by 1e-2 * 2 pi / max_k |k|^{2 alpha} for if_rk4, and by the global bound 0.1.
double default_dt(const SpectralField& u0, const EvolutionConfig& cfg);

}  // namespace fnls
