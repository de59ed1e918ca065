#pragma once

#include <utility>
#include <vector>

#include "fnls/evolution.hpp"
#include "fnls/fractional.hpp"
#include "fnls/grid.hpp"
#include "fnls/report.hpp"

namespace fnls {

// Stage-length rule: power_law uses delta = N^{-4(alpha - s)}; local_existence
// uses the fixed-point lifespan c0 ||u0||_{H^s}^{-4}, which is independent of
// the cutoff N and so isolates the N-scaling of the stage quantities.
enum class DeltaRule { power_law, local_existence };

struct HighLowConfig {
  Alpha alpha{0.75};
  double s = 0.9;    // data regularity (s > s0 required; s >= alpha permitted)
  double s0 = 0.51;  // auxiliary regularity, 1/2 < s0 < s
  int N = 32;        // frequency cutoff of the decomposition
  int stages = 4;
  DeltaRule delta_rule = DeltaRule::local_existence;
  double delta_c0 = 1.0;  // prefactor of the local_existence rule
  double dt = 2.5e-4;
  // Default bookkeeping keeps the high carry as the linear evolution of the
  // original high part for all stages; reproject instead re-splits the full
  // field at the cutoff after every stage.
  bool reproject = false;
};

// Per-stage bookkeeping of the two-equation split u = v + (high carry).
struct StageRow {
  int stage = 0;
  double t_end = 0.0;
  double phi_alpha = 0.0;  // ||v||_{H^alpha} at stage start
  double psi_s0 = 0.0;     // high carry at stage start
  double psi_l2 = 0.0;
  double H_start = 0.0;  // defocusing Hamiltonian of the low field
  double H_end = 0.0;
  double wnl_alpha = 0.0;  // nonlinear high remainder at stage end
  double wnl_l2 = 0.0;
  double reconstruction_rel = 0.0;  // ||(v + w_nl + psi_next) - u|| / ||u|| in L^2
};

struct StageLedger {
  int N = 0;
  double delta = 0.0;
  double gauge_P = 0.0;
  double H_phi0 = 0.0;
  std::vector<StageRow> rows;

  // Run-level summaries.
  double h_increment_sum = 0.0;      // sum over stages of |H_end - H_start|
  double max_h_drift_rel = 0.0;      // per-stage |H_end - H_start| / |H_start|
  double max_reconstruction_rel = 0.0;
  double psi_drift_rel = 0.0;        // worst relative drift of the carry norms
  double budget_exponent = 0.0;      // 5 alpha + s0 - 6 s (per-stage increment scale)
  double target_exponent = 0.0;      // 2 alpha - 2 s (total growth allowance)
  double l2_exponent = 0.0;          // alpha + s0 - 2 s (remainder L^2 scale)
};

// Sharp split at the cutoff: returns (low part, complement); the two parts
// have disjoint spectral supports and sum to u0 exactly.
std::pair<SpectralField, SpectralField> decompose_initial(const SpectralField& u0, int N);

double stage_delta(const SpectralField& u0, const HighLowConfig& cfg);

struct StageResult {
  SpectralField v_out;     // low field at stage end
  SpectralField psi_next;  // linear evolution of the carry
  SpectralField w_nl;      // u(delta) - v(delta) - psi_next
  StageRow row;
};

// One stage of length delta: evolves the full field v_in + psi_carry and the
// low field v_in under the gauged defocusing equation with the shared gauge
// constant gauge_P (from the full initial data), then re-splits.
StageResult run_stage(const SpectralField& v_in, const SpectralField& psi_carry, double delta,
                      const HighLowConfig& cfg, double gauge_P);

// Iterates run_stage with the stage update Phi <- w_nl + v, Psi <- linear
// carry (or a sharp re-projection of the full field when cfg.reproject).
StageLedger run_highlow(const SpectralField& u0, const HighLowConfig& cfg);

// |H(f+g) - H(f)| divided by
//   ||g||_{H^alpha}^2 + ||g|| ||f|| + ||g||^4 + ||g|| ||f||^3   (all H^alpha),
// the perturbation bound of the defocusing Hamiltonian. g = 0 returns 0;
// f = g = 0 is rejected.
double hamiltonian_difference_ratio(const SpectralField& f, const SpectralField& g, Alpha alpha);

// Report wrapper: stage table, budget table, and the plumbing invariants
// (reconstruction to round-off, unitary carry, per-stage H conservation).
AuditReport highlow_report(const StageLedger& ledger, const HighLowConfig& cfg);

}  // namespace fnls
