#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fnls/errors.hpp"
#include "fnls/highlow.hpp"
#include "fnls/invariants.hpp"
#include "fnls/norms.hpp"

namespace fnls {

namespace {

void validate(const HighLowConfig& cfg) {
  if (!(cfg.s0 > 0.5 && cfg.s0 < cfg.s))
    throw ConfigError("regularities must satisfy 1/2 < s0 < s, got s0 = " + format_double(cfg.s0) +
                      ", s = " + format_double(cfg.s));
  if (cfg.N < 1) throw ConfigError("cutoff N must be >= 1");
  if (cfg.stages < 1) throw ConfigError("stages must be >= 1");
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfg.delta_c0 > 0.0)) throw ConfigError("delta_c0 must be positive");
}

double hamiltonian(const SpectralField& f, Alpha alpha) {
  return invariants(f, alpha, -1).energy;
}

EvolutionConfig stage_evolution(const HighLowConfig& cfg, double gauge_P) {
  EvolutionConfig e;
  e.alpha = cfg.alpha;
  e.mu = -1;
  e.gauged = true;
  e.gauge_P_override = gauge_P;
  e.dt = cfg.dt;
  e.integrator = Integrator::strang_split;
  e.sample_every = 1 << 28;  // endpoints only
  e.store_fields = true;
  return e;
}

}  // namespace

std::pair<SpectralField, SpectralField> decompose_initial(const SpectralField& u0, int N) {
  SpectralField low = project(u0, {N, Projection::Mode::low});
  return {low, u0 - low};
}

double stage_delta(const SpectralField& u0, const HighLowConfig& cfg) {
  validate(cfg);
  if (cfg.delta_rule == DeltaRule::power_law)
    return std::pow(static_cast<double>(cfg.N), -4.0 * (cfg.alpha.value() - cfg.s));
  return local_existence_heuristic(u0, cfg.s, cfg.delta_c0);
}

StageResult run_stage(const SpectralField& v_in, const SpectralField& psi_carry, double delta,
                      const HighLowConfig& cfg, double gauge_P) {
  validate(cfg);
  if (!(delta > 0.0)) throw ConfigError("stage length must be positive");
  if (!(v_in.grid() == psi_carry.grid()))
    throw InputError("low field and carry live on different grids");

  const EvolutionConfig ecfg = stage_evolution(cfg, gauge_P);
  const SpectralField u_in = v_in + psi_carry;
  const TrajectoryRecord rec_u = evolve(u_in, delta, ecfg);
  const TrajectoryRecord rec_v = evolve(v_in, delta, ecfg);

  StageResult out;
  out.v_out = rec_v.fields.back();
  out.psi_next = propagate_linear(psi_carry, delta, cfg.alpha, gauge_P);
  const SpectralField& u_end = rec_u.fields.back();
  out.w_nl = (u_end - out.v_out) - out.psi_next;

  const double a = cfg.alpha.value();
  StageRow& row = out.row;
  row.phi_alpha = norm(v_in, NormSpec::sobolev(a));
  row.psi_s0 = norm(psi_carry, NormSpec::sobolev(cfg.s0));
  row.psi_l2 = norm(psi_carry, NormSpec::l2());
  row.H_start = rec_v.snapshots.front().energy;
  row.H_end = rec_v.snapshots.back().energy;
  row.wnl_alpha = norm(out.w_nl, NormSpec::sobolev(a));
  row.wnl_l2 = norm(out.w_nl, NormSpec::l2());
  const double u_l2 = norm(u_end, NormSpec::l2());
  row.reconstruction_rel =
      norm((out.v_out + out.w_nl + out.psi_next) - u_end, NormSpec::l2()) / u_l2;
  return out;
}

StageLedger run_highlow(const SpectralField& u0, const HighLowConfig& cfg) {
  validate(cfg);
  if (cfg.N >= u0.size() / 2)
    throw ConfigError("cutoff N = " + std::to_string(cfg.N) +
                      " not resolved on grid of size " + std::to_string(u0.size()));

  StageLedger ledger;
  ledger.N = cfg.N;
  ledger.delta = stage_delta(u0, cfg);
  EvolutionConfig gauge_probe;
  gauge_probe.gauged = true;
  ledger.gauge_P = effective_gauge(u0, gauge_probe);
  ledger.budget_exponent = 5.0 * cfg.alpha.value() + cfg.s0 - 6.0 * cfg.s;
  ledger.target_exponent = 2.0 * cfg.alpha.value() - 2.0 * cfg.s;
  ledger.l2_exponent = cfg.alpha.value() + cfg.s0 - 2.0 * cfg.s;

  auto [phi, psi] = decompose_initial(u0, cfg.N);
  ledger.H_phi0 = hamiltonian(phi, cfg.alpha);

  double psi_s0_0 = 0.0, psi_l2_0 = 0.0;
  for (int i = 0; i < cfg.stages; ++i) {
    StageResult sr = run_stage(phi, psi, ledger.delta, cfg, ledger.gauge_P);
    sr.row.stage = i;
    sr.row.t_end = ledger.delta * (i + 1);

    const double h_scale = std::max(std::abs(sr.row.H_start), 1e-300);
    ledger.h_increment_sum += std::abs(sr.row.H_end - sr.row.H_start);
    ledger.max_h_drift_rel =
        std::max(ledger.max_h_drift_rel, std::abs(sr.row.H_end - sr.row.H_start) / h_scale);
    ledger.max_reconstruction_rel =
        std::max(ledger.max_reconstruction_rel, sr.row.reconstruction_rel);
    if (i == 0) {
      psi_s0_0 = sr.row.psi_s0;
      psi_l2_0 = sr.row.psi_l2;
    } else if (psi_l2_0 > 0.0) {
      ledger.psi_drift_rel = std::max(
          {ledger.psi_drift_rel, std::abs(sr.row.psi_s0 - psi_s0_0) / psi_s0_0,
           std::abs(sr.row.psi_l2 - psi_l2_0) / psi_l2_0});
    }
    ledger.rows.push_back(sr.row);

    if (cfg.reproject) {
      const SpectralField u_next = sr.v_out + sr.w_nl + sr.psi_next;
      std::tie(phi, psi) = decompose_initial(u_next, cfg.N);
    } else {
      phi = sr.v_out + sr.w_nl;
      psi = std::move(sr.psi_next);
    }
  }
  return ledger;
}

double hamiltonian_difference_ratio(const SpectralField& f, const SpectralField& g, Alpha alpha) {
  if (!(f.grid() == g.grid())) throw InputError("fields live on different grids");
  const double gn = norm(g, NormSpec::sobolev(alpha.value()));
  const double fn = norm(f, NormSpec::sobolev(alpha.value()));
  if (gn == 0.0) {
    if (fn == 0.0) throw InputError("ratio undefined for two zero fields");
    return 0.0;
  }
  const double num = std::abs(hamiltonian(f + g, alpha) - hamiltonian(f, alpha));
  const double den = gn * gn + gn * fn + gn * gn * gn * gn + gn * fn * fn * fn;
  return num / den;
}

AuditReport highlow_report(const StageLedger& ledger, const HighLowConfig& cfg) {
  AuditReport rep;
  rep.name = "highlow";
  rep.param("alpha", cfg.alpha.value());
  rep.param("s", cfg.s);
  rep.param("s0", cfg.s0);
  rep.param("N", static_cast<long long>(cfg.N));
  rep.param("stages", static_cast<long long>(cfg.stages));
  rep.param("delta_rule",
            std::string(cfg.delta_rule == DeltaRule::power_law ? "power_law" : "local_existence"));
  rep.param("delta_c0", cfg.delta_c0);
  rep.param("dt", cfg.dt);
  rep.param("reproject", cfg.reproject);
  rep.param("delta", ledger.delta);
  rep.param("gauge_P", ledger.gauge_P);

  AuditReport::Table stages{"stages",
                            {"stage", "t_end", "phi_alpha", "psi_s0", "psi_l2", "H_start", "H_end",
                             "h_drift_rel", "wnl_alpha", "wnl_l2", "reconstruction_rel"},
                            {}};
  bool finite = true;
  for (const StageRow& r : ledger.rows) {
    const double h_scale = std::max(std::abs(r.H_start), 1e-300);
    stages.rows.push_back({static_cast<double>(r.stage), r.t_end, r.phi_alpha, r.psi_s0, r.psi_l2,
                           r.H_start, r.H_end, std::abs(r.H_end - r.H_start) / h_scale,
                           r.wnl_alpha, r.wnl_l2, r.reconstruction_rel});
    for (double v : stages.rows.back()) finite = finite && std::isfinite(v);
  }

  const double nn = static_cast<double>(ledger.N);
  const double budget_stage = std::pow(nn, ledger.budget_exponent);
  AuditReport::Table budget{"budget",
                            {"N", "delta", "stages", "H_phi0", "h_increment_sum", "budget_exponent",
                             "budget_per_stage", "budget_total", "target_exponent", "target_value",
                             "l2_exponent", "l2_scale", "max_wnl_l2"},
                            {}};
  double max_wnl_l2 = 0.0;
  for (const StageRow& r : ledger.rows) max_wnl_l2 = std::max(max_wnl_l2, r.wnl_l2);
  budget.rows.push_back({nn, ledger.delta, static_cast<double>(ledger.rows.size()), ledger.H_phi0,
                         ledger.h_increment_sum, ledger.budget_exponent, budget_stage,
                         budget_stage * static_cast<double>(ledger.rows.size()),
                         ledger.target_exponent, std::pow(nn, ledger.target_exponent),
                         ledger.l2_exponent, std::pow(nn, ledger.l2_exponent), max_wnl_l2});

  const bool reconstruction_ok = ledger.max_reconstruction_rel <= 1e-12;
  const bool carry_unitary = ledger.psi_drift_rel <= 1e-12;
  const bool h_conserved = ledger.max_h_drift_rel <= 1e-6;
  rep.pass = finite && reconstruction_ok && carry_unitary && h_conserved;

  rep.extremals.push_back({"max_reconstruction_rel", ledger.max_reconstruction_rel, {}});
  rep.extremals.push_back({"max_h_drift_rel", ledger.max_h_drift_rel, {}});
  rep.extremals.push_back({"psi_drift_rel", ledger.psi_drift_rel, {}});
  rep.extremals.push_back({"h_increment_sum", ledger.h_increment_sum, {}});

  if (!finite) rep.note("non-finite stage quantity");
  if (!reconstruction_ok) rep.note("stage reconstruction exceeded round-off tolerance 1e-12");
  if (!carry_unitary) rep.note("linear carry norms drifted beyond 1e-12");
  if (!h_conserved) rep.note("low-equation Hamiltonian drifted beyond 1e-6 within a stage");
  if (cfg.s >= cfg.alpha.value())
    rep.note("s >= alpha: the power_law stage length grows with N; the local_existence rule keeps "
             "the stage length N-independent for scaling comparisons");
  rep.note("per-stage Hamiltonian increment budget N^(5 alpha + s0 - 6 s) = " +
           format_double(budget_stage) + " against total allowance N^(2 alpha - 2 s) = " +
           format_double(std::pow(nn, ledger.target_exponent)));

  rep.tables.push_back(std::move(stages));
  rep.tables.push_back(std::move(budget));
  return rep;
}

}  // namespace fnls
