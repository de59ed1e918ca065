#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fnls/audits.hpp"
#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/evolution.hpp"
#include "fnls/highlow.hpp"
#include "fnls/invariants.hpp"
#include "fnls/norms.hpp"
#include "fnls/parallel.hpp"
#include "fnls/report.hpp"
#include "fnls/selftest.hpp"

namespace {

using namespace fnls;

struct CommonOpts {
  std::string out = "out";
  long long threads = 0;
  std::string config_path;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--threads", c.threads, "worker threads, 0 = all available");
  sub->add_option("--config", c.config_path, "key = value configuration file");
}

int resolve_threads(long long t) {
  if (t < 0) throw ConfigError("threads must be >= 0");
  return t == 0 ? default_threads() : static_cast<int>(t);
}

// Parameter resolution order: built-in default, then config file, then
// explicit flag. Every resolved knob is echoed, so the written
// <name>_config.txt reloads to an identical run; threads and out are
// execution details and stay out of the echo.
struct Resolver {
  const CLI::App* cmd = nullptr;
  const Config* file = nullptr;
  std::vector<EchoPair> echo;
  std::vector<std::string> known{"subcommand"};

  bool flag_given(const std::string& key) const { return cmd->count("--" + key) > 0; }

  double num(const std::string& key, double v) {
    known.push_back(key);
    if (file && !flag_given(key)) v = file->number(key, v);
    echo.push_back({key, echo_value(v)});
    return v;
  }
  long long integer(const std::string& key, long long v) {
    known.push_back(key);
    if (file && !flag_given(key)) v = file->integer(key, v);
    echo.push_back({key, echo_value(v)});
    return v;
  }
  bool boolean(const std::string& key, bool v) {
    known.push_back(key);
    if (file && !flag_given(key)) v = file->boolean(key, v);
    echo.push_back({key, echo_value(v)});
    return v;
  }
  std::string text(const std::string& key, std::string v) {
    known.push_back(key);
    if (file && !flag_given(key)) v = file->text(key, v);
    echo.push_back({key, v});
    return v;
  }
  // Knob with no built-in value: resolves only when the flag or the file
  // provides it, and is echoed only in that case.
  std::optional<double> opt_num(const std::string& key, double flag_value) {
    known.push_back(key);
    std::optional<double> out;
    if (flag_given(key)) {
      out = flag_value;
    } else if (file && file->has(key)) {
      out = file->number(key, 0.0);
    }
    if (out) echo.push_back({key, echo_value(*out)});
    return out;
  }
  // Schema check: the file may name only this subcommand and resolved keys.
  void finish(const std::string& subcommand) const {
    if (!file) return;
    const std::string named = file->text("subcommand", subcommand);
    if (named != subcommand)
      throw ConfigError(file->origin() + ": config names subcommand '" + named + "' but '" +
                        subcommand + "' was invoked");
    file->require_keys_among(known);
  }
};

std::optional<Config> load_config(const CommonOpts& common) {
  if (common.config_path.empty()) return std::nullopt;
  return Config::from_file(common.config_path);
}

// Writes the report artifacts plus the parameter echo, prints the note lines
// and one verdict line. Wall clock is stdout-only so the artifacts stay
// byte-identical across reruns.
int emit_and_report(const AuditReport& rep, const std::string& subcommand, const Resolver& r,
                    const CommonOpts& common) {
  std::vector<std::string> written = write_report_files(rep, common.out);
  namespace fs = std::filesystem;
  const fs::path echo_path = fs::path(common.out) / (rep.name + "_config.txt");
  {
    std::ofstream f(echo_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + echo_path.string() + "' for writing");
    f << render_config_echo(subcommand, r.echo);
    f.close();
    if (!f) throw ConfigError("failed writing '" + echo_path.string() + "'");
  }
  written.push_back(echo_path.string());
  for (const auto& p : written) std::cout << "wrote " << p << "\n";
  for (const auto& n : rep.notes) std::cout << "  " << n << "\n";
  std::printf("%s: %s (%.2f s)\n", rep.name.c_str(), rep.pass ? "PASS" : "FAIL",
              rep.runtime_seconds);
  return rep.pass ? 0 : 1;
}

Integrator parse_integrator(const std::string& name) {
  if (name == "strang") return Integrator::strang_split;
  if (name == "ifrk4") return Integrator::if_rk4;
  throw ConfigError("integrator must be 'strang' or 'ifrk4', got '" + name + "'");
}

Dealias parse_dealias(const std::string& name) {
  if (name == "strict") return Dealias::strict;
  if (name == "none") return Dealias::none;
  throw ConfigError("dealias must be 'strict' or 'none', got '" + name + "'");
}

DeltaRule parse_delta_rule(const std::string& name) {
  if (name == "local_existence") return DeltaRule::local_existence;
  if (name == "power_law") return DeltaRule::power_law;
  throw ConfigError("delta_rule must be 'local_existence' or 'power_law', got '" + name + "'");
}

std::uint64_t as_seed(long long v) {
  if (v < 0) throw ConfigError("seed must be >= 0");
  return static_cast<std::uint64_t>(v);
}

// ---- simulate ---------------------------------------------------------------

struct SimulateOpts {
  double alpha = 0.75;
  long long mu = -1;
  bool gauged = false;
  double sigma = 2.5;
  long long M = 512;
  double T = 1.0;
  double dt = 1e-3;
  long long sample_every = 10;
  long long seed = 1;
  std::string integrator = "strang";
  std::string dealias = "strict";
  double mass_tol = 1e-10;
  double energy_tol = 1e-6;
};

int run_simulate(const CLI::App* cmd, SimulateOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};

  o.alpha = r.num("alpha", o.alpha);
  o.mu = r.integer("mu", o.mu);
  o.gauged = r.boolean("gauged", o.gauged);
  o.sigma = r.num("sigma", o.sigma);
  o.M = r.integer("M", o.M);
  o.T = r.num("T", o.T);
  o.dt = r.num("dt", o.dt);
  o.sample_every = r.integer("sample_every", o.sample_every);
  o.seed = r.integer("seed", o.seed);
  o.integrator = r.text("integrator", o.integrator);
  o.dealias = r.text("dealias", o.dealias);
  o.mass_tol = r.num("mass_tol", o.mass_tol);
  o.energy_tol = r.num("energy_tol", o.energy_tol);
  r.finish("simulate");

  if (o.mu < -1 || o.mu > 1) throw ConfigError("mu must be -1, 0 or +1");
  if (o.T <= 0.0) throw ConfigError("T must be positive");
  if (o.sample_every < 1) throw ConfigError("sample_every must be >= 1");

  EvolutionConfig ecfg;
  ecfg.alpha = Alpha(o.alpha);
  ecfg.mu = static_cast<int>(o.mu);
  ecfg.gauged = o.gauged;
  ecfg.dt = o.dt;
  ecfg.integrator = parse_integrator(o.integrator);
  ecfg.dealias = parse_dealias(o.dealias);
  ecfg.sample_every = static_cast<int>(o.sample_every);

  WallTimer timer;
  const GridSpec grid(static_cast<int>(o.M));
  const SpectralField u0 = random_field(grid, o.sigma, as_seed(o.seed));
  const TrajectoryRecord rec = evolve(u0, o.T, ecfg);

  AuditReport rep;
  rep.name = "simulate";
  rep.param("alpha", o.alpha);
  rep.param("mu", o.mu);
  rep.param("gauged", o.gauged);
  rep.param("sigma", o.sigma);
  rep.param("M", o.M);
  rep.param("T", o.T);
  rep.param("dt", o.dt);
  rep.param("sample_every", o.sample_every);
  rep.param("seed", o.seed);
  rep.param("integrator", o.integrator);
  rep.param("dealias", o.dealias);
  rep.param("mass_tol", o.mass_tol);
  rep.param("energy_tol", o.energy_tol);

  AuditReport::Table traj{"trajectory", {"t", "mass", "kinetic", "potential", "energy"}, {}};
  const double mass0 = rec.snapshots.front().mass;
  const double energy0 = rec.snapshots.front().energy;
  double mass_drift = 0.0, energy_drift = 0.0, t_mass = 0.0, t_energy = 0.0;
  for (const auto& s : rec.snapshots) {
    traj.rows.push_back({s.t, s.mass, s.kinetic, s.potential, s.energy});
    const double md = std::abs(s.mass - mass0) / std::max(std::abs(mass0), 1e-300);
    const double ed = std::abs(s.energy - energy0) / std::max(std::abs(energy0), 1e-300);
    if (md > mass_drift) {
      mass_drift = md;
      t_mass = s.t;
    }
    if (ed > energy_drift) {
      energy_drift = ed;
      t_energy = s.t;
    }
  }
  rep.tables.push_back(std::move(traj));
  rep.extremals.push_back({"max_mass_drift_rel", mass_drift, {{"t", t_mass}}});
  rep.extremals.push_back({"max_energy_drift_rel", energy_drift, {{"t", t_energy}}});
  rep.pass = mass_drift <= o.mass_tol && energy_drift <= o.energy_tol;
  rep.note("mass drift " + format_double(mass_drift) + " against tolerance " +
           format_double(o.mass_tol));
  rep.note("energy drift " + format_double(energy_drift) + " against tolerance " +
           format_double(o.energy_tol));
  rep.runtime_seconds = timer.seconds();
  return emit_and_report(rep, "simulate", r, common);
}

// ---- audits -----------------------------------------------------------------

struct PhiOpts {
  long long k_max = 10000;
  double exponent_tol = 0.05;
};

int run_audit_phi(const CLI::App* cmd, PhiOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  PhiAuditConfig cfg;
  cfg.k_max = r.integer("k_max", o.k_max);
  cfg.exponent_tol = r.num("exponent_tol", o.exponent_tol);
  r.finish("audit-phi");
  const AuditReport rep = audit_phi(cfg, resolve_threads(common.threads));
  return emit_and_report(rep, "audit-phi", r, common);
}

struct SumsOpts {
  long long grid_max = 200;
  long long K = 1000;
  long long K_check = 10000;
  double stability_tol = 0.01;
};

int run_audit_sums(const CLI::App* cmd, SumsOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  SumLemmaConfig cfg;
  cfg.grid_max = r.integer("grid_max", o.grid_max);
  cfg.K = r.integer("K", o.K);
  cfg.K_check = r.integer("K_check", o.K_check);
  cfg.stability_tol = r.num("stability_tol", o.stability_tol);
  r.finish("audit-sums");
  const AuditReport rep = audit_sum_lemma(cfg, resolve_threads(common.threads));
  return emit_and_report(rep, "audit-sums", r, common);
}

struct GapOpts {
  double alpha = 0.75;  // active only when given: restricts the default scan set
  long long jmax = 50;
  long long kmax = 50;
  long long nmax = 500;
  double stability_tol = 0.02;
};

int run_audit_gap(const CLI::App* cmd, GapOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  GapScanConfig cfg;
  if (const std::optional<double> a = r.opt_num("alpha", o.alpha)) {
    Alpha{*a};  // validate before the scan starts
    cfg.alphas = {*a};
  }
  cfg.j_max = r.integer("jmax", o.jmax);
  cfg.k_max = r.integer("kmax", o.kmax);
  cfg.n_max = r.integer("nmax", o.nmax);
  cfg.stability_tol = r.num("stability_tol", o.stability_tol);
  r.finish("audit-gap");
  const AuditReport rep = audit_freq_lower_bound(cfg, resolve_threads(common.threads));
  return emit_and_report(rep, "audit-gap", r, common);
}

struct StrichartzOpts {
  double alpha = 0.75;
  double s_main = 0.0;  // active only when given; default derives from alpha
  double s_probe = 0.0;
  long long M_min = 64;
  long long M_max = 1024;
  long long time_oversample = 4;
  long long random_seeds = 3;
  double random_sigma = 0.5;
  double growth_tol = 0.25;
};

int run_audit_strichartz(const CLI::App* cmd, StrichartzOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  StrichartzConfig cfg;
  cfg.alpha = Alpha(r.num("alpha", o.alpha));
  if (const std::optional<double> sm = r.opt_num("s_main", o.s_main)) cfg.s_main = *sm;
  cfg.s_probe = r.num("s_probe", o.s_probe);
  cfg.M_min = static_cast<int>(r.integer("M_min", o.M_min));
  cfg.M_max = static_cast<int>(r.integer("M_max", o.M_max));
  cfg.time_oversample = static_cast<int>(r.integer("time_oversample", o.time_oversample));
  cfg.random_seeds = static_cast<int>(r.integer("random_seeds", o.random_seeds));
  cfg.random_sigma = r.num("random_sigma", o.random_sigma);
  cfg.growth_tol = r.num("growth_tol", o.growth_tol);
  r.finish("audit-strichartz");
  const AuditReport rep = audit_strichartz(cfg, resolve_threads(common.threads));
  return emit_and_report(rep, "audit-strichartz", r, common);
}

struct MnOpts {
  double alpha = 0.75;
  double s = 0.2;
  double bprime = 0.49;
  long long n_max = 256;
  long long K = 2048;
  double stability_tol = 0.05;
  double trend_tol = 0.05;
};

int run_audit_mn(const CLI::App* cmd, MnOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  MnSumConfig cfg;
  cfg.alpha = Alpha(r.num("alpha", o.alpha));
  cfg.s = r.num("s", o.s);
  cfg.bprime = r.num("bprime", o.bprime);
  cfg.n_max = r.integer("n_max", o.n_max);
  cfg.K = r.integer("K", o.K);
  cfg.stability_tol = r.num("stability_tol", o.stability_tol);
  cfg.trend_tol = r.num("trend_tol", o.trend_tol);
  r.finish("audit-mn");
  const AuditReport rep = audit_mn_sum(cfg, resolve_threads(common.threads));
  return emit_and_report(rep, "audit-mn", r, common);
}

struct SmoothingSumOpts {
  double alpha = 0.75;
  double s = 0.6;
  double c = 0.2;
  double eps = 0.01;
  long long n_max = 256;
  long long K = 1024;
  double stability_tol = 0.05;
  double trend_tol = 0.05;
  bool failure_probe = true;
};

int run_audit_smoothing_sum(const CLI::App* cmd, SmoothingSumOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  SmoothingSumConfig cfg;
  cfg.alpha = Alpha(r.num("alpha", o.alpha));
  cfg.s = r.num("s", o.s);
  cfg.c = r.num("c", o.c);
  cfg.eps = r.num("eps", o.eps);
  cfg.n_max = r.integer("n_max", o.n_max);
  cfg.K = r.integer("K", o.K);
  cfg.stability_tol = r.num("stability_tol", o.stability_tol);
  cfg.trend_tol = r.num("trend_tol", o.trend_tol);
  cfg.failure_probe = r.boolean("failure_probe", o.failure_probe);
  r.finish("audit-smoothing-sum");
  const AuditReport rep = audit_smoothing_sum(cfg, resolve_threads(common.threads));
  return emit_and_report(rep, "audit-smoothing-sum", r, common);
}

struct SmoothingRunOpts {
  double alpha = 0.75;
  double s = 0.6;
  double c = 0.2;
  double T = 0.5;
  long long M_coarse = 256;
  double dt = 2.5e-4;
  long long sample_every = 5;
  long long seed = 1;
  double stability_tol = 0.10;
  double data_growth_min = 0.25;
  double gauge_advantage_min = 0.10;
};

int run_audit_smoothing_run(const CLI::App* cmd, SmoothingRunOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  SmoothingRunConfig cfg;
  cfg.alpha = Alpha(r.num("alpha", o.alpha));
  cfg.s = r.num("s", o.s);
  cfg.c = r.num("c", o.c);
  cfg.T = r.num("T", o.T);
  cfg.M_coarse = static_cast<int>(r.integer("M_coarse", o.M_coarse));
  cfg.dt = r.num("dt", o.dt);
  cfg.sample_every = static_cast<int>(r.integer("sample_every", o.sample_every));
  cfg.seed = as_seed(r.integer("seed", o.seed));
  cfg.stability_tol = r.num("stability_tol", o.stability_tol);
  cfg.data_growth_min = r.num("data_growth_min", o.data_growth_min);
  cfg.gauge_advantage_min = r.num("gauge_advantage_min", o.gauge_advantage_min);
  r.finish("audit-smoothing-run");
  const AuditReport rep = audit_smoothing_trajectory(cfg, resolve_threads(common.threads));
  return emit_and_report(rep, "audit-smoothing-run", r, common);
}

// ---- highlow ----------------------------------------------------------------

struct HighLowOpts {
  double alpha = 0.75;
  double s = 0.9;
  double s0 = 0.51;
  long long N = 32;
  long long stages = 4;
  std::string delta_rule = "local_existence";
  double delta_c0 = 1.0;
  double dt = 2.5e-4;
  bool reproject = false;
  long long M = 256;
  double sigma = 1.45;
  long long seed = 1;
};

int run_highlow_cmd(const CLI::App* cmd, HighLowOpts o, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  HighLowConfig cfg;
  cfg.alpha = Alpha(r.num("alpha", o.alpha));
  cfg.s = r.num("s", o.s);
  cfg.s0 = r.num("s0", o.s0);
  cfg.N = static_cast<int>(r.integer("N", o.N));
  cfg.stages = static_cast<int>(r.integer("stages", o.stages));
  cfg.delta_rule = parse_delta_rule(r.text("delta_rule", o.delta_rule));
  cfg.delta_c0 = r.num("delta_c0", o.delta_c0);
  cfg.dt = r.num("dt", o.dt);
  cfg.reproject = r.boolean("reproject", o.reproject);
  o.M = r.integer("M", o.M);
  o.sigma = r.num("sigma", o.sigma);
  o.seed = r.integer("seed", o.seed);
  r.finish("highlow");

  const GridSpec grid(static_cast<int>(o.M));
  const SpectralField u0 = random_field(grid, o.sigma, as_seed(o.seed));
  const StageLedger ledger = run_highlow(u0, cfg);
  AuditReport rep = highlow_report(ledger, cfg);
  rep.param("M", o.M);
  rep.param("sigma", o.sigma);
  rep.param("seed", o.seed);
  return emit_and_report(rep, "highlow", r, common);
}

// ---- selftest ---------------------------------------------------------------

int run_selftest_cmd(const CLI::App* cmd, const CommonOpts& common) {
  const std::optional<Config> fcfg = load_config(common);
  Resolver r{cmd, fcfg ? &*fcfg : nullptr, {}, {"subcommand"}};
  r.finish("selftest");
  const AuditReport rep = run_selftest();
  return emit_and_report(rep, "selftest", r, common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Pseudospectral solver and numerical audit suite for the periodic fractional "
      "cubic Schrodinger equation i u_t + (-Lap)^alpha u = mu |u|^2 u."};
  app.require_subcommand(1);

  SimulateOpts sim_o;
  CommonOpts sim_c;
  CLI::App* sim = app.add_subcommand(
      "simulate", "integrate seeded power-law data and track the conserved quantities");
  sim->add_option("--alpha", sim_o.alpha, "dispersion exponent, in (1/2,1)");
  sim->add_option("--mu", sim_o.mu, "nonlinearity sign: -1 defocusing, +1 focusing, 0 linear");
  sim->add_option("--gauged", sim_o.gauged, "evolve the gauged defocusing equation");
  sim->add_option("--sigma", sim_o.sigma, "data decay: |u0_k| = <k>^-sigma");
  sim->add_option("--M", sim_o.M, "number of modes (even)");
  sim->add_option("--T", sim_o.T, "final time");
  sim->add_option("--dt", sim_o.dt, "time step");
  sim->add_option("--sample_every", sim_o.sample_every, "record every this many steps");
  sim->add_option("--seed", sim_o.seed, "phase seed of the data");
  sim->add_option("--integrator", sim_o.integrator, "strang | ifrk4");
  sim->add_option("--dealias", sim_o.dealias, "strict | none (ifrk4 right-hand side)");
  sim->add_option("--mass_tol", sim_o.mass_tol, "relative mass drift bound");
  sim->add_option("--energy_tol", sim_o.energy_tol, "relative energy drift bound");
  add_common(sim, sim_c);

  PhiOpts phi_o;
  CommonOpts phi_c;
  CLI::App* phi = app.add_subcommand(
      "audit-phi", "growth classification of the bracket prefix sums phi_beta(k)");
  phi->add_option("--k_max", phi_o.k_max, "largest k in the growth fit");
  phi->add_option("--exponent_tol", phi_o.exponent_tol, "allowed deviation of the fitted exponent");
  add_common(phi, phi_c);

  SumsOpts sums_o;
  CommonOpts sums_c;
  CLI::App* sums = app.add_subcommand(
      "audit-sums", "convolution bound of bracket weights over a (k1,k2) grid");
  sums->add_option("--grid_max", sums_o.grid_max, "scan |k1|,|k2| up to this value");
  sums->add_option("--K", sums_o.K, "truncation radius of the sums");
  sums->add_option("--K_check", sums_o.K_check, "larger radius for the stability check");
  sums->add_option("--stability_tol", sums_o.stability_tol,
                   "allowed relative change of the worst ratio under K -> K_check");
  add_common(sums, sums_c);

  GapOpts gap_o;
  CommonOpts gap_c;
  CLI::App* gap = app.add_subcommand(
      "audit-gap", "lower bound of the frequency-quadruple dispersion gap");
  gap->add_option("--alpha", gap_o.alpha, "restrict the scan to one alpha (default scans three)");
  gap->add_option("--jmax", gap_o.jmax, "scan |j| up to this value");
  gap->add_option("--kmax", gap_o.kmax, "scan |k| up to this value");
  gap->add_option("--nmax", gap_o.nmax, "scan |n| up to this value (doubled box re-scan included)");
  gap->add_option("--stability_tol", gap_o.stability_tol,
                  "allowed relative drop of the minimum on the doubled box");
  add_common(gap, gap_c);

  StrichartzOpts str_o;
  CommonOpts str_c;
  CLI::App* str = app.add_subcommand(
      "audit-strichartz", "space-time L^4 ratio of the free flow across resolutions");
  str->add_option("--alpha", str_o.alpha, "dispersion exponent, in (1/2,1)");
  str->add_option("--s_main", str_o.s_main, "Sobolev weight of the main ratio");
  str->add_option("--s_probe", str_o.s_probe, "weight of the failure probe");
  str->add_option("--M_min", str_o.M_min, "smallest resolution");
  str->add_option("--M_max", str_o.M_max, "largest resolution (doubling ladder)");
  str->add_option("--time_oversample", str_o.time_oversample, "time nodes per mode, Mt = c M + 1");
  str->add_option("--random_seeds", str_o.random_seeds, "random-phase corpus members");
  str->add_option("--random_sigma", str_o.random_sigma, "decay of the random corpus members");
  str->add_option("--growth_tol", str_o.growth_tol,
                  "allowed relative growth of the main ratio per doubling ladder");
  add_common(str, str_c);

  MnOpts mn_o;
  CommonOpts mn_c;
  CLI::App* mn = app.add_subcommand(
      "audit-mn", "boundedness of the weighted multiplier sum over nonresonant pairs");
  mn->add_option("--alpha", mn_o.alpha, "dispersion exponent, in (1/2,1)");
  mn->add_option("--s", mn_o.s, "Sobolev weight, s > (1-alpha)/2");
  mn->add_option("--bprime", mn_o.bprime, "gap exponent, in (0,1/2)");
  mn->add_option("--n_max", mn_o.n_max, "evaluate the sum for |n| up to this value");
  mn->add_option("--K", mn_o.K, "pair truncation radius (2K stability re-sum included)");
  mn->add_option("--stability_tol", mn_o.stability_tol,
                 "allowed relative change of the maximum under K -> 2K");
  mn->add_option("--trend_tol", mn_o.trend_tol, "allowed upward trend across the top n quarter");
  add_common(mn, mn_c);

  SmoothingSumOpts ssum_o;
  CommonOpts ssum_c;
  CLI::App* ssum = app.add_subcommand(
      "audit-smoothing-sum", "boundedness of the smoothing weight sum, with failure probe");
  ssum->add_option("--alpha", ssum_o.alpha, "dispersion exponent, in (1/2,1)");
  ssum->add_option("--s", ssum_o.s, "Sobolev weight, s > 1/4");
  ssum->add_option("--c", ssum_o.c, "smoothing gain, 0 <= c < alpha - 1/2");
  ssum->add_option("--eps", ssum_o.eps, "realizes the '1-' denominator exponent as 1 - eps");
  ssum->add_option("--n_max", ssum_o.n_max, "evaluate the sum for |n| up to this value");
  ssum->add_option("--K", ssum_o.K, "pair truncation radius (2K stability re-sum included)");
  ssum->add_option("--stability_tol", ssum_o.stability_tol,
                   "allowed relative change of the maximum under K -> 2K");
  ssum->add_option("--trend_tol", ssum_o.trend_tol, "allowed upward trend across the top n quarter");
  ssum->add_option("--failure_probe", ssum_o.failure_probe,
                   "rerun a sparse ladder above the admissible c window expecting growth");
  add_common(ssum, ssum_c);

  SmoothingRunOpts srun_o;
  CommonOpts srun_c;
  CLI::App* srun = app.add_subcommand(
      "audit-smoothing-run", "nonlinear smoothing of evolved rough data against the free flow");
  srun->add_option("--alpha", srun_o.alpha, "dispersion exponent, in (1/2,1)");
  srun->add_option("--s", srun_o.s, "data regularity");
  srun->add_option("--c", srun_o.c, "smoothing gain measured in H^{s+c}");
  srun->add_option("--T", srun_o.T, "final time");
  srun->add_option("--M_coarse", srun_o.M_coarse, "coarse resolution (fine run uses 2M)");
  srun->add_option("--dt", srun_o.dt, "time step");
  srun->add_option("--sample_every", srun_o.sample_every, "measure every this many steps");
  srun->add_option("--seed", srun_o.seed, "phase seed of the data");
  srun->add_option("--stability_tol", srun_o.stability_tol,
                   "allowed change of sup_t ||w|| across the resolution doubling");
  srun->add_option("--data_growth_min", srun_o.data_growth_min,
                   "required growth of the data norm across the doubling");
  srun->add_option("--gauge_advantage_min", srun_o.gauge_advantage_min,
                   "required margin of the ungauged residual over the gauged one");
  add_common(srun, srun_c);

  HighLowOpts hl_o;
  CommonOpts hl_c;
  CLI::App* hl = app.add_subcommand(
      "highlow", "high-low decomposition ledger: energy increments and remainder scaling");
  hl->add_option("--alpha", hl_o.alpha, "dispersion exponent, in (1/2,1)");
  hl->add_option("--s", hl_o.s, "data regularity (s > s0)");
  hl->add_option("--s0", hl_o.s0, "auxiliary regularity, 1/2 < s0 < s");
  hl->add_option("--N", hl_o.N, "frequency cutoff of the decomposition");
  hl->add_option("--stages", hl_o.stages, "number of stages");
  hl->add_option("--delta_rule", hl_o.delta_rule, "local_existence | power_law");
  hl->add_option("--delta_c0", hl_o.delta_c0, "prefactor of the local_existence stage length");
  hl->add_option("--dt", hl_o.dt, "time step inside each stage");
  hl->add_option("--reproject", hl_o.reproject, "re-split the full field at the cutoff each stage");
  hl->add_option("--M", hl_o.M, "number of modes (even)");
  hl->add_option("--sigma", hl_o.sigma, "data decay: |u0_k| = <k>^-sigma");
  hl->add_option("--seed", hl_o.seed, "phase seed of the data");
  add_common(hl, hl_c);

  CommonOpts st_c;
  CLI::App* st = app.add_subcommand(
      "selftest", "closed-form identities every module must satisfy");
  add_common(st, st_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return run_simulate(sim, sim_o, sim_c);
    if (phi->parsed()) return run_audit_phi(phi, phi_o, phi_c);
    if (sums->parsed()) return run_audit_sums(sums, sums_o, sums_c);
    if (gap->parsed()) return run_audit_gap(gap, gap_o, gap_c);
    if (str->parsed()) return run_audit_strichartz(str, str_o, str_c);
    if (mn->parsed()) return run_audit_mn(mn, mn_o, mn_c);
    if (ssum->parsed()) return run_audit_smoothing_sum(ssum, ssum_o, ssum_c);
    if (srun->parsed()) return run_audit_smoothing_run(srun, srun_o, srun_c);
    if (hl->parsed()) return run_highlow_cmd(hl, hl_o, hl_c);
    if (st->parsed()) return run_selftest_cmd(st, st_c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InstabilityError& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  } catch (const CostError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
