#include "fnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fnls/errors.hpp"
#include "fnls/transforms.hpp"

namespace fnls {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxDt = 0.1;

void validate(const EvolutionConfig& cfg, double dt) {
  if (cfg.mu != -1 && cfg.mu != 0 && cfg.mu != 1)
    throw ConfigError("mu must be +1, -1 or 0, got " + std::to_string(cfg.mu));
  if (cfg.gauged && cfg.mu != -1)
    throw ConfigError("the gauged form is defined for the defocusing sign (mu = -1)");
  if (!(dt > 0.0) || dt > kMaxDt)
    throw ConfigError("dt must lie in (0, 0.1], got " + std::to_string(dt));
  if (cfg.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  if (cfg.gauge_P_override && (!std::isfinite(*cfg.gauge_P_override) || *cfg.gauge_P_override < 0.0))
    throw ConfigError("gauge override must be finite and >= 0");
}

std::vector<double> phase_table(const GridSpec& g, Alpha alpha, double gauge_P, double t) {
  std::vector<double> theta(static_cast<size_t>(g.size));
  for (int k = g.min_freq(); k <= g.max_freq(); ++k)
    theta[g.index_of(k)] = t * (symbol_laplacian(k, alpha) - gauge_P);
  return theta;
}

void apply_phases(SpectralField& u, const std::vector<double>& theta) {
  auto c = u.coeffs();
  for (size_t i = 0; i < c.size(); ++i)
    c[i] *= cplx{std::cos(theta[i]), std::sin(theta[i])};
}

SpectralField step_strang(const SpectralField& u, const EvolutionConfig& cfg, double dt,
                          double gauge_P) {
  SpectralField out = u;
  std::vector<double> half = phase_table(u.grid(), cfg.alpha, gauge_P, 0.5 * dt);
  apply_phases(out, half);
  if (cfg.mu != 0) {
    std::vector<cplx> s = inverse_transform(out);
    const double mdt = -static_cast<double>(cfg.mu) * dt;
    for (cplx& v : s) {
      double phi = mdt * std::norm(v);
      v *= cplx{std::cos(phi), std::sin(phi)};
    }
    out = forward_transform(s, u.grid());
  }
  apply_phases(out, half);
  return out;
}

SpectralField step_if_rk4(const SpectralField& u, const EvolutionConfig& cfg, double dt,
                          double gauge_P) {
  const GridSpec& g = u.grid();
  const size_t n = static_cast<size_t>(g.size);
  std::vector<double> theta = phase_table(g, cfg.alpha, gauge_P, 1.0);

  // d w / d tau = G(tau, w) = -i mu e^{-i theta tau} F(e^{i theta tau} w),
  // where F is the cubic in coefficient space and w = e^{-i theta tau} c.
  auto G = [&](double tau, const std::vector<cplx>& w) {
    SpectralField c(g);
    auto cc = c.coeffs();
    for (size_t i = 0; i < n; ++i) {
      double ph = theta[i] * tau;
      cc[i] = w[i] * cplx{std::cos(ph), std::sin(ph)};
    }
    SpectralField f = cubic(c, cfg.dealias);
    auto fc = f.coeffs();
    std::vector<cplx> out(n);
    const cplx miu{0.0, -static_cast<double>(cfg.mu)};
    for (size_t i = 0; i < n; ++i) {
      double ph = -theta[i] * tau;
      out[i] = miu * fc[i] * cplx{std::cos(ph), std::sin(ph)};
    }
    return out;
  };

  std::vector<cplx> w0(u.coeffs().begin(), u.coeffs().end());
  auto advanced = [&](const std::vector<cplx>& w, const std::vector<cplx>& k, double h) {
    std::vector<cplx> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = w[i] + h * k[i];
    return out;
  };

  std::vector<cplx> k1 = G(0.0, w0);
  std::vector<cplx> k2 = G(0.5 * dt, advanced(w0, k1, 0.5 * dt));
  std::vector<cplx> k3 = G(0.5 * dt, advanced(w0, k2, 0.5 * dt));
  std::vector<cplx> k4 = G(dt, advanced(w0, k3, dt));

  SpectralField out(g);
  auto oc = out.coeffs();
  const double sixth = dt / 6.0;
  for (size_t i = 0; i < n; ++i) {
    cplx w1 = w0[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    double ph = theta[i] * dt;
    oc[i] = w1 * cplx{std::cos(ph), std::sin(ph)};
  }
  return out;
}

SpectralField step_sized(const SpectralField& u, const EvolutionConfig& cfg, double dt,
                         double gauge_P) {
  return cfg.integrator == Integrator::strang_split ? step_strang(u, cfg, dt, gauge_P)
                                                    : step_if_rk4(u, cfg, dt, gauge_P);
}
}  // namespace

double effective_gauge(const SpectralField& u, const EvolutionConfig& cfg) {
  if (cfg.gauge_P_override) return *cfg.gauge_P_override;
  return cfg.gauged ? resonant_constant(u) : 0.0;
}

SpectralField step(const SpectralField& u, const EvolutionConfig& cfg) {
  validate(cfg, cfg.dt);
  if (!u.is_finite()) throw InputError("step from a non-finite field");
  return step_sized(u, cfg, cfg.dt, effective_gauge(u, cfg));
}

TrajectoryRecord evolve(const SpectralField& u0, double T, const EvolutionConfig& cfg,
                        const std::vector<NormSpec>& track) {
  validate(cfg, cfg.dt);
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("final time must be finite and >= 0");
  if (!u0.is_finite()) throw InputError("evolution from a non-finite field");

  const double gauge_P = effective_gauge(u0, cfg);
  TrajectoryRecord rec;
  rec.norm_specs = track;

  auto sample = [&](const SpectralField& u, double t) {
    rec.times.push_back(t);
    rec.snapshots.push_back(invariants(u, cfg.alpha, cfg.mu, t));
    std::vector<double> row;
    row.reserve(track.size());
    for (const NormSpec& spec : track) row.push_back(norm(u, spec));
    rec.norms.push_back(std::move(row));
    if (cfg.store_fields) rec.fields.push_back(u);
  };

  SpectralField u = u0;
  sample(u, 0.0);
  if (T == 0.0) return rec;

  const long n_steps = static_cast<long>(std::ceil(T / cfg.dt - 1e-12));
  double t = 0.0;
  for (long i = 0; i < n_steps; ++i) {
    const bool last = i + 1 == n_steps;
    const double dt_i = last ? T - t : cfg.dt;
    try {
      u = step_sized(u, cfg, dt_i, gauge_P);
    } catch (const InputError& e) {
      // u was finite entering the step, so a data error raised inside it is
      // an overflow of the dynamics (a stage value left the finite range).
      throw InstabilityError("integrator overflowed at step " + std::to_string(i + 1) +
                             " (t = " + std::to_string(t) + "): " + e.what());
    }
    t = last ? T : t + cfg.dt;
    if (!u.is_finite())
      throw InstabilityError("integrator produced a non-finite field at step " +
                             std::to_string(i + 1) + " (t = " + std::to_string(t) +
                             ", dt = " + std::to_string(cfg.dt) + ")");
    if (last || (i + 1) % cfg.sample_every == 0) sample(u, t);
  }
  return rec;
}

double local_existence_heuristic(const SpectralField& u0, double s, double c0) {
  if (!(s > 0.5)) throw ConfigError("lifespan heuristic requires s > 1/2");
  if (!(c0 > 0.0)) throw ConfigError("lifespan constant must be positive");
  double n = norm(u0, NormSpec::sobolev(s));
  if (n == 0.0) throw InputError("lifespan heuristic of the zero field");
  return c0 / (n * n * n * n);
}

double default_dt(const SpectralField& u0, const EvolutionConfig& cfg) {
  std::vector<cplx> s = inverse_transform(u0);
  double peak = 0.0;
  for (const cplx& v : s) peak = std::max(peak, std::norm(v));
  double dt = 0.5 * std::min(1.0, peak > 0.0 ? 1.0 / peak : 1.0);
  if (cfg.integrator == Integrator::if_rk4) {
    const GridSpec& g = u0.grid();
    double wmax = std::max(symbol_laplacian(g.min_freq(), cfg.alpha),
                           symbol_laplacian(g.max_freq(), cfg.alpha));
    if (wmax > 0.0) dt = std::min(dt, 1e-2 * kTwoPi / wmax);
  }
  return std::min(dt, kMaxDt);
}

}  // namespace fnls
