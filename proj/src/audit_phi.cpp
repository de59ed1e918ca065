#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "fnls/audits.hpp"
#include "fnls/errors.hpp"
#include "fnls/norms.hpp"

namespace fnls {

namespace {

// Least-squares slope and intercept of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double var = sxx - sx * sx / n;
  LineFit f;
  f.slope = (sxy - sx * sy / n) / var;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

// Geometric ladder of integer sample points in [lo, hi], deduplicated.
std::vector<long long> geometric_samples(long long lo, long long hi, int count) {
  std::vector<long long> ks;
  for (int i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / (count - 1);
    long long k = std::llround(lo * std::pow(static_cast<double>(hi) / lo, t));
    if (ks.empty() || k > ks.back()) ks.push_back(k);
  }
  return ks;
}

}  // namespace

double phi_sum(double beta, long long k) {
  if (!(beta >= 0.0)) throw InputError("phi sum requires beta >= 0");
  const long long kk = std::llabs(k);
  double acc = 0.0;
  for (long long n = kk; n >= 1; --n) acc += jap_pow(static_cast<double>(n), -beta);
  return 1.0 + 2.0 * acc;
}

AuditReport audit_phi(const PhiAuditConfig& cfg, int /*threads: scan is trivially cheap*/) {
  WallTimer timer;
  if (cfg.betas.empty()) throw ConfigError("audit needs at least one beta");
  for (double b : cfg.betas)
    if (!(b >= 0.0)) throw ConfigError("beta must be >= 0, got " + std::to_string(b));
  if (cfg.k_max < 1000)
    throw ConfigError("k_max too small for the growth fit (need >= 1000), got " +
                      std::to_string(cfg.k_max));
  if (!(cfg.exponent_tol > 0.0)) throw ConfigError("exponent_tol must be positive");

  AuditReport rep;
  rep.name = "audit_phi";
  for (std::size_t i = 0; i < cfg.betas.size(); ++i)
    rep.param("beta_" + std::to_string(i), cfg.betas[i]);
  rep.param("k_max", static_cast<long long>(cfg.k_max));
  rep.param("fit_window_low", static_cast<long long>(100));
  rep.param("exponent_tol", cfg.exponent_tol);

  const std::vector<long long> ks = geometric_samples(100, cfg.k_max, 41);
  AuditReport::Table scan{"scan", {"beta", "k", "phi"}, {}};
  AuditReport::Table fits{"fits",
                          {"beta", "fitted_exponent", "expected_exponent", "log_slope",
                           "tail_growth_rel", "branch", "branch_pass"},
                          {}};

  bool all_pass = true;
  for (double beta : cfg.betas) {
    // One incremental pass over n gives phi at every sample point.
    std::vector<double> phis;
    phis.reserve(ks.size());
    double acc = 1.0;
    long long n = 0;
    for (long long k : ks) {
      while (n < k) {
        ++n;
        acc += 2.0 * jap_pow(static_cast<double>(n), -beta);
      }
      phis.push_back(acc);
      scan.rows.push_back({beta, static_cast<double>(k), acc});
    }

    std::vector<double> lx(ks.size()), ly(phis.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      lx[i] = std::log(static_cast<double>(ks[i]));
      ly[i] = std::log(phis[i]);
    }
    const double exponent = fit_line(lx, ly).slope;
    // Slope of phi against log k, the natural scale of the critical branch.
    const double log_slope = fit_line(lx, phis).slope;
    const double tail_growth = phis.back() / phi_sum(beta, ks.back() / 2) - 1.0;

    // branch: 0 bounded (beta > 1), 1 logarithmic (beta = 1), 2 power.
    double branch, expected, pass;
    if (beta > 1.0 + 1e-12) {
      branch = 0.0;
      expected = 0.0;
      pass = (exponent <= cfg.exponent_tol && tail_growth <= 0.01) ? 1.0 : 0.0;
      if (pass == 0.0 && beta <= 1.1)
        rep.note("beta = " + format_double(beta) +
                 " is near-critical: the bounded branch is not yet visible at k <= " +
                 std::to_string(cfg.k_max));
    } else if (std::abs(beta - 1.0) <= 1e-12) {
      branch = 1.0;
      expected = 0.0;
      // phi_1(k) ~ 2 log k + const: linear in log k with slope 2, and slower
      // than any power.
      pass = (log_slope >= 1.8 && log_slope <= 2.2 && exponent <= 0.2) ? 1.0 : 0.0;
    } else {
      branch = 2.0;
      expected = 1.0 - beta;
      pass = (std::abs(exponent - expected) <= cfg.exponent_tol) ? 1.0 : 0.0;
    }
    all_pass = all_pass && pass == 1.0;
    fits.rows.push_back({beta, exponent, expected, log_slope, tail_growth, branch, pass});
    rep.extremals.push_back({"fitted_exponent", exponent, {{"beta", beta}}});
  }

  rep.tables.push_back(std::move(scan));
  rep.tables.push_back(std::move(fits));
  rep.pass = all_pass;
  rep.note("branch codes: 0 bounded, 1 logarithmic, 2 power");
  rep.runtime_seconds = timer.seconds();
  return rep;
}

}  // namespace fnls
