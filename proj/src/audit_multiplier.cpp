#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "fnls/audits.hpp"
#include "fnls/errors.hpp"
#include "fnls/norms.hpp"
#include "fnls/parallel.hpp"

namespace fnls {

namespace {

// Per-n lookup tables over the offset m in [-2 KT, 2 KT]:
//   w[m] = <n+m>^{-2s},  p[m] = |n+m|^{2 alpha}.
// Covers j, k in [-KT, KT] and j+k in [-2 KT, 2 KT].
struct OffsetTables {
  long long span = 0;
  std::vector<double> w, p;

  void build(long long n, long long KT, double s, double two_alpha) {
    span = 2 * KT;
    w.resize(static_cast<std::size_t>(2 * span + 1));
    p.resize(static_cast<std::size_t>(2 * span + 1));
    for (long long m = -span; m <= span; ++m) {
      const double x = static_cast<double>(n + m);
      const std::size_t i = static_cast<std::size_t>(m + span);
      w[i] = jap_pow(x, -2.0 * s);
      p[i] = n + m == 0 ? 0.0 : std::pow(std::fabs(x), two_alpha);
    }
  }
  double weight(long long m) const { return w[static_cast<std::size_t>(m + span)]; }
  double power(long long m) const { return p[static_cast<std::size_t>(m + span)]; }
};

// Triangle scan j <= k with multiplicity 2 off the diagonal (the term is
// exactly symmetric in j and k). Accumulates the full |j|,|k| <= KT sum and,
// in the same fixed order, the K_inner-truncated subsum.
template <typename Term>
void scan_pairs(long long KT, long long K_inner, const Term& term, double& sum_inner,
                double& sum_full) {
  sum_inner = 0.0;
  sum_full = 0.0;
  for (long long j = -KT; j <= KT; ++j) {
    if (j == 0) continue;
    const bool j_inner = std::llabs(j) <= K_inner;
    for (long long k = j; k <= KT; ++k) {
      if (k == 0) continue;
      const double t = (j == k ? 1.0 : 2.0) * term(j, k);
      sum_full += t;
      if (j_inner && std::llabs(k) <= K_inner) sum_inner += t;
    }
  }
}

}  // namespace

double multiplier_term_mn(Alpha alpha, double s, double bprime, long long n, long long j,
                          long long k) {
  if (j == 0 || k == 0) throw InputError("term requires j != 0 and k != 0 (resonant set excluded)");
  const double two_alpha = 2.0 * alpha.value();
  const auto p = [two_alpha](long long m) {
    return m == 0 ? 0.0 : std::pow(std::fabs(static_cast<double>(m)), two_alpha);
  };
  const double gap = (p(n + j) + p(n + k)) - (p(n + j + k) + p(n));
  // The two factors symmetric under j <-> k are multiplied first, so the
  // term is bitwise symmetric (products commute; grouping is fixed).
  const double den = (jap_pow(static_cast<double>(n + j), 2.0 * s) *
                      jap_pow(static_cast<double>(n + k), 2.0 * s)) *
                     jap_pow(static_cast<double>(n + j + k), 2.0 * s) * jap_pow(gap, 2.0 * bprime);
  return jap_pow(static_cast<double>(n), 2.0 * s) / den;
}

double multiplier_sum_mn(Alpha alpha, double s, double bprime, long long n, long long K) {
  if (K < 1) throw InputError("truncation K must be positive");
  OffsetTables t;
  t.build(n, K, s, 2.0 * alpha.value());
  const double pn = t.power(0);
  double sum_inner = 0.0, sum_full = 0.0;
  scan_pairs(K, K,
             [&](long long j, long long k) {
               const double gap = (t.power(j) + t.power(k)) - (t.power(j + k) + pn);
               return t.weight(j) * t.weight(k) * t.weight(j + k) /
                      std::pow(1.0 + gap * gap, bprime);
             },
             sum_inner, sum_full);
  return jap_pow(static_cast<double>(n), 2.0 * s) * sum_full;
}

AuditReport audit_mn_sum(const MnSumConfig& cfg, int threads) {
  WallTimer timer;
  const double alpha = cfg.alpha.value();
  if (!(cfg.s > 0.5 * (1.0 - alpha)))
    throw InputError("s = " + format_double(cfg.s) + " must exceed (1-alpha)/2 = " +
                     format_double(0.5 * (1.0 - alpha)));
  if (!(cfg.bprime > 0.0 && cfg.bprime < 0.5))
    throw InputError("bprime must lie in (0, 1/2), got " + format_double(cfg.bprime));
  if (cfg.n_max < 16) throw ConfigError("n_max must be >= 16");
  if (cfg.K < 4 * cfg.n_max)
    throw ConfigError("truncation K = " + std::to_string(cfg.K) +
                      " violates K >= 4 n_max = " + std::to_string(4 * cfg.n_max));

  AuditReport rep;
  rep.name = "audit_mn";
  rep.param("alpha", alpha);
  rep.param("s", cfg.s);
  rep.param("bprime", cfg.bprime);
  rep.param("n_max", static_cast<long long>(cfg.n_max));
  rep.param("K", static_cast<long long>(cfg.K));
  rep.param("stability_tol", cfg.stability_tol);
  rep.param("trend_tol", cfg.trend_tol);

  const long long KT = 2 * cfg.K;
  const std::size_t count = static_cast<std::size_t>(cfg.n_max + 1);
  std::vector<double> mn_k(count), mn_2k(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const long long n = static_cast<long long>(i);
    OffsetTables t;
    t.build(n, KT, cfg.s, 2.0 * alpha);
    const double pn = t.power(0);
    double sum_inner = 0.0, sum_full = 0.0;
    scan_pairs(KT, cfg.K,
               [&](long long j, long long k) {
                 const double gap = (t.power(j) + t.power(k)) - (t.power(j + k) + pn);
                 return t.weight(j) * t.weight(k) * t.weight(j + k) /
                        std::pow(1.0 + gap * gap, cfg.bprime);
               },
               sum_inner, sum_full);
    const double front = jap_pow(static_cast<double>(n), 2.0 * cfg.s);
    mn_k[i] = front * sum_inner;
    mn_2k[i] = front * sum_full;
  });

  AuditReport::Table scan{"scan", {"n", "Mn_K", "Mn_2K", "rel_change"}, {}};
  double max_k = 0.0, max_2k = 0.0, worst_rel = 0.0;
  long long arg_max = 0, arg_rel = 0;
  bool monotone = true;
  for (std::size_t i = 0; i < count; ++i) {
    const double rel = (mn_2k[i] - mn_k[i]) / mn_k[i];
    scan.rows.push_back({static_cast<double>(i), mn_k[i], mn_2k[i], rel});
    max_k = std::max(max_k, mn_k[i]);
    if (mn_2k[i] > max_2k) {
      max_2k = mn_2k[i];
      arg_max = static_cast<long long>(i);
    }
    if (rel > worst_rel) {
      worst_rel = rel;
      arg_rel = static_cast<long long>(i);
    }
    if (mn_2k[i] < mn_k[i] * (1.0 - 1e-12)) monotone = false;
  }
  const double max_rel_change = std::abs(max_2k - max_k) / max_k;

  // Non-increasing trend at the top of the scanned range: the max over the
  // last quarter must not exceed the max over the preceding quarter.
  double quarter3 = 0.0, quarter4 = 0.0;
  for (std::size_t i = static_cast<std::size_t>(cfg.n_max / 2);
       i < static_cast<std::size_t>(3 * cfg.n_max / 4); ++i)
    quarter3 = std::max(quarter3, mn_2k[i]);
  for (std::size_t i = static_cast<std::size_t>(3 * cfg.n_max / 4); i < count; ++i)
    quarter4 = std::max(quarter4, mn_2k[i]);
  const bool trend_ok = quarter4 <= quarter3 * (1.0 + cfg.trend_tol);

  // The tabulated scan against the direct per-term formula, and the j <-> k
  // symmetry of the term itself.
  double worst_consistency = 0.0;
  bool symmetric = true;
  for (long long n : {0ll, cfg.n_max / 2, cfg.n_max}) {
    double direct = 0.0;
    const long long Ksmall = 8;
    for (long long j = -Ksmall; j <= Ksmall; ++j)
      for (long long k = -Ksmall; k <= Ksmall; ++k) {
        if (j == 0 || k == 0) continue;
        direct += multiplier_term_mn(cfg.alpha, cfg.s, cfg.bprime, n, j, k);
      }
    const double tabulated = multiplier_sum_mn(cfg.alpha, cfg.s, cfg.bprime, n, Ksmall);
    worst_consistency =
        std::max(worst_consistency, std::abs(tabulated - direct) / std::max(1.0, direct));
    const std::pair<long long, long long> sym_pairs[] = {{1, 5}, {-3, 7}, {2, -9}, {-8, -8}};
    for (auto [j, k] : sym_pairs)
      symmetric = symmetric && multiplier_term_mn(cfg.alpha, cfg.s, cfg.bprime, n, j, k) ==
                                   multiplier_term_mn(cfg.alpha, cfg.s, cfg.bprime, n, k, j);
  }

  const bool stable = max_rel_change <= cfg.stability_tol;
  rep.pass = stable && monotone && trend_ok && symmetric && worst_consistency <= 1e-12;

  rep.extremals.push_back({"max_Mn", max_2k, {{"n", static_cast<double>(arg_max)}}});
  rep.extremals.push_back(
      {"max_rel_change_per_n", worst_rel, {{"n", static_cast<double>(arg_rel)}}});
  rep.extremals.push_back({"max_change_of_max", max_rel_change, {}});
  rep.extremals.push_back({"trend_quarter3_max", quarter3, {}});
  rep.extremals.push_back({"trend_quarter4_max", quarter4, {}});

  if (!stable)
    rep.note("max_n M_n moved " + format_double(100.0 * max_rel_change) +
             "% under K doubling; growth detected rather than consistency with boundedness");
  if (!monotone) rep.note("a truncated value decreased as K doubled, which flags a summation bug");
  if (!trend_ok) rep.note("growth detected in n near the top of the scan range");
  if (!symmetric) rep.note("term symmetry in j and k violated");
  if (worst_consistency > 1e-12)
    rep.note("tabulated sums disagree with the direct per-term formula by " +
             format_double(worst_consistency));
  rep.note(std::string("verdict: ") +
           (rep.pass ? "consistent with bounded in n" : "not consistent with bounded in n"));

  rep.tables.push_back(std::move(scan));
  rep.runtime_seconds = timer.seconds();
  return rep;
}

}  // namespace fnls
