#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "fnls/audits.hpp"
#include "fnls/errors.hpp"
#include "fnls/fractional.hpp"
#include "fnls/grid.hpp"
#include "fnls/norms.hpp"

using namespace fnls;

namespace {

bool has_note_containing(const AuditReport& rep, const std::string& needle) {
  for (const std::string& n : rep.notes) {
    if (n.find(needle) != std::string::npos) return true;
  }
  return false;
}

const AuditReport::Extremal& extremal(const AuditReport& rep, const std::string& label) {
  for (const auto& e : rep.extremals) {
    if (e.label == label) return e;
  }
  REQUIRE_MESSAGE(false, "missing extremal ", label);
  static AuditReport::Extremal dummy;
  return dummy;
}

}  // namespace

TEST_CASE("prefix sums: phi_2(3) = 2.6 and the flat-weight count") {
  CHECK(phi_sum(2.0, 3) == doctest::Approx(2.6).epsilon(1e-14));
  CHECK(phi_sum(0.0, 5) == doctest::Approx(11.0).epsilon(1e-15));  // 2k + 1 unit terms
  CHECK(phi_sum(2.0, 0) == 1.0);
  CHECK(phi_sum(1.0, 2) == doctest::Approx(1.0 + 2.0 / std::sqrt(2.0) + 2.0 / std::sqrt(5.0))
                               .epsilon(1e-14));
}

TEST_CASE("prefix-sum growth audit classifies all three branches") {
  PhiAuditConfig cfg;
  cfg.k_max = 3000;
  AuditReport rep = audit_phi(cfg, 2);
  CHECK(rep.pass);
  CHECK(rep.name == "audit_phi");
  // beta = 0.5 fits the power branch with exponent 1 - beta
  const auto& e = extremal(rep, "fitted_exponent");
  (void)e;
  bool found_half = false;
  for (const auto& ex : rep.extremals) {
    if (ex.label == "fitted_exponent" && !ex.where.empty() && ex.where[0].second == 0.5) {
      CHECK(ex.value == doctest::Approx(0.5).epsilon(0.1));
      found_half = true;
    }
  }
  CHECK(found_half);
}

TEST_CASE("convolution ratio: frozen diagonal value and exact invariances") {
  // beta = gamma = 2 at k1 = k2 = 0: the ratio is the truncated sum of
  // <n>^{-4} over |n| <= 1000 itself.
  CHECK(convolution_sum_ratio(2.0, 2.0, 0, 0, 1000) ==
        doctest::Approx(1.6136739501801514).epsilon(1e-13));
  // translation by m and the k1 <-> k2 swap relocate the same window
  CHECK(convolution_sum_ratio(2.0, 2.0, 137, 137, 1000) ==
        convolution_sum_ratio(2.0, 2.0, 0, 0, 1000));
  // the k1 <-> k2 swap pairs term n with term k1 + k2 - n over the same
  // window, so the sum is re-accumulated in reverse order: equal to rounding
  CHECK(convolution_sum_ratio(1.2, 0.9, 7, -3, 500) ==
        doctest::Approx(convolution_sum_ratio(1.2, 0.9, -3, 7, 500)).epsilon(1e-13));
  CHECK(convolution_sum_ratio(1.2, 0.9, 12, 2, 500) ==
        convolution_sum_ratio(1.2, 0.9, 10, 0, 500));
  // window too small for the pair separation
  CHECK_THROWS_AS(convolution_sum_ratio(1.2, 0.9, 0, 300, 500), InputError);
}

TEST_CASE("convolution-bound audit holds on a reduced scan") {
  SumLemmaConfig cfg;
  cfg.grid_max = 20;
  cfg.K = 200;
  cfg.K_check = 800;
  cfg.stability_tol = 0.05;
  AuditReport rep = audit_sum_lemma(cfg, 3);
  CHECK(rep.pass);
  CHECK(rep.tables.size() == 3);  // one scan table per (beta, gamma) case
  for (int i = 0; i < 3; ++i) {
    const auto& e = extremal(rep, "sup_ratio_case_" + std::to_string(i));
    CHECK(e.value > 0.0);
    CHECK(e.value < 50.0);
  }
}

TEST_CASE("dispersion-gap audit: positive minimum, stable box, far-field level") {
  GapScanConfig cfg;
  cfg.alphas = {0.75};
  cfg.j_max = 8;
  cfg.k_max = 8;
  cfg.n_max = 60;
  AuditReport rep = audit_freq_lower_bound(cfg, 2);
  CHECK(rep.pass);
  const auto& mn = extremal(rep, "min_ratio");
  CHECK(mn.value > 0.0);
  // the far-field restriction approaches 2 alpha (2 alpha - 1) = 0.75
  const auto& far = extremal(rep, "min_ratio_far_field");
  CHECK(far.value > 0.5 * 0.75);
}

TEST_CASE("free-flow space-time ratio: plane-wave and two-mode closed forms") {
  // Single mode: |e^{it|K|^{2a}} e^{iKx}| = 1 pointwise, so |u|^4 integrates
  // to the volume (2 pi)^2; the numerator is sqrt(2 pi) and the ratio divides
  // that by <K>^s.
  GridSpec g(16);
  SpectralField one(g);
  one.set(1, 1.0);
  const int Mt = 65;
  CHECK(strichartz_numerator(one, Alpha(0.75), Mt, 2) ==
        doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(strichartz_ratio(one, Alpha(0.75), 0.3, Mt, 2) ==
        doctest::Approx(2.259099892104576).epsilon(1e-12));

  // Two modes {0, K}: the x-average of |u|^4 is constant in t, so the
  // trapezoid quadrature is exact: numerator (24 pi^2)^{1/4}.
  SpectralField two(g);
  two.set(0, 1.0);
  two.set(5, 1.0);
  for (double av : {0.6, 0.9}) {
    CHECK(strichartz_numerator(two, Alpha(av), Mt, 2) ==
          doctest::Approx(std::pow(24.0 * std::numbers::pi * std::numbers::pi, 0.25))
              .epsilon(1e-12));
  }
  CHECK(strichartz_ratio(two, Alpha(0.75), 0.4, Mt, 2) ==
        doctest::Approx(1.8132144764915095).epsilon(1e-12));

  CHECK_THROWS_AS(strichartz_numerator(one, Alpha(0.75), 63, 2), ConfigError);
}

TEST_CASE("space-time audit: the probe half stays bounded on this corpus") {
  // The ratio at the near-threshold weight must stop growing; the s = 0 probe
  // is expected to grow by more than growth_tol on some doubling, but no
  // member of this corpus concentrates sharply enough, so the audit reports
  // the anomaly and fails honestly.
  StrichartzConfig cfg;
  cfg.M_min = 32;
  cfg.M_max = 128;
  cfg.random_seeds = 1;
  AuditReport rep = audit_strichartz(cfg, 2);
  CHECK_FALSE(rep.pass);
  CHECK(extremal(rep, "worst_growth_main").value < cfg.growth_tol);
  CHECK(extremal(rep, "best_growth_probe").value < cfg.growth_tol);
  CHECK(has_note_containing(rep, "anomaly"));
  CHECK(rep.tables.size() == 2);
}

TEST_CASE("corpus members are normalized and deterministic") {
  std::vector<SpectralField> corpus = strichartz_corpus(GridSpec(64), 2, 0.5);
  CHECK(corpus.size() == 4);
  std::vector<SpectralField> again = strichartz_corpus(GridSpec(64), 2, 0.5);
  for (std::size_t m = 0; m < corpus.size(); ++m) {
    for (int i = 0; i < 64; ++i) CHECK(corpus[m].coeffs()[i] == again[m].coeffs()[i]);
  }
}

TEST_CASE("multiplier term: frozen value, exclusions, and symmetry") {
  Alpha a(0.75);
  // j = k = 1, n = 0: quadruple (1,2,1,0), gap 2^{1.5} - 2
  CHECK(multiplier_term_mn(a, 0.2, 0.49, 0, 1, 1) ==
        doctest::Approx(0.42520366752281247).epsilon(1e-13));
  // the resonant pairs j = 0 / k = 0 are excluded from the sum, and the term
  // refuses them rather than returning a value
  CHECK_THROWS_AS(multiplier_term_mn(a, 0.2, 0.49, 3, 0, 5), InputError);
  CHECK_THROWS_AS(multiplier_term_mn(a, 0.2, 0.49, 3, 5, 0), InputError);
  for (long long n : {-4LL, 0LL, 9LL}) {
    CHECK(multiplier_term_mn(a, 0.2, 0.49, n, 2, -7) == multiplier_term_mn(a, 0.2, 0.49, n, -7, 2));
  }
}

TEST_CASE("multiplier sum agrees with an independent double loop at K = 8") {
  Alpha a(0.75);
  const double s = 1.0, bp = 0.49;
  const long long n = 0, K = 8;
  double direct = 0.0;
  for (long long j = -K; j <= K; ++j) {
    for (long long k = -K; k <= K; ++k) {
      if (j == 0 || k == 0) continue;
      const double k1 = static_cast<double>(n + j);
      const double k2 = static_cast<double>(n + j + k);
      const double k3 = static_cast<double>(n + k);
      const double gap = std::abs(std::pow(std::abs(k1), 1.5) - std::pow(std::abs(k2), 1.5) +
                                  std::pow(std::abs(k3), 1.5) - std::pow(static_cast<double>(std::abs(n)), 1.5));
      direct += jap_pow(static_cast<double>(n), 2.0 * s) /
                (jap_pow(k1, 2.0 * s) * jap_pow(k2, 2.0 * s) * jap_pow(k3, 2.0 * s) *
                 jap_pow(gap, 2.0 * bp));
    }
  }
  CHECK(multiplier_sum_mn(a, s, bp, n, K) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("multiplier-sum audit passes with loose small-K tolerances") {
  MnSumConfig cfg;
  cfg.n_max = 16;  // the scan refuses anything smaller
  cfg.K = 64;
  cfg.stability_tol = 0.30;  // the K-tail shrinks like K^{-0.3}; small K moves more
  cfg.trend_tol = 0.30;
  AuditReport rep = audit_mn_sum(cfg, 2);
  CHECK(rep.pass);
  REQUIRE(rep.tables.size() == 1);
  CHECK(rep.tables[0].rows.size() == 17);  // n = 0..n_max
  CHECK(extremal(rep, "max_Mn").value > 0.0);
}

TEST_CASE("smoothing weight term: frozen single-term value") {
  CHECK(smoothing_term(Alpha(0.75), 0.6, 0.2, 0.01, 0, 1, 1) ==
        doctest::Approx(0.13558661840885516).epsilon(1e-13));
  CHECK_THROWS_AS(smoothing_term(Alpha(0.75), 0.6, 0.2, 0.01, 2, 0, 3), InputError);
}

TEST_CASE("smoothing weight sum agrees with an independent double loop at K = 6") {
  Alpha a(0.75);
  const double s = 0.6, c = 0.2, eps = 0.01;
  const long long n = 4, K = 6;
  double direct = 0.0;
  for (long long j = -K; j <= K; ++j) {
    for (long long k = -K; k <= K; ++k) {
      if (j == 0 || k == 0) continue;
      const double denom_gap =
          std::abs(static_cast<double>(k * j)) /
          std::pow(static_cast<double>(std::abs(n) + std::abs(k) + std::abs(j)), 0.5);
      direct += jap_pow(static_cast<double>(n), 2.0 * (s + c)) /
                (jap_pow(static_cast<double>(n + j), 2.0 * s) *
                 jap_pow(static_cast<double>(n + k), 2.0 * s) *
                 jap_pow(static_cast<double>(n + j + k), 2.0 * s) *
                 jap_pow(denom_gap, 1.0 - eps));
    }
  }
  CHECK(smoothing_weight_sum(a, s, c, eps, n, K) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("smoothing-sum audit: bounded main sum, growing failure probe") {
  SmoothingSumConfig cfg;
  cfg.n_max = 64;  // the failure probe refuses shorter scans
  cfg.K = 256;
  cfg.stability_tol = 0.30;
  cfg.trend_tol = 0.30;
  AuditReport rep = audit_smoothing_sum(cfg, 2);
  CHECK(rep.pass);
  CHECK(rep.tables.size() == 2);  // scan plus the above-threshold probe
  CHECK(extremal(rep, "max_Mn").value > 0.0);
}

TEST_CASE("audit parameter validation") {
  // exponent-domain violations are data errors; structural size floors are
  // configuration errors
  CHECK_THROWS_AS(phi_sum(-0.5, 10), InputError);
  SmoothingSumConfig bad;
  bad.s = 0.2;  // the pair sum diverges in K for s <= 1/4
  CHECK_THROWS_AS(audit_smoothing_sum(bad, 1), InputError);
  MnSumConfig bad_s;
  bad_s.s = 0.1;  // requires s > (1 - alpha)/2 = 0.125
  CHECK_THROWS_AS(audit_mn_sum(bad_s, 1), InputError);
  MnSumConfig bad_b;
  bad_b.bprime = 0.6;  // b' must stay below the 1/2 endpoint
  CHECK_THROWS_AS(audit_mn_sum(bad_b, 1), InputError);
  MnSumConfig small;
  small.n_max = 8;
  CHECK_THROWS_AS(audit_mn_sum(small, 1), ConfigError);
  SmoothingSumConfig thin;
  thin.K = 32;  // violates K >= 4 n_max
  CHECK_THROWS_AS(audit_smoothing_sum(thin, 1), ConfigError);
}
