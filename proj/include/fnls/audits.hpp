#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "fnls/fractional.hpp"
#include "fnls/grid.hpp"
#include "fnls/report.hpp"

namespace fnls {

// Wall-clock provenance for AuditReport::runtime_seconds.
class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// ---- Prefix sums phi_beta(k) = sum_{|n| <= |k|} <n>^{-beta} ----------------

// Exact finite sum. Requires beta >= 0.
double phi_sum(double beta, long long k);

// Growth classification of k -> phi_beta(k): bounded for beta > 1,
// logarithmic at beta = 1, power k^{1-beta} below. The audit fits the
// growth over k in [100, k_max] and checks the branch each beta lands in.
struct PhiAuditConfig {
  std::vector<double> betas{2.0, 1.0, 0.5};
  long long k_max = 10000;
  double exponent_tol = 0.05;
};
AuditReport audit_phi(const PhiAuditConfig& cfg, int threads);

// ---- Convolution bound sum_n <n-k1>^{-beta} <n-k2>^{-gamma} ----------------

// (truncated LHS) / ( <k1-k2>^{-gamma} phi_beta(k1-k2) ). The truncation
// window is 2K+1 (or 2K+2) terms centered on (k1+k2)/2, which makes the
// ratio exactly invariant under both translation (k1,k2) -> (k1+m,k2+m)
// and the swap k1 <-> k2. Requires beta >= gamma >= 0, beta + gamma > 1,
// and K >= 2 max(|k1 - k2|, 2).
double convolution_sum_ratio(double beta, double gamma, long long k1, long long k2, long long K);

struct SumLemmaCase {
  double beta = 2.0;
  double gamma = 2.0;
};
struct SumLemmaConfig {
  std::vector<SumLemmaCase> cases{{1.2, 0.9}, {2.0, 2.0}, {1.01, 0.5}};
  long long grid_max = 200;  // scan |k1|,|k2| <= grid_max
  long long K = 1000;        // truncation ladder K, 2K, 4K, ... capped by K_check
  long long K_check = 10000;
  double stability_tol = 0.01;  // allowed sup movement per doubling step
};
AuditReport audit_sum_lemma(const SumLemmaConfig& cfg, int threads);

// ---- Dispersion-gap lower bound -------------------------------------------

// r(j,k,n) = g(j,k,n) (|j|+|k|+|n|)^{2-2 alpha} / (|j| |k|), j,k != 0.
double gap_ratio(long long j, long long k, long long n, Alpha alpha);

struct GapScanConfig {
  std::vector<double> alphas{0.6, 0.75, 0.9};
  long long j_max = 50;
  long long k_max = 50;
  long long n_max = 500;  // the scan also covers the doubled box |n| <= 2 n_max
  double stability_tol = 0.02;
};
AuditReport audit_freq_lower_bound(const GapScanConfig& cfg, int threads);

// ---- L4-in-space-time ratio of the free flow -------------------------------

// || e^{it(-Lap)^alpha} f ||_{L^4_{t in [0,2pi]} L^4_x} by trapezoid rule on
// Mt nodes in t and exact padded quadrature in x. Requires Mt >= 4 M + 1.
double strichartz_numerator(const SpectralField& f, Alpha alpha, int Mt, int threads);
double strichartz_ratio(const SpectralField& f, Alpha alpha, double s, int Mt, int threads);

// Corpus: member 0 the coherent profile <k>^{-1/2}/log(e+|k|), member 1 the
// band cutoff (Dirichlet kernel, |k| <= M/4), then random-phase fields.
std::vector<SpectralField> strichartz_corpus(GridSpec grid, int random_seeds, double random_sigma);

struct StrichartzConfig {
  Alpha alpha{0.75};
  std::optional<double> s_main;  // default (1 - alpha)/4 + 0.05
  double s_probe = 0.0;
  int M_min = 64;
  int M_max = 1024;
  int time_oversample = 4;  // Mt = time_oversample * M + 1
  int random_seeds = 3;
  double random_sigma = 0.5;
  double growth_tol = 0.25;
};
AuditReport audit_strichartz(const StrichartzConfig& cfg, int threads);

// ---- Multiplier sum M_n ----------------------------------------------------

// One term of M_n in the (j,k) parametrization k1 = n+j, k2 = n+j+k,
// k3 = n+k (j,k != 0):
//   <n>^{2s} / ( <k1>^{2s} <k2>^{2s} <k3>^{2s} <|k1|^{2a}-|k2|^{2a}+|k3|^{2a}-|n|^{2a}>^{2b'} ).
double multiplier_term_mn(Alpha alpha, double s, double bprime, long long n, long long j,
                          long long k);
// Sum over |j|,|k| <= K.
double multiplier_sum_mn(Alpha alpha, double s, double bprime, long long n, long long K);

struct MnSumConfig {
  Alpha alpha{0.75};
  double s = 0.2;
  double bprime = 0.49;
  long long n_max = 256;
  long long K = 2048;  // the audit compares against the doubled truncation 2K
  double stability_tol = 0.05;
  double trend_tol = 0.05;
};
AuditReport audit_mn_sum(const MnSumConfig& cfg, int threads);

// ---- Smoothing weight sum M(n) ---------------------------------------------

// One term (j,k != 0):
//   <n>^{2s+2c} / ( <n+j>^{2s} <n+k>^{2s} <n+j+k>^{2s} <|kj|/(|n|+|k|+|j|)^{2-2a}>^{1-eps} ).
double smoothing_term(Alpha alpha, double s, double c, double eps, long long n, long long j,
                      long long k);
double smoothing_weight_sum(Alpha alpha, double s, double c, double eps, long long n, long long K);

struct SmoothingSumConfig {
  Alpha alpha{0.75};
  double s = 0.6;
  double c = 0.2;
  double eps = 0.01;  // realization of the "1-" exponent as 1 - eps
  long long n_max = 256;
  long long K = 1024;
  double stability_tol = 0.05;
  double trend_tol = 0.05;
  // Rerun a sparse n-ladder at c = alpha - 1/2 + 0.1 (above the admissible
  // window) expecting growth in n.
  bool failure_probe = true;
};
AuditReport audit_smoothing_sum(const SmoothingSumConfig& cfg, int threads);

// ---- Smoothing along trajectories ------------------------------------------

// Evolves rough data under the defocusing equation and measures
// w(t) = u(t) - e^{it(-Lap)^alpha - iPt} u0 in H^{s+c}, against the free
// flow with and without the resonant phase e^{-iPt}.
struct SmoothingRunConfig {
  Alpha alpha{0.75};
  double s = 0.6;
  double c = 0.2;
  double T = 0.5;
  int M_coarse = 256;  // the fine run uses 2 M_coarse
  double dt = 2.5e-4;
  int sample_every = 5;
  std::uint64_t seed = 1;
  double stability_tol = 0.10;      // sup_t ||w|| change across the doubling
  double data_growth_min = 0.25;    // required growth of ||u0||_{H^{s+c}}
  double gauge_advantage_min = 0.10;  // sup ||w_nogauge|| must exceed sup ||w|| by this margin
  double sigma() const { return s + 0.5 + 0.05; }
};
AuditReport audit_smoothing_trajectory(const SmoothingRunConfig& cfg, int threads);

}  // namespace fnls
