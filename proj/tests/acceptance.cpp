// Acceptance gate: each criterion is one checkable claim about the solver or
// an audit, evaluated against pinned tolerances and reported as a single
// [PASS]/[FAIL] line. Exit 0 iff every requested criterion passed.
//
// Criteria 5 and 7 encode requirements that this corpus cannot meet (the
// free-flow probe never grows fast enough, and data pinned at sigma = s + 0.55
// cannot gain 25% per doubling); they are evaluated as written and fail
// honestly rather than being weakened.

#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "fnls/audits.hpp"
#include "fnls/errors.hpp"
#include "fnls/evolution.hpp"
#include "fnls/fractional.hpp"
#include "fnls/grid.hpp"
#include "fnls/highlow.hpp"
#include "fnls/invariants.hpp"
#include "fnls/nonlinearity.hpp"
#include "fnls/norms.hpp"
#include "fnls/parallel.hpp"

using namespace fnls;

namespace {

double find_extremal(const AuditReport& rep, const std::string& label) {
  for (const auto& e : rep.extremals)
    if (e.label == label) return e.value;
  return std::nan("");
}

void verdict(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// --- 1: resonant decomposition identity and fast cubic against the O(M^3) sum

bool criterion_1() {
  const double sigmas[] = {0.6, 1.0, 1.5, 2.5};
  double worst_split = 0.0, worst_fast = 0.0;
  int count = 0;
  for (int M : {16, 32, 64}) {
    GridSpec g(M);
    const int fields = (M == 64) ? 66 : 67;
    for (int seed = 1; seed <= fields; ++seed) {
      SpectralField u = random_field(g, sigmas[seed % 4], static_cast<unsigned>(seed));
      SpectralField fast = cubic(u);
      const double scale = norm(fast, NormSpec::l2());

      ResonantParts parts = resonant_decompose(u);
      SpectralField reassembled = parts.P * u + parts.rho + parts.R;
      worst_split = std::max(worst_split, norm(fast - reassembled, NormSpec::l2()) / scale);

      SpectralField slow = cubic_oracle(u);
      worst_fast = std::max(worst_fast, norm(fast - slow, NormSpec::l2()) / scale);
      ++count;
    }
  }
  const bool pass = count == 200 && worst_split <= 1e-12 && worst_fast <= 1e-12;
  verdict(1, pass,
          "200 seeded fields at M in {16,32,64}: split identity off by " + fmt(worst_split) +
              ", fast vs direct cubic off by " + fmt(worst_fast) + " (bar 1e-12 each)");
  return pass;
}

// --- 2: invariant conservation of the split integrator, and its order

double max_rel_drift(const TrajectoryRecord& rec, double InvariantSnapshot::*field) {
  const double ref = rec.snapshots.front().*field;
  double worst = 0.0;
  for (const auto& s : rec.snapshots)
    worst = std::max(worst, std::abs(s.*field - ref) / std::abs(ref));
  return worst;
}

bool criterion_2() {
  SpectralField u0 = random_field(GridSpec(512), 2.5, 1);
  EvolutionConfig cfg{.alpha = Alpha(0.75), .mu = -1, .dt = 1e-3, .sample_every = 50};
  TrajectoryRecord rec = evolve(u0, 1.0, cfg);
  const double mass_drift = max_rel_drift(rec, &InvariantSnapshot::mass);
  const double energy_drift = max_rel_drift(rec, &InvariantSnapshot::energy);

  EvolutionConfig half = cfg;
  half.dt = 5e-4;
  half.sample_every = 100;
  const double energy_half = max_rel_drift(evolve(u0, 1.0, half), &InvariantSnapshot::energy);
  const double order = std::log2(energy_drift / energy_half);

  const bool pass =
      mass_drift <= 1e-10 && energy_drift <= 1e-6 && order >= 1.9 && order <= 2.1;
  verdict(2, pass,
          "defocusing run M = 512, T = 1: mass drift " + fmt(mass_drift) +
              " (bar 1e-10), energy drift " + fmt(energy_drift) + " (bar 1e-6), order " +
              fmt(order) + " (window [1.9, 2.1])");
  return pass;
}

// --- 3: dispersion-gap lower bound over the frequency box

bool criterion_3() {
  AuditReport rep = audit_freq_lower_bound(GapScanConfig{}, default_threads());
  verdict(3, rep.pass,
          "gap ratio over |j|,|k| <= 50, |n| <= 500 at three alphas: min " +
              fmt(find_extremal(rep, "min_ratio")) + " > 0, far-field min " +
              fmt(find_extremal(rep, "min_ratio_far_field")) +
              ", stable under doubling the n box (bar 2%)");
  return rep.pass;
}

// --- 4: convolution bound, truncation-stable

bool criterion_4() {
  AuditReport rep = audit_sum_lemma(SumLemmaConfig{}, default_threads());
  verdict(4, rep.pass,
          "convolution ratio sup over |k1|,|k2| <= 200 for three (beta,gamma) pairs: " +
              fmt(find_extremal(rep, "sup_ratio_case_0")) + ", " +
              fmt(find_extremal(rep, "sup_ratio_case_1")) + ", " +
              fmt(find_extremal(rep, "sup_ratio_case_2")) +
              "; each moves < 1% per truncation doubling");
  return rep.pass;
}

// --- 5: free-flow space-time bound above the threshold, failure below

bool criterion_5() {
  StrichartzConfig cfg;
  AuditReport rep = audit_strichartz(cfg, default_threads());
  const double s_main = cfg.s_main.value_or((1.0 - cfg.alpha.value()) / 4.0 + 0.05);
  verdict(5, rep.pass,
          "free-flow ratio growth per doubling, M = 64..1024: weighted s = " + fmt(s_main) +
              " worst " +
              fmt(100.0 * find_extremal(rep, "worst_growth_main")) +
              "% (bar < 25%), unweighted probe best " +
              fmt(100.0 * find_extremal(rep, "best_growth_probe")) +
              "% (needs > 25% on some doubling; no corpus member exceeds it)");
  return rep.pass;
}

// --- 6: multiplier sum and smoothing weight sum, truncation-stable

bool criterion_6() {
  AuditReport mn = audit_mn_sum(MnSumConfig{}, default_threads());
  AuditReport sm = audit_smoothing_sum(SmoothingSumConfig{}, default_threads());
  const bool pass = mn.pass && sm.pass;
  verdict(6, pass,
          "multiplier sum M_n: profile maximum moves " +
              fmt(100.0 * find_extremal(mn, "max_change_of_max")) +
              "% under K doubling (bar 5%); smoothing weight sum maximum moves " +
              fmt(100.0 * find_extremal(sm, "max_change_of_max")) +
              "% (bar 5%), failure probe above the gain window grows");
  return pass;
}

// --- 7: trajectory smoothing of the gauged remainder

bool criterion_7() {
  AuditReport rep = audit_smoothing_trajectory(SmoothingRunConfig{}, default_threads());
  verdict(7, rep.pass,
          "gauged remainder in H^0.8: sup_t norm changes " +
              fmt(100.0 * find_extremal(rep, "sup_w_change_rel")) +
              "% across M = 256 -> 512 (bar 10%); data norm grows " +
              fmt(100.0 * find_extremal(rep, "data_norm_growth_rel")) +
              "% (needs > 25%, unreachable at decay sigma = 1.15); gauge advantage " +
              fmt(100.0 * find_extremal(rep, "gauge_advantage_coarse")) + "% / " +
              fmt(100.0 * find_extremal(rep, "gauge_advantage_fine")) + "% (bar 10%)");
  return rep.pass;
}

// --- 8: high-low decomposition ledger and its cutoff scaling

bool criterion_8() {
  SpectralField u0 = random_field(GridSpec(256), 1.45, 1);
  HighLowConfig cfg;
  cfg.N = 16;
  StageLedger lo = run_highlow(u0, cfg);
  cfg.N = 32;
  StageLedger hi = run_highlow(u0, cfg);

  const double rec = std::max(lo.max_reconstruction_rel, hi.max_reconstruction_rel);
  const double drift = std::max(lo.max_h_drift_rel, hi.max_h_drift_rel);
  const double ratio = std::log2(hi.rows[0].wnl_alpha / lo.rows[0].wnl_alpha);
  const bool pass = rec <= 1e-12 && drift <= 1e-6 && ratio < 0.0;
  verdict(8, pass,
          "four stages at N = 16 and 32: reconstruction off by " + fmt(rec) +
              " (bar 1e-12), per-stage energy drift " + fmt(drift) +
              " (bar 1e-6), remainder log2 ratio " + fmt(ratio) +
              " < 0 (context exponent 2a + s0 - 3s = -0.69)");
  return pass;
}

// --- 9: byte-identical artifacts at any thread count, and the exit contract

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int spawn(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion_9(const std::string& cli) {
  namespace fs = std::filesystem;
  if (cli.empty()) {
    verdict(9, false, "needs --cli <path to the command-line binary>");
    return false;
  }
  const fs::path root = fs::temp_directory_path() / "fnls_acceptance_c9";
  fs::remove_all(root);
  fs::create_directories(root);

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"simulate", "simulate --M 64 --T 0.05 --dt 1e-3 --sample_every 10"},
      {"phi", "audit-phi --k_max 2000"},
      {"sums", "audit-sums --grid_max 40 --K 200 --K_check 800"},
      {"gap", "audit-gap --jmax 6 --kmax 6 --nmax 40"},
      {"strichartz", "audit-strichartz --M_min 32 --M_max 64"},
      {"mn", "audit-mn --n_max 16 --K 64"},
      {"smoothing-sum", "audit-smoothing-sum --n_max 16 --K 64 --failure_probe false"},
      {"smoothing-run", "audit-smoothing-run --M_coarse 32 --T 0.05 --dt 1e-3"},
      {"highlow", "highlow --N 4 --M 32 --stages 2 --dt 1e-3"},
      {"selftest", "selftest"}};

  int compared_files = 0;
  std::string fail;
  for (const auto& [tag, args] : runs) {
    const fs::path d1 = root / (tag + "_t1");
    const fs::path d2 = root / (tag + "_t3");
    const fs::path log = root / (tag + ".log");
    const int rc1 = spawn(cli + " " + args + " --threads 1 --out " + d1.string() + " > " +
                          log.string() + " 2>&1");
    const int rc2 = spawn(cli + " " + args + " --threads 3 --out " + d2.string() + " >> " +
                          log.string() + " 2>&1");
    if (rc1 != rc2) {
      fail = tag + ": exit codes differ between thread counts (" + std::to_string(rc1) + " vs " +
             std::to_string(rc2) + ")";
      break;
    }
    if (rc1 != 0 && rc1 != 1) {  // 1 = an audit verdict, still writes artifacts
      fail = tag + ": unexpected exit code " + std::to_string(rc1);
      break;
    }

    std::map<std::string, std::string> seen;
    if (fs::exists(d1))
      for (const auto& e : fs::directory_iterator(d1))
        seen[e.path().filename().string()] = slurp(e.path());
    std::size_t matched = 0;
    if (fs::exists(d2)) {
      for (const auto& e : fs::directory_iterator(d2)) {
        const auto it = seen.find(e.path().filename().string());
        if (it == seen.end() || it->second != slurp(e.path())) {
          fail = tag + ": artifact " + e.path().filename().string() +
                 " differs between thread counts";
          break;
        }
        ++matched;
      }
    }
    if (!fail.empty()) break;
    if (matched != seen.size()) {
      fail = tag + ": artifact sets differ between thread counts";
      break;
    }
    compared_files += static_cast<int>(matched);
  }

  // exit contract: configuration mistakes are exit 2, without artifacts
  if (fail.empty()) {
    const std::string sink = " > " + (root / "contract.log").string() + " 2>&1";
    if (spawn(cli + " frobnicate" + sink) != 2) fail = "unknown subcommand not exit 2";
    else if (spawn(cli + " simulate --bogus 1" + sink) != 2) fail = "unknown flag not exit 2";
    else if (spawn(cli + " simulate --alpha 1.2 --M 32 --T 0.01 --dt 1e-3" + sink) != 2)
      fail = "alpha outside (1/2,1) not exit 2";
    else if (spawn(cli + " highlow --s0 0.95 --M 32 --N 4" + sink) != 2)
      fail = "s0 >= s not exit 2";
  }

  const bool pass = fail.empty();
  verdict(9, pass,
          pass ? std::to_string(compared_files) +
                     " artifacts byte-identical between --threads 1 and 3 across 10 subcommands; "
                     "config mistakes exit 2"
               : fail);
  if (pass) fs::remove_all(root);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;  // 0 = all
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) criterion = std::atoi(argv[++i]);
    else if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--cli PATH]\n", argv[0]);
      return 2;
    }
  }

  bool all = true;
  try {
    for (int c = 1; c <= 9; ++c) {
      if (criterion != 0 && criterion != c) continue;
      switch (c) {
        case 1: all = criterion_1() && all; break;
        case 2: all = criterion_2() && all; break;
        case 3: all = criterion_3() && all; break;
        case 4: all = criterion_4() && all; break;
        case 5: all = criterion_5() && all; break;
        case 6: all = criterion_6() && all; break;
        case 7: all = criterion_7() && all; break;
        case 8: all = criterion_8() && all; break;
        case 9: all = criterion_9(cli) && all; break;
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 1;
  }
  return all ? 0 : 1;
}
