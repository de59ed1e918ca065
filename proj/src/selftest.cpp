#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "fnls/audits.hpp"
#include "fnls/errors.hpp"
#include "fnls/evolution.hpp"
#include "fnls/highlow.hpp"
#include "fnls/invariants.hpp"
#include "fnls/nonlinearity.hpp"
#include "fnls/norms.hpp"
#include "fnls/selftest.hpp"
#include "fnls/transforms.hpp"

namespace fnls {

namespace {

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (int k = a.grid().min_freq(); k <= a.grid().max_freq(); ++k)
    m = std::max(m, std::abs(a.at(k) - b.at(k)));
  return m;
}

}  // namespace

AuditReport run_selftest() {
  WallTimer timer;
  AuditReport rep;
  rep.name = "selftest";
  int failures = 0;

  auto check = [&](const std::string& name, auto&& fn) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = std::string(" [threw: ") + e.what() + "]";
    }
    if (!ok) ++failures;
    rep.note(std::string(ok ? "ok   " : "FAIL ") + name + detail);
  };

  const double pi = std::numbers::pi;

  check("prefix sum phi_2(3) = 2.6 exactly", [] {
    return std::abs(phi_sum(2.0, 3) - 2.6) <= 1e-15 && phi_sum(2.0, -3) == phi_sum(2.0, 3);
  });

  check("prefix sum phi_beta(0) = 1 for every beta", [] {
    for (double beta : {0.5, 1.0, 2.0})
      if (phi_sum(beta, 0) != 1.0) return false;
    return true;
  });

  check("two-mode cubic: modes 0,1 with weights 1,2 give (2, 9, 12, 4)", [] {
    SpectralField u{GridSpec(8)};
    u.set(0, 1.0);
    u.set(1, 2.0);
    const SpectralField c = cubic(u);
    const SpectralField o = cubic_oracle(u);
    double off = 0.0;
    for (int k = -4; k <= 3; ++k)
      if (k < -1 || k > 2) off = std::max(off, std::abs(c.at(k)));
    return std::abs(c.at(-1) - 2.0) <= 1e-12 && std::abs(c.at(0) - 9.0) <= 1e-12 &&
           std::abs(c.at(1) - 12.0) <= 1e-12 && std::abs(c.at(2) - 4.0) <= 1e-12 &&
           off <= 1e-12 && max_coeff_diff(c, o) <= 1e-12;
  });

  check("resonant split reassembles the cubic", [] {
    const SpectralField u = random_field(GridSpec(32), 1.0, 7);
    const ResonantParts parts = resonant_decompose(u);
    const SpectralField lhs = cubic(u);
    const SpectralField rhs = cplx(parts.P) * u + parts.rho + parts.R;
    return max_coeff_diff(lhs, rhs) <= 1e-12 * norm(lhs, NormSpec::l2());
  });

  check("gap ratio r(1,1,0) = 4 - 2 sqrt(2) at alpha = 3/4", [] {
    const double expected = 4.0 - 2.0 * std::sqrt(2.0);
    return std::abs(gap_ratio(1, 1, 0, Alpha(0.75)) - expected) <= 1e-14;
  });

  check("four-point gap (j,k,n) = (2,3,-4) at alpha = 0.6", [] {
    const double expected = std::pow(4.0, 1.2) - std::pow(2.0, 1.2);
    return std::abs(freq_quadruple_gap(2, 3, -4, Alpha(0.6)) - expected) <= 1e-13;
  });

  check("analysis transform isolates a plane wave", [&] {
    const GridSpec g(16);
    std::vector<cplx> samples(16);
    for (int j = 0; j < 16; ++j) samples[j] = std::exp(cplx(0.0, 3.0 * g.node(j)));
    const SpectralField c = forward_transform(samples, g);
    double off = 0.0;
    for (int k = g.min_freq(); k <= g.max_freq(); ++k)
      if (k != 3) off = std::max(off, std::abs(c.at(k)));
    return std::abs(c.at(3) - 1.0) <= 1e-14 && off <= 1e-13;
  });

  check("free flow of mode 1 is the phase e^{it}", [] {
    SpectralField u{GridSpec(8)};
    u.set(1, 1.0);
    const double t = 0.7;
    const SpectralField v = propagate_linear(u, t, Alpha(0.75), 0.0);
    return std::abs(v.at(1) - std::exp(cplx(0.0, t))) <= 1e-15;
  });

  check("sharp projections partition the band", [] {
    const SpectralField u = random_field(GridSpec(32), 0.8, 3);
    const SpectralField lo = project(u, {5, Projection::Mode::low});
    const SpectralField hi = project(u, {5, Projection::Mode::high});
    SpectralField mode3{GridSpec(16)};
    mode3.set(3, 1.0);
    const SpectralField none = project(mode3, {2, Projection::Mode::low});
    return max_coeff_diff(lo + hi, u) == 0.0 && norm(none, NormSpec::l2()) == 0.0;
  });

  check("cutoff split is Pythagorean in every Sobolev norm", [] {
    const SpectralField u = random_field(GridSpec(64), 0.9, 11);
    auto [phi, psi] = decompose_initial(u, 9);
    const double s = 0.8;
    const double a = norm(phi, NormSpec::sobolev(s)), b = norm(psi, NormSpec::sobolev(s));
    const double c = norm(u, NormSpec::sobolev(s));
    return std::abs(a * a + b * b - c * c) <= 1e-12 * c * c &&
           max_coeff_diff(phi + psi, u) == 0.0;
  });

  check("trajectory record starts at the data", [] {
    const SpectralField u0 = random_field(GridSpec(16), 1.0, 5);
    EvolutionConfig e;
    e.dt = 1e-3;
    e.store_fields = true;
    const TrajectoryRecord rec = evolve(u0, 5e-3, e);
    return rec.times.front() == 0.0 && max_coeff_diff(rec.fields.front(), u0) == 0.0;
  });

  check("plane-wave space-time ratio sqrt(2 pi) / 2^{s/2}", [&] {
    SpectralField u{GridSpec(8)};
    u.set(1, 1.0);
    const double s = 0.25;
    const double q = strichartz_ratio(u, Alpha(0.75), s, 33, 1);
    const double expected = std::sqrt(2.0 * pi) / std::pow(2.0, 0.5 * s);
    return std::abs(q - expected) <= 1e-12 * expected;
  });

  check("scale-invariant quotient of a plane wave is 1/(2 pi)", [&] {
    SpectralField u{GridSpec(8)};
    u.set(1, 1.0);
    const double r = gagliardo_nirenberg_ratio(u, Alpha(0.75));
    return std::abs(r - 1.0 / (2.0 * pi)) <= 1e-13;
  });

  check("dispersion strength outside (1/2,1) is rejected", [] {
    bool rejected = false;
    try {
      Alpha{1.2};
    } catch (const ConfigError& e) {
      rejected = std::string(e.what()).find("alpha out of (1/2,1)") != std::string::npos;
    }
    bool endpoint_plain = false;
    try {
      Alpha{1.0};
    } catch (const ConfigError&) {
      endpoint_plain = true;
    }
    const Alpha cmp(1.0, true);
    return rejected && endpoint_plain && cmp.value() == 1.0;
  });

  check("single-mode nonlinear run matches the closed-form phase", [] {
    SpectralField u0{GridSpec(8)};
    u0.set(2, 1.0);
    EvolutionConfig e;
    e.mu = -1;
    e.dt = 1e-3;
    e.store_fields = true;
    e.sample_every = 1 << 28;
    const double T = 0.05;
    const SpectralField uT = evolve(u0, T, e).fields.back();
    const cplx expected = std::exp(cplx(0.0, (std::pow(2.0, 1.5) + 1.0) * T));
    return std::abs(uT.at(2) - expected) <= 1e-12;
  });

  check("Hamiltonian perturbation ratio: zero g gives 0, zero pair rejected", [] {
    const GridSpec g(16);
    const SpectralField f = random_field(g, 1.0, 2);
    const SpectralField zero{g};
    bool zero_ok = hamiltonian_difference_ratio(f, zero, Alpha(0.75)) == 0.0;
    bool rejected = false;
    try {
      hamiltonian_difference_ratio(zero, zero, Alpha(0.75));
    } catch (const InputError&) {
      rejected = true;
    }
    return zero_ok && rejected;
  });

  check("convolution ratio is translation invariant", [] {
    const double a = convolution_sum_ratio(1.2, 0.9, 0, 5, 512);
    const double b = convolution_sum_ratio(1.2, 0.9, 100, 105, 512);
    const double c = convolution_sum_ratio(1.2, 0.9, 5, 0, 512);
    return std::abs(a - b) <= 1e-12 * a && std::abs(a - c) <= 1e-12 * a;
  });

  check("CSV quoting doubles quotes and wraps separators", [] {
    AuditReport::Table t{"t", {"a,b", "c\"d", "plain"}, {{1.5, 2.0, 3.0}}};
    return table_to_csv(t) == "\"a,b\",\"c\"\"d\",plain\n1.5,2,3\n";
  });

  check("canonical JSON masks the wall-clock field", [] {
    AuditReport r;
    r.name = "probe";
    r.runtime_seconds = 1.25;
    const std::string masked = to_json_canonical(r);
    return masked.find("\"runtime_seconds\": null") != std::string::npos &&
           to_json(r).find("1.25") != std::string::npos;
  });

  rep.pass = failures == 0;
  rep.param("checks", static_cast<long long>(rep.notes.size()));
  rep.param("failures", static_cast<long long>(failures));
  rep.runtime_seconds = timer.seconds();
  return rep;
}

}  // namespace fnls
