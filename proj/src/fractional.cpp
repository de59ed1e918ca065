#include "fnls/fractional.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "fnls/errors.hpp"

namespace fnls {

namespace {
constexpr long long kExtendedPrecisionThreshold = 10000;
}

Alpha::Alpha(double value, bool comparison_mode)
    : value_(value), comparison_mode_(comparison_mode) {
  if (!std::isfinite(value)) throw ConfigError("alpha must be finite");
  bool ok = value > 0.5 && value < 1.0;
  if (comparison_mode) ok = ok || value == 1.0;
  if (!ok)
    throw ConfigError("alpha out of (1/2,1): " + std::to_string(value) +
                      (comparison_mode ? " (comparison mode also admits alpha = 1)" : ""));
}

double symbol_laplacian(long long n, Alpha alpha) {
  if (n == 0) return 0.0;
  return std::pow(std::fabs(static_cast<double>(n)), 2.0 * alpha.value());
}

SpectralField apply_frac_derivative(const SpectralField& field, Alpha alpha) {
  SpectralField out = field;
  const GridSpec& g = field.grid();
  for (int k = g.min_freq(); k <= g.max_freq(); ++k) {
    double mult = k == 0 ? 0.0 : std::pow(std::fabs(static_cast<double>(k)), alpha.value());
    out.set(k, mult * field.at(k));
  }
  return out;
}

SpectralField propagate_linear(const SpectralField& field, double t, Alpha alpha,
                               double gauge_P) {
  if (!std::isfinite(t)) throw InputError("non-finite propagation time");
  if (!std::isfinite(gauge_P) || gauge_P < 0.0)
    throw InputError("gauge constant must be finite and >= 0");
  SpectralField out = field;
  const GridSpec& g = field.grid();
  for (int k = g.min_freq(); k <= g.max_freq(); ++k) {
    double theta = t * (symbol_laplacian(k, alpha) - gauge_P);
    out.set(k, cplx{std::cos(theta), std::sin(theta)} * field.at(k));
  }
  return out;
}

SpectralField project(const SpectralField& field, Projection p) {
  const GridSpec& g = field.grid();
  if (p.cutoff < 0 || p.cutoff >= g.size / 2)
    throw ConfigError("projection cutoff " + std::to_string(p.cutoff) +
                      " not resolved on grid of size " + std::to_string(g.size) +
                      " (requires 0 <= cutoff < M/2)");
  SpectralField out(g);
  for (int k = g.min_freq(); k <= g.max_freq(); ++k) {
    bool low = std::abs(k) <= p.cutoff;
    if ((p.mode == Projection::Mode::low) == low) out.set(k, field.at(k));
  }
  return out;
}

double freq_quadruple_gap(long long j, long long k, long long n, Alpha alpha) {
  const long long a1 = n + k, a2 = n + j + k, a3 = n + j, a4 = n;
  long long scale = std::max(std::max(std::llabs(a1), std::llabs(a2)),
                             std::max(std::llabs(a3), std::llabs(a4)));
  const double two_alpha = 2.0 * alpha.value();
  if (scale > kExtendedPrecisionThreshold) {
    long double p1 = powl(fabsl(static_cast<long double>(a1)), static_cast<long double>(two_alpha));
    long double p2 = powl(fabsl(static_cast<long double>(a2)), static_cast<long double>(two_alpha));
    long double p3 = powl(fabsl(static_cast<long double>(a3)), static_cast<long double>(two_alpha));
    long double p4 = powl(fabsl(static_cast<long double>(a4)), static_cast<long double>(two_alpha));
    return static_cast<double>(fabsl((p1 + p3) - (p2 + p4)));
  }
  auto p = [two_alpha](long long m) {
    return m == 0 ? 0.0 : std::pow(std::fabs(static_cast<double>(m)), two_alpha);
  };
  return std::fabs((p(a1) + p(a3)) - (p(a2) + p(a4)));
}

}  // namespace fnls
