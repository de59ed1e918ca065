#include "fnls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fnls/errors.hpp"
#include "fnls/transforms.hpp"

namespace fnls {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::string NormSpec::label() const {
  switch (kind) {
    case Kind::sobolev: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "H%g", s);
      return buf;
    }
    case Kind::lebesgue2:
      return "L2";
    case Kind::lebesgue4:
      return "L4";
    case Kind::lebesgue_inf:
      return "Linf";
  }
  return "?";
}

double norm(const SpectralField& field, NormSpec spec) {
  if (!field.is_finite()) throw InputError("norm of a non-finite field");
  if (!std::isfinite(spec.s)) throw InputError("non-finite Sobolev index");
  const GridSpec& g = field.grid();

  switch (spec.kind) {
    case NormSpec::Kind::sobolev: {
      double sum = 0.0;
      for (int k = g.min_freq(); k <= g.max_freq(); ++k)
        sum += jap_pow(static_cast<double>(k), 2.0 * spec.s) * std::norm(field.at(k));
      return std::sqrt(sum);
    }
    case NormSpec::Kind::lebesgue2: {
      double sum = 0.0;
      for (const cplx& c : field.coeffs()) sum += std::norm(c);
      return std::sqrt(kTwoPi * sum);
    }
    case NormSpec::Kind::lebesgue4: {
      std::vector<cplx> u = inverse_transform_padded(field, 2);
      double sum = 0.0;
      for (const cplx& v : u) {
        double a = std::norm(v);
        sum += a * a;
      }
      return std::pow(kTwoPi / static_cast<double>(u.size()) * sum, 0.25);
    }
    case NormSpec::Kind::lebesgue_inf: {
      std::vector<cplx> u = inverse_transform_padded(field, 2);
      double best = 0.0;
      for (const cplx& v : u) best = std::max(best, std::abs(v));
      return best;
    }
  }
  throw InputError("unknown norm kind");
}

SpectralField random_field(GridSpec grid, double sigma, std::uint64_t seed) {
  if (!std::isfinite(sigma)) throw ConfigError("non-finite decay exponent sigma");
  SpectralField out(grid);
  const std::uint64_t seed_mix = splitmix64(seed);
  for (int k = grid.min_freq() + 1; k <= grid.max_freq(); ++k) {
    std::uint64_t h = splitmix64(seed_mix ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(k)));
    double theta = kTwoPi * (static_cast<double>(h >> 11) * 0x1.0p-53);
    double amp = jap_pow(static_cast<double>(k), -sigma);
    out.set(k, cplx{amp * std::cos(theta), amp * std::sin(theta)});
  }
  return out;
}

}  // namespace fnls
