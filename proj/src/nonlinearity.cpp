#include "fnls/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fnls/errors.hpp"
#include "fnls/norms.hpp"
#include "fnls/transforms.hpp"

namespace fnls {

namespace {
constexpr int kOracleSizeCap = 256;

void check_oracle_size(const SpectralField& field, const char* what) {
  if (field.size() > kOracleSizeCap)
    throw CostError(std::string(what) + " oracle limited to grids of size <= " +
                    std::to_string(kOracleSizeCap) + ", got " + std::to_string(field.size()));
}
}  // namespace

SpectralField cubic(const SpectralField& field, Dealias dealias) {
  if (!field.is_finite()) throw InputError("cubic of a non-finite field");
  const int pad = dealias == Dealias::strict ? 2 : 1;
  std::vector<cplx> u = inverse_transform_padded(field, pad);
  for (cplx& v : u) v *= std::norm(v);
  return forward_transform_truncating(u, field.grid(), pad);
}

SpectralField cubic_oracle(const SpectralField& field) {
  check_oracle_size(field, "cubic");
  if (!field.is_finite()) throw InputError("cubic of a non-finite field");
  const GridSpec& g = field.grid();
  auto c = field.coeffs();
  const int lo = g.min_freq(), hi = g.max_freq();
  SpectralField out(g);
  for (int k = lo; k <= hi; ++k) {
    cplx sum{0.0, 0.0};
    for (int k1 = lo; k1 <= hi; ++k1) {
      for (int k2 = lo; k2 <= hi; ++k2) {
        int k3 = k - k1 + k2;
        if (k3 < lo || k3 > hi) continue;
        sum += c[g.index_of(k1)] * std::conj(c[g.index_of(k2)]) * c[g.index_of(k3)];
      }
    }
    out.set(k, sum);
  }
  return out;
}

double resonant_constant(const SpectralField& field) {
  if (!field.is_finite()) throw InputError("resonant constant of a non-finite field");
  double sum = 0.0;
  for (const cplx& c : field.coeffs()) sum += std::norm(c);
  return 2.0 * sum;
}

namespace {
SpectralField rho_of(const SpectralField& field) {
  SpectralField rho(field.grid());
  auto in = field.coeffs();
  auto out = rho.coeffs();
  for (size_t i = 0; i < in.size(); ++i) out[i] = -std::norm(in[i]) * in[i];
  return rho;
}
}  // namespace

ResonantParts resonant_decompose(const SpectralField& field) {
  ResonantParts parts;
  parts.P = resonant_constant(field);
  parts.rho = rho_of(field);
  SpectralField R = cubic(field, Dealias::strict);
  auto rc = R.coeffs();
  auto uc = field.coeffs();
  auto pc = parts.rho.coeffs();
  for (size_t i = 0; i < rc.size(); ++i) rc[i] -= parts.P * uc[i] + pc[i];
  parts.R = std::move(R);
  return parts;
}

ResonantParts resonant_decompose_oracle(const SpectralField& field) {
  check_oracle_size(field, "resonant decomposition");
  ResonantParts parts;
  parts.P = resonant_constant(field);
  parts.rho = rho_of(field);

  const GridSpec& g = field.grid();
  auto c = field.coeffs();
  const int lo = g.min_freq(), hi = g.max_freq();
  SpectralField R(g);
  for (int k = lo; k <= hi; ++k) {
    cplx sum{0.0, 0.0};
    for (int k1 = lo; k1 <= hi; ++k1) {
      if (k1 == k) continue;
      for (int k2 = lo; k2 <= hi; ++k2) {
        if (k2 == k1) continue;
        int k3 = k - k1 + k2;
        if (k3 < lo || k3 > hi) continue;
        sum += c[g.index_of(k1)] * std::conj(c[g.index_of(k2)]) * c[g.index_of(k3)];
      }
    }
    R.set(k, sum);
  }
  parts.R = std::move(R);
  return parts;
}

MultilinearParts resonant_decompose_multilinear(const SpectralField& u, const SpectralField& v,
                                                const SpectralField& w) {
  if (u.grid() != v.grid() || u.grid() != w.grid()) throw InputError("field grids differ");
  if (!u.is_finite() || !v.is_finite() || !w.is_finite())
    throw InputError("multilinear decomposition of a non-finite field");

  MultilinearParts parts;
  parts.rho = SpectralField(u.grid());
  auto uc = u.coeffs();
  auto vc = v.coeffs();
  auto wc = w.coeffs();
  auto pc = parts.rho.coeffs();
  cplx pair_vw{0.0, 0.0};  // sum_m conj(v^(m)) w^(m)
  cplx pair_uv{0.0, 0.0};  // sum_m u^(m) conj(v^(m))
  for (size_t i = 0; i < uc.size(); ++i) {
    pc[i] = -uc[i] * std::conj(vc[i]) * wc[i];
    pair_vw += std::conj(vc[i]) * wc[i];
    pair_uv += uc[i] * std::conj(vc[i]);
  }

  // Full trilinear convolution sum_{k1,k2} u^(k1) conj(v^(k2)) w^(k-k1+k2),
  // which is the transform of u * conj(v) * w, evaluated dealiased.
  std::vector<cplx> us = inverse_transform_padded(u, 2);
  std::vector<cplx> vs = inverse_transform_padded(v, 2);
  std::vector<cplx> ws = inverse_transform_padded(w, 2);
  for (size_t j = 0; j < us.size(); ++j) us[j] *= std::conj(vs[j]) * ws[j];
  SpectralField full = forward_transform_truncating(us, u.grid(), 2);

  // Excluded diagonals: k1 = k contributes u^(k) * pair_vw, k2 = k1
  // contributes w^(k) * pair_uv, and their overlap k1 = k2 = k is -rho^(k).
  auto fc = full.coeffs();
  for (size_t i = 0; i < fc.size(); ++i)
    fc[i] -= pair_vw * uc[i] + pair_uv * wc[i] + pc[i];
  parts.R = std::move(full);
  return parts;
}

double rho_sobolev_norm(const SpectralField& field, double s, double c) {
  if (!(s >= 0.0) || !(c >= 0.0) || !(c <= 2.0 * s))
    throw ConfigError("rho norm requires 0 <= c <= 2s, got s=" + std::to_string(s) +
                      " c=" + std::to_string(c));
  if (!field.is_finite()) throw InputError("rho norm of a non-finite field");

  const GridSpec& g = field.grid();
  double sum = 0.0;
  for (int k = g.min_freq(); k <= g.max_freq(); ++k) {
    double a2 = std::norm(field.at(k));
    sum += a2 * a2 * a2 * jap_pow(static_cast<double>(k), 2.0 * (s + c));
  }
  double closed = std::sqrt(sum);

  double assembled = norm(rho_of(field), NormSpec::sobolev(s + c));
  double scale = std::max(closed, assembled);
  if (scale > 0.0 && std::fabs(closed - assembled) > 1e-12 * scale)
    throw std::logic_error("rho norm closed form disagrees with assembled field norm");
  return closed;
}

}  // namespace fnls
