#include "fnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fnls/errors.hpp"

namespace fnls {

GridSpec::GridSpec(int M) : size(M) {
  if (M < 4 || M % 2 != 0)
    throw ConfigError("grid size must be even and >= 4, got " + std::to_string(M));
}

double GridSpec::node(int j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(size);
}

SpectralField::SpectralField(GridSpec grid) : grid_(grid), coeffs_(grid.size, cplx{0.0, 0.0}) {
  if (grid.size < 4) throw ConfigError("spectral field requires a validated grid");
}

SpectralField::SpectralField(GridSpec grid, std::vector<cplx> centered_coeffs)
    : grid_(grid), coeffs_(std::move(centered_coeffs)) {
  if (static_cast<int>(coeffs_.size()) != grid_.size)
    throw InputError("coefficient count " + std::to_string(coeffs_.size()) +
                     " does not match grid size " + std::to_string(grid_.size));
}

cplx SpectralField::at(int k) const {
  if (!grid_.contains_freq(k)) throw InputError("frequency " + std::to_string(k) + " outside grid band");
  return coeffs_[grid_.index_of(k)];
}

void SpectralField::set(int k, cplx value) {
  if (!grid_.contains_freq(k)) throw InputError("frequency " + std::to_string(k) + " outside grid band");
  coeffs_[grid_.index_of(k)] = value;
}

bool SpectralField::is_finite() const {
  for (const cplx& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw InputError("field grids differ");
  SpectralField out = a;
  auto oc = out.coeffs();
  auto bc = b.coeffs();
  for (size_t i = 0; i < oc.size(); ++i) oc[i] += bc[i];
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw InputError("field grids differ");
  SpectralField out = a;
  auto oc = out.coeffs();
  auto bc = b.coeffs();
  for (size_t i = 0; i < oc.size(); ++i) oc[i] -= bc[i];
  return out;
}

SpectralField operator*(cplx scale, const SpectralField& a) {
  SpectralField out = a;
  for (auto& c : out.coeffs()) c *= scale;
  return out;
}

}  // namespace fnls
