#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace fnls {

using cplx = std::complex<double>;

// Uniform collocation grid on [0, 2*pi) with an even number of nodes M >= 4.
// The resolved frequency set is K = {-M/2, ..., M/2 - 1}.
struct GridSpec {
  int size = 0;

  GridSpec() = default;
  explicit GridSpec(int M);

  int min_freq() const { return -size / 2; }
  int max_freq() const { return size / 2 - 1; }
  bool contains_freq(int k) const { return k >= min_freq() && k <= max_freq(); }
  // Index of frequency k in centered storage order (-M/2 first).
  int index_of(int k) const { return k + size / 2; }
  int freq_at(int idx) const { return idx - size / 2; }
  double node(int j) const;

  bool operator==(const GridSpec&) const = default;
};

// A 2*pi-periodic complex field stored by its Fourier coefficients c_k for
// k in K, in ascending frequency order.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridSpec grid);
  SpectralField(GridSpec grid, std::vector<cplx> centered_coeffs);

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size; }

  cplx at(int k) const;
  void set(int k, cplx value);

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  bool is_finite() const;

 private:
  GridSpec grid_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(cplx scale, const SpectralField& a);

}  // namespace fnls
