#pragma once

#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

// Forward DFT with the analysis normalization
//   c_k = (1/M) * sum_j values[j] * exp(-i k x_j),   x_j = 2*pi*j/M,
// for k in K = {-M/2, ..., M/2 - 1}. values.size() must equal grid.size and
// all samples must be finite.
SpectralField forward_transform(const std::vector<cplx>& values, GridSpec grid);

// Synthesis at the collocation nodes: u_j = sum_k c_k * exp(i k x_j).
std::vector<cplx> inverse_transform(const SpectralField& field);

// Synthesis on a refined grid of pad_factor*M nodes (the coefficients are
// embedded in the larger band unchanged). pad_factor >= 1.
std::vector<cplx> inverse_transform_padded(const SpectralField& field, int pad_factor);

// Analysis on a refined grid of pad_factor*M nodes followed by truncation of
// the result back to the band K of `grid`.
SpectralField forward_transform_truncating(const std::vector<cplx>& values, GridSpec grid,
                                           int pad_factor);

}  // namespace fnls
