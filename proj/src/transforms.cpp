#include "fnls/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "fnls/errors.hpp"

namespace fnls {
namespace {

bool all_finite(const std::vector<cplx>& v) {
  for (const cplx& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

// Process-wide cache of in-place FFTW plans. Plans are created with
// FFTW_ESTIMATE (deterministic algorithm choice, no timing runs) and
// FFTW_UNALIGNED (valid for any buffer via the new-array interface).
// Plan creation is serialized; execution is thread-safe.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans p;
    return p;
  }

  void execute(int n, int sign, cplx* buffer) {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto key = std::make_pair(n, sign);
      auto it = plans_.find(key);
      if (it == plans_.end()) {
        std::vector<cplx> scratch(static_cast<size_t>(n));
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(scratch.data()),
                                reinterpret_cast<fftw_complex*>(scratch.data()), sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buffer),
                     reinterpret_cast<fftw_complex*>(buffer));
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

SpectralField forward_transform(const std::vector<cplx>& values, GridSpec grid) {
  const int M = grid.size;
  if (static_cast<int>(values.size()) != M)
    throw InputError("sample count " + std::to_string(values.size()) +
                     " does not match grid size " + std::to_string(M));
  if (!all_finite(values)) throw InputError("non-finite sample passed to forward transform");

  std::vector<cplx> work = values;
  FftPlans::instance().execute(M, FFTW_FORWARD, work.data());

  SpectralField out(grid);
  auto coeffs = out.coeffs();
  const double scale = 1.0 / static_cast<double>(M);
  for (int k = grid.min_freq(); k <= grid.max_freq(); ++k) {
    int f = k >= 0 ? k : k + M;
    coeffs[grid.index_of(k)] = work[f] * scale;
  }
  return out;
}

std::vector<cplx> inverse_transform(const SpectralField& field) {
  return inverse_transform_padded(field, 1);
}

std::vector<cplx> inverse_transform_padded(const SpectralField& field, int pad_factor) {
  if (pad_factor < 1) throw ConfigError("pad factor must be >= 1");
  if (!field.is_finite()) throw InputError("non-finite coefficient passed to inverse transform");
  const GridSpec& g = field.grid();
  const int P = g.size * pad_factor;

  std::vector<cplx> work(static_cast<size_t>(P), cplx{0.0, 0.0});
  for (int k = g.min_freq(); k <= g.max_freq(); ++k) {
    int f = k >= 0 ? k : k + P;
    work[f] = field.at(k);
  }
  FftPlans::instance().execute(P, FFTW_BACKWARD, work.data());
  return work;
}

SpectralField forward_transform_truncating(const std::vector<cplx>& values, GridSpec grid,
                                           int pad_factor) {
  if (pad_factor < 1) throw ConfigError("pad factor must be >= 1");
  const int P = grid.size * pad_factor;
  if (static_cast<int>(values.size()) != P)
    throw InputError("sample count " + std::to_string(values.size()) +
                     " does not match padded grid size " + std::to_string(P));
  if (!all_finite(values)) throw InputError("non-finite sample passed to forward transform");

  std::vector<cplx> work = values;
  FftPlans::instance().execute(P, FFTW_FORWARD, work.data());

  SpectralField out(grid);
  auto coeffs = out.coeffs();
  const double scale = 1.0 / static_cast<double>(P);
  for (int k = grid.min_freq(); k <= grid.max_freq(); ++k) {
    int f = k >= 0 ? k : k + P;
    coeffs[grid.index_of(k)] = work[f] * scale;
  }
  return out;
}

}  // namespace fnls
