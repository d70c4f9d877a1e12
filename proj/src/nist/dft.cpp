#include "bellrand/nist/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>

#include "bellrand/error.hpp"

namespace bellrand::nist {

namespace {
// FFTW planning is not thread safe; execution is.
std::mutex planner_mutex;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
}  // namespace

std::vector<double> half_spectrum_moduli(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n < 2) return {};
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
  if (!in || !out) throw Error(ErrorKind::InvalidParams, "fftw allocation failed");

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) in.get()[i] = (bits[i] & 1) ? 1.0 : -1.0;
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  std::vector<double> moduli(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) moduli[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
  return moduli;
}

}  // namespace bellrand::nist
