#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace fcssk::detail {

namespace {

// fftw planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
};

}  // namespace

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> in, std::size_t size) {
  std::vector<std::complex<double>> buf(size);
  std::copy_n(in.begin(), std::min(in.size(), size), buf.begin());
  if (size == 0) {
    return buf;
  }
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(static_cast<int>(size), data, data, FFTW_FORWARD, FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  return buf;
}

}  // namespace fcssk::detail
