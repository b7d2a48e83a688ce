#include "sgrass/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

#include "sgrass/error.hpp"

namespace sgrass {
namespace {

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are created once per (length, direction) and never destroyed.
class PlanCache {
 public:
  fftw_plan get(int n, bool inverse) {
    const std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, inverse);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, in, out, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, bool>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

CVector transform(const CVector& x, bool inverse) {
  const auto n = static_cast<int>(x.size());
  CVector in = x;
  CVector out(x.size());
  fftw_plan plan = plan_cache().get(n, inverse);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  out *= 1.0 / std::sqrt(static_cast<double>(n));
  return out;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

CVector fft(const CVector& x, bool inverse) {
  if (!is_power_of_two(static_cast<std::size_t>(x.size()))) {
    fail(ErrorCode::NonPowerOfTwoLength,
         "fft length " + std::to_string(x.size()) + " is not a power of two");
  }
  return transform(x, inverse);
}

CVector dft(const CVector& x, bool inverse) {
  if (x.size() == 0) fail(ErrorCode::DimensionMismatch, "empty input");
  return transform(x, inverse);
}

}  // namespace sgrass
