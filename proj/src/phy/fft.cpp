#include "jcsc/phy/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace jcsc::phy {

namespace {

std::size_t extent(int n, int howmany, int stride, int dist) {
  return static_cast<std::size_t>((howmany - 1) * dist + (n - 1) * stride + 1);
}

using PlanKey = std::tuple<int, int, int, int, int, int, int>;

std::shared_ptr<void> cached_plan(const FftLayout& l, FftDirection dir) {
  // FFTW planning is not thread-safe.
  static std::mutex mutex;
  static std::map<PlanKey, std::shared_ptr<void>> cache;
  const PlanKey key{l.n, l.howmany, l.istride, l.idist, l.ostride, l.odist, static_cast<int>(dir)};
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<std::complex<double>> in(extent(l.n, l.howmany, l.istride, l.idist));
  std::vector<std::complex<double>> out(extent(l.n, l.howmany, l.ostride, l.odist));
  int n = l.n;
  fftw_plan plan = fftw_plan_many_dft(
      1, &n, l.howmany, reinterpret_cast<fftw_complex*>(in.data()), nullptr, l.istride, l.idist,
      reinterpret_cast<fftw_complex*>(out.data()), nullptr, l.ostride, l.odist,
      dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
  std::shared_ptr<void> holder(plan, [](void* p) { fftw_destroy_plan(static_cast<fftw_plan>(p)); });
  cache.emplace(key, holder);
  return holder;
}

}  // namespace

FftBatch::FftBatch(FftLayout layout, FftDirection direction) : layout_(layout) {
  if (layout_.n < 1 || layout_.howmany < 1) throw std::invalid_argument("FftBatch: bad layout");
  if (layout_.idist == 0) layout_.idist = layout_.n * layout_.istride;
  if (layout_.odist == 0) layout_.odist = layout_.n * layout_.ostride;
  plan_ = cached_plan(layout_, direction);
}

FftBatch FftBatch::contiguous(int n, int howmany, FftDirection direction) {
  return FftBatch(FftLayout{n, howmany, 1, n, 1, n}, direction);
}

void FftBatch::execute(std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out) const {
  const auto& l = layout_;
  if (in.size() < extent(l.n, l.howmany, l.istride, l.idist) ||
      out.size() < extent(l.n, l.howmany, l.ostride, l.odist))
    throw std::invalid_argument("FftBatch::execute: buffer too small for layout");
  // Out-of-place complex plans preserve their input.
  auto* src = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data()));
  fftw_execute_dft(static_cast<fftw_plan>(plan_.get()), src,
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace jcsc::phy
