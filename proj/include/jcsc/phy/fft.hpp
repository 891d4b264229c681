#pragma once

#include <complex>
#include <memory>
#include <span>

namespace jcsc::phy {

enum class FftDirection { forward, inverse };

/// Layout of a batch of 1-D transforms over strided data.
struct FftLayout {
  int n = 0;
  int howmany = 1;
  int istride = 1;
  int idist = 0;
  int ostride = 1;
  int odist = 0;
  friend bool operator==(const FftLayout&, const FftLayout&) = default;
};

/// Batched, unnormalised complex DFT (forward uses e^{-j2pi nk/N}, inverse
/// e^{+j2pi nk/N}). Plans are built with FFTW_ESTIMATE, so they are
/// deterministic, and are shared process-wide; execute() is thread-safe.
class FftBatch {
 public:
  FftBatch(FftLayout layout, FftDirection direction);

  /// Contiguous transforms of length n, one after another.
  static FftBatch contiguous(int n, int howmany, FftDirection direction);

  void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

  [[nodiscard]] const FftLayout& layout() const { return layout_; }

 private:
  FftLayout layout_;
  std::shared_ptr<void> plan_;
};

}  // namespace jcsc::phy
