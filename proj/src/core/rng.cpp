#include "jcsc/core/rng.hpp"

namespace jcsc::core {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngHandle RngHandle::substream(std::uint64_t tag) const {
  std::uint64_t a = stream_id ^ 0xD1B54A32D192ED03ULL;
  std::uint64_t b = tag + 0x8CB92BA72F3D8DD7ULL;
  const std::uint64_t mixed = splitmix64(a) ^ (splitmix64(b) * 0x9E3779B97F4A7C15ULL);
  return RngHandle{seed, mixed};
}

Xoshiro256pp::Xoshiro256pp(RngHandle handle) {
  std::uint64_t x = handle.seed;
  std::uint64_t y = handle.stream_id ^ 0x6A09E667F3BCC909ULL;
  std::uint64_t state = splitmix64(x) ^ (splitmix64(y) << 1);
  for (auto& word : s_) word = splitmix64(state);
  // All-zero state is a fixed point of xoshiro.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire's multiply-shift with rejection; exact and portable.
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace jcsc::core
