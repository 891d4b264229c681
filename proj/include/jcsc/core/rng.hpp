#pragma once

#include <array>
#include <cstdint>
#include <span>

#include <boost/random/normal_distribution.hpp>

namespace jcsc::core {

/// Address of one independent random stream. Every trial owns its own handle,
/// so results never depend on the order in which trials are evaluated.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Child stream for a sub-purpose (a trial index, a sweep point, "noise"
  /// vs "bits"). Deterministic in (seed, stream_id, tag).
  [[nodiscard]] RngHandle substream(std::uint64_t tag) const;

  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256++ seeded from a RngHandle via splitmix64.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(RngHandle handle);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

/// Draw helpers over one stream. Only portable algorithms are used so the
/// same handle yields the same numbers on every platform.
class Rng {
 public:
  explicit Rng(RngHandle handle) : engine_(handle) {}

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer on [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() { return normal_(engine_); }

  void fill_normal(std::span<double> out) {
    for (double& x : out) x = normal_(engine_);
  }

  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

  Xoshiro256pp& engine() { return engine_; }

 private:
  Xoshiro256pp engine_;
  boost::random::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace jcsc::core
