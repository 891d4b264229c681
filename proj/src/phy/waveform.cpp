#include "jcsc/phy/waveform.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "jcsc/core/error.hpp"
#include "jcsc/kernels/kernels.hpp"
#include "jcsc/phy/fft.hpp"

namespace jcsc::phy {

std::string_view to_string(Mode mode) {
  return mode == Mode::plain_ofdm ? "plain_ofdm" : "cd_ofdm";
}

Mode mode_from_string(std::string_view name) {
  if (name == "plain_ofdm") return Mode::plain_ofdm;
  if (name == "cd_ofdm") return Mode::cd_ofdm;
  throw ParseError("unknown waveform mode '" + std::string(name) +
                   "' (expected plain_ofdm or cd_ofdm)");
}

double WaveformConfig::subcarrier_spacing_hz() const {
  return bandwidth_hz / static_cast<double>(num_subcarriers);
}

double WaveformConfig::symbol_duration_s() const {
  return static_cast<double>(num_subcarriers + cp_samples) / bandwidth_hz;
}

std::size_t WaveformConfig::data_symbols_per_frame() const {
  return (num_symbols / spread_time) * (num_subcarriers / spread_freq);
}

double WaveformConfig::range_bin_m() const { return kSpeedOfLight / (2.0 * bandwidth_hz); }

double WaveformConfig::max_unambiguous_range_m() const {
  return range_bin_m() * static_cast<double>(cp_samples);
}

double WaveformConfig::velocity_bin_mps() const {
  return kSpeedOfLight /
         (2.0 * carrier_hz * static_cast<double>(num_symbols) * symbol_duration_s());
}

double WaveformConfig::max_unambiguous_velocity_mps() const {
  return velocity_bin_mps() * static_cast<double>(num_symbols) / 2.0;
}

WaveformConfig WaveformConfig::with_mode(Mode m) const {
  WaveformConfig c = *this;
  c.mode = m;
  if (m == Mode::plain_ofdm) c.spread_freq = c.spread_time = 1;
  return c;
}

void WaveformConfig::validate() const {
  if (!(carrier_hz > 0.0)) throw InvariantError("carrier_hz must be positive");
  if (!(bandwidth_hz > 0.0)) throw InvariantError("bandwidth_hz must be positive");
  if (num_subcarriers < 2) throw InvariantError("num_subcarriers must be >= 2");
  if (num_symbols < 1) throw InvariantError("num_symbols must be >= 1");
  if (cp_samples > num_subcarriers) throw InvariantError("cp_samples must not exceed num_subcarriers");
  if (spread_freq < 1 || spread_time < 1) throw InvariantError("spreading lengths must be >= 1");
  if (mode == Mode::plain_ofdm) {
    if (spread_freq != 1 || spread_time != 1)
      throw InvariantError("plain_ofdm requires spread_freq = spread_time = 1");
    return;
  }
  if (!std::has_single_bit(spread_freq))
    throw InvariantError("spread_freq = " + std::to_string(spread_freq) +
                         " is not a power of two (no Hadamard code of that order)");
  if (!std::has_single_bit(spread_time))
    throw InvariantError("spread_time = " + std::to_string(spread_time) +
                         " is not a power of two (no Hadamard code of that order)");
  if (num_subcarriers % spread_freq != 0)
    throw InvariantError("spread_freq must divide num_subcarriers");
  if (num_symbols % spread_time != 0) throw InvariantError("spread_time must divide num_symbols");
}

double SpreadingCode::chip(std::size_t r, std::size_t k) {
  return (std::popcount(r & k) & 1) ? -1.0 : 1.0;
}

SpreadingCode::SpreadingCode(std::size_t length) : length_(length) {
  if (!std::has_single_bit(length))
    throw InvariantError("Hadamard order must be a power of two");
  chips_.resize(length * length);
  for (std::size_t r = 0; r < length; ++r)
    for (std::size_t k = 0; k < length; ++k) chips_[r * length + k] = chip(r, k);
}

const SpreadingCode& spreading_code(std::size_t length) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<SpreadingCode>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[length];
  if (!slot) slot = std::make_unique<SpreadingCode>(length);
  return *slot;
}

cplx qpsk_symbol(std::uint8_t b0, std::uint8_t b1) {
  constexpr double a = 0.70710678118654752440;
  return {b0 ? -a : a, b1 ? -a : a};
}

Grid map_symbols(std::span<const std::uint8_t> bits, const WaveformConfig& config) {
  Grid grid;
  map_symbols(bits, config, grid);
  return grid;
}

void map_symbols(std::span<const std::uint8_t> bits, const WaveformConfig& config, Grid& grid) {
  config.validate();
  if (bits.size() != config.bits_per_frame())
    throw InvariantError("modulate: expected " + std::to_string(config.bits_per_frame()) +
                         " bits, got " + std::to_string(bits.size()));
  const std::size_t lf = config.spread_freq;
  const std::size_t lt = config.spread_time;
  const std::size_t L = config.spreading_length();
  const std::size_t tiles_per_row = config.tiles_per_symbol_row();
  const SpreadingCode& code = spreading_code(L);
  const auto& k = kernels::active();

  if (grid.rows() != config.num_symbols || grid.cols() != config.num_subcarriers)
    grid = Grid(config.num_symbols, config.num_subcarriers);
  for (std::size_t q = 0; q < config.data_symbols_per_frame(); ++q) {
    const cplx s = qpsk_symbol(bits[2 * q], bits[2 * q + 1]);
    const std::size_t ti = q / tiles_per_row;
    const std::size_t fi = q % tiles_per_row;
    const auto chips = code.row(code_row_for_symbol(q, L));
    for (std::size_t dt = 0; dt < lt; ++dt)
      k.real_scale(chips.subspan(dt * lf, lf), s, grid.row(ti * lt + dt).subspan(fi * lf, lf));
  }
}

std::vector<cplx> synthesize(const Grid& freq_symbols, const WaveformConfig& config) {
  const std::size_t n = config.num_subcarriers;
  const std::size_t cp = config.cp_samples;
  const std::size_t m = config.num_symbols;
  if (freq_symbols.rows() != m || freq_symbols.cols() != n)
    throw InvariantError("synthesize: grid shape does not match configuration");
  std::vector<cplx> body(m * n);
  FftBatch::contiguous(static_cast<int>(n), static_cast<int>(m), FftDirection::inverse)
      .execute(freq_symbols.data(), body);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cplx> out(config.samples_per_frame());
  for (std::size_t s = 0; s < m; ++s) {
    cplx* dst = out.data() + s * (n + cp);
    const cplx* src = body.data() + s * n;
    for (std::size_t i = 0; i < cp; ++i) dst[i] = src[n - cp + i] * scale;
    for (std::size_t i = 0; i < n; ++i) dst[cp + i] = src[i] * scale;
  }
  return out;
}

Grid analyze(std::span<const cplx> time_samples, const WaveformConfig& config) {
  const std::size_t n = config.num_subcarriers;
  const std::size_t cp = config.cp_samples;
  const std::size_t m = config.num_symbols;
  if (time_samples.size() != config.samples_per_frame())
    throw InvariantError("analyze: sample count does not match configuration");
  // Strided batch that skips each prefix: transform s reads samples
  // [s(n+cp) + cp, s(n+cp) + cp + n).
  Grid out(m, n);
  FftBatch fft(FftLayout{static_cast<int>(n), static_cast<int>(m), 1, static_cast<int>(n + cp), 1,
                         static_cast<int>(n)},
               FftDirection::forward);
  fft.execute(time_samples.subspan(cp), out.data());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (cplx& v : out.data()) v *= scale;
  return out;
}

FrameGrid modulate(std::span<const std::uint8_t> bits, const WaveformConfig& config) {
  FrameGrid frame;
  frame.data_bits.assign(bits.begin(), bits.end());
  frame.freq_symbols = map_symbols(bits, config);
  frame.time_samples = synthesize(frame.freq_symbols, config);
  return frame;
}

std::vector<std::uint8_t> demodulate(const Grid& received, const WaveformConfig& config) {
  config.validate();
  if (received.rows() != config.num_symbols || received.cols() != config.num_subcarriers)
    throw InvariantError("demodulate: grid shape does not match configuration");
  const std::size_t lf = config.spread_freq;
  const std::size_t lt = config.spread_time;
  const std::size_t L = config.spreading_length();
  const std::size_t tiles_per_row = config.tiles_per_symbol_row();
  const SpreadingCode& code = spreading_code(L);
  const auto& k = kernels::active();

  std::vector<std::uint8_t> bits(config.bits_per_frame());
  for (std::size_t q = 0; q < config.data_symbols_per_frame(); ++q) {
    const std::size_t ti = q / tiles_per_row;
    const std::size_t fi = q % tiles_per_row;
    const auto chips = code.row(code_row_for_symbol(q, L));
    cplx acc(0.0, 0.0);
    for (std::size_t dt = 0; dt < lt; ++dt)
      acc += k.real_dot(chips.subspan(dt * lf, lf), received.row(ti * lt + dt).subspan(fi * lf, lf));
    // Scaling by 1/L does not change the hard decision.
    bits[2 * q] = acc.real() < 0.0 ? 1 : 0;
    bits[2 * q + 1] = acc.imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

double bit_error_rate(std::span<const std::uint8_t> sent, std::span<const std::uint8_t> received) {
  if (sent.size() != received.size() || sent.empty())
    throw std::invalid_argument("bit_error_rate: length mismatch or empty input");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < sent.size(); ++i) errors += (sent[i] != received[i]);
  return static_cast<double>(errors) / static_cast<double>(sent.size());
}

}  // namespace jcsc::phy
