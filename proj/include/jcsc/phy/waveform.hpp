#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace jcsc::phy {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 3.0e8;

enum class Mode { plain_ofdm, cd_ofdm };
enum class Modulation { qpsk };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);  // throws ParseError

/// OFDM numerology plus the code-division spreading tile.
///
/// In cd_ofdm mode every QPSK symbol occupies one spread_freq x spread_time
/// tile of resource elements (subcarriers x OFDM symbols) and is multiplied
/// chip-wise by one row of the order-L Sylvester-Hadamard matrix,
/// L = spread_freq * spread_time. plain_ofdm is the L = 1 special case.
struct WaveformConfig {
  double carrier_hz = 24.0e9;
  double bandwidth_hz = 122.88e6;
  std::size_t num_subcarriers = 2048;
  std::size_t cp_samples = 144;
  std::size_t num_symbols = 64;
  Modulation modulation = Modulation::qpsk;
  Mode mode = Mode::cd_ofdm;
  std::size_t spread_freq = 64;
  std::size_t spread_time = 16;

  [[nodiscard]] double subcarrier_spacing_hz() const;
  [[nodiscard]] double symbol_duration_s() const;
  [[nodiscard]] std::size_t spreading_length() const { return spread_freq * spread_time; }
  [[nodiscard]] std::size_t tiles_per_symbol_row() const { return num_subcarriers / spread_freq; }
  [[nodiscard]] std::size_t data_symbols_per_frame() const;
  [[nodiscard]] std::size_t bits_per_frame() const { return 2 * data_symbols_per_frame(); }
  [[nodiscard]] std::size_t resource_elements() const { return num_subcarriers * num_symbols; }
  [[nodiscard]] std::size_t samples_per_frame() const {
    return num_symbols * (num_subcarriers + cp_samples);
  }

  /// Range resolution c / (2B).
  [[nodiscard]] double range_bin_m() const;
  /// Largest range whose round-trip delay fits in the cyclic prefix.
  [[nodiscard]] double max_unambiguous_range_m() const;
  /// Velocity resolution c / (2 f_c M T).
  [[nodiscard]] double velocity_bin_mps() const;
  [[nodiscard]] double max_unambiguous_velocity_mps() const;

  /// Copy with the mode switched; plain_ofdm forces spread_freq = spread_time = 1.
  [[nodiscard]] WaveformConfig with_mode(Mode m) const;

  /// Throws InvariantError naming the violated rule.
  void validate() const;

  friend bool operator==(const WaveformConfig&, const WaveformConfig&) = default;
};

/// Row-major rows x cols complex matrix (rows = OFDM symbols, cols = subcarriers).
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t size() const { return data_.size(); }

  cplx& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  [[nodiscard]] const cplx& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<cplx> data() { return data_; }
  [[nodiscard]] std::span<const cplx> data() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// One JCS frame: the payload, its resource-element grid, and the
/// cyclic-prefixed time-domain samples (unitary IDFT per OFDM symbol).
struct FrameGrid {
  std::vector<std::uint8_t> data_bits;
  Grid freq_symbols;
  std::vector<cplx> time_samples;
};

/// Rows of the Sylvester-Hadamard matrix of a power-of-two order, as +-1.0.
class SpreadingCode {
 public:
  explicit SpreadingCode(std::size_t length);

  [[nodiscard]] std::size_t length() const { return length_; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return {chips_.data() + r * length_, length_};
  }

  /// H[r][k] = (-1)^popcount(r & k).
  static double chip(std::size_t r, std::size_t k);

 private:
  std::size_t length_;
  std::vector<double> chips_;
};

/// Shared, lazily built codebook of the given order.
const SpreadingCode& spreading_code(std::size_t length);

/// Hadamard row assigned to the q-th data symbol of a frame.
inline std::size_t code_row_for_symbol(std::size_t q, std::size_t length) { return q % length; }

/// Gray-mapped unit-energy QPSK: bit 0 -> +1/sqrt2, bit 1 -> -1/sqrt2 on each rail.
cplx qpsk_symbol(std::uint8_t b0, std::uint8_t b1);

/// Bits -> resource-element grid (mapping + spreading, no IDFT).
Grid map_symbols(std::span<const std::uint8_t> bits, const WaveformConfig& config);
void map_symbols(std::span<const std::uint8_t> bits, const WaveformConfig& config, Grid& out);

/// Full transmit chain: map_symbols followed by synthesize.
FrameGrid modulate(std::span<const std::uint8_t> bits, const WaveformConfig& config);

/// Per-symbol unitary IDFT with cyclic prefix prepended.
std::vector<cplx> synthesize(const Grid& freq_symbols, const WaveformConfig& config);

/// Inverse of synthesize: drop the prefix, unitary DFT per symbol.
Grid analyze(std::span<const cplx> time_samples, const WaveformConfig& config);

/// Despread (cd_ofdm) and hard-decide QPSK. Throws InvariantError when the
/// grid shape does not match the configuration.
std::vector<std::uint8_t> demodulate(const Grid& received, const WaveformConfig& config);

/// Fraction of differing bits. Throws std::invalid_argument on length mismatch.
double bit_error_rate(std::span<const std::uint8_t> sent, std::span<const std::uint8_t> received);

}  // namespace jcsc::phy
