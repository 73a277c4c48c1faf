#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <utility>

#include "fcssk/sigcore.hpp"

namespace fcssk {

/// Seed derivation: splitmix64 folded over (base, tags...). Distinct tag
/// tuples give statistically independent streams.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// Reproducible random source.
///
/// Uniforms come from std::mt19937_64 (output sequence fixed by the C++
/// standard); doubles use the top 53 bits. Gaussians use the Box-Muller
/// transform on (u1 in (0,1], u2 in [0,1)):
///   r = sqrt(-2 ln u1), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2).
/// std::normal_distribution is not used because its algorithm is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  std::pair<double, double> gaussian_pair();

 private:
  std::mt19937_64 engine_;
};

/// snr_db: signal power over total complex noise power, unit signal amplitude.
/// std::nullopt is the noiseless sentinel.
struct ChannelConfig {
  std::optional<double> snr_db;
  std::size_t delay = 0;
  std::uint64_t seed = 0;
};

/// Adds circular complex Gaussian noise of total variance 10^(-snr_db/10)
/// (half per quadrature). Deterministic for a given seed.
IqBuffer apply_awgn(const IqBuffer& buf, std::optional<double> snr_db, std::uint64_t seed);

/// Prepends `delay` samples taken from the tail of the buffer's first chirp
/// period (length `period`, or the whole buffer if shorter), phase-rotated so
/// the stream stays continuous into buf[0]. Throws ConfigError when delay is
/// not smaller than the buffer or the period.
IqBuffer apply_delay(const IqBuffer& buf, std::size_t delay, std::size_t period);

/// Delay, then noise.
IqBuffer apply_channel(const IqBuffer& buf, const ChannelConfig& cfg, std::size_t period);

}  // namespace fcssk
