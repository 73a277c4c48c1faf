#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fcssk {

using Complex = std::complex<double>;

/// Static chirp configuration. Frequencies are in Hz, slopes in Hz per sample.
struct ChirpParams {
  double b0 = 0.0;        // sweep bandwidth, Hz
  double rep_rate = 0.0;  // repetitions per second
  double fs = 0.0;        // sample rate, samples/s
  std::size_t n = 0;      // samples per repetition
  double k0 = 0.0;        // nominal slope, Hz/sample
  double t0 = 0.0;        // repetition period, s
};

/// Validates and derives n = fs/rep_rate, k0 = b0/n, t0 = 1/rep_rate.
/// Throws ConfigError when n is not an integer, AliasingError when b0 >= fs/2.
/// With `strict` set, also enforces the homing-signal envelope
/// (2 <= rep_rate <= 4, b0 >= 700 Hz).
ChirpParams derive_params(double b0, double rep_rate, double fs, bool strict = false);

/// Complex baseband samples at rate fs.
struct IqBuffer {
  std::vector<Complex> samples;
  double fs = 0.0;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
};

/// Instantaneous-frequency sequence in Hz. values[i] belongs to sample
/// offset + i of the stream it was derived from.
struct IfTrack {
  std::vector<double> values;
  double fs = 0.0;
  std::size_t offset = 0;

  std::size_t size() const noexcept { return values.size(); }
};

/// Recursive phase/frequency accumulator:
///   f[i] = f[i-1] + slope[i]   (minus b0 at every period boundary i = k*n, k > 0)
///   phi[i] = phi[i-1] + 2*pi*f[i]/fs
/// Starts from f[-1] = -k0 and phi[-1] = 0, so a constant slope of k0 yields
/// f[0] = 0 and a first sample of exactly 1 + 0j.
class ChirpSynthesizer {
 public:
  explicit ChirpSynthesizer(const ChirpParams& params);

  /// Advances one sample with the given slope and returns the sample.
  Complex next(double slope);

  /// Frequency of the most recently emitted sample, Hz.
  double frequency() const noexcept { return freq_; }
  std::size_t index() const noexcept { return index_; }

 private:
  double b0_;
  double phase_scale_;
  std::size_t period_;
  std::size_t index_ = 0;
  double freq_;
  double phase_ = 0.0;
};

/// Unmodulated sawtooth chirp, n_periods * n samples, starting at phase 0.
IqBuffer reference_chirp(const ChirpParams& params, std::size_t n_periods);

/// Same reference sequence truncated or extended to `count` samples.
IqBuffer reference_samples(const ChirpParams& params, std::size_t count);

/// Phase-difference IF: values[i] = arg(s[i+1] * conj(s[i])) * fs / 2pi, offset 1.
/// Throws SignalError on a zero-magnitude sample or fewer than two samples.
IfTrack instantaneous_frequency(const IqBuffer& buf);

}  // namespace fcssk
