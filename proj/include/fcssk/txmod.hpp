#pragma once

#include <cstddef>

#include "fcssk/codec.hpp"
#include "fcssk/sigcore.hpp"

namespace fcssk {

/// Modulator configuration for one code and bitrate.
/// kappa0/kappa1 are the per-sample slopes keyed by coded bit 0/1.
struct ModParams {
  ChirpParams chirp;
  CodeName code = CodeName::manchester;
  double bitrate = 0.0;          // info bits/s
  std::size_t m = 0;             // samples per info bit
  std::size_t coded_bit_len = 0; // samples per coded bit
  double kappa0 = 0.0;           // Hz/sample
  double kappa1 = 0.0;           // Hz/sample

  /// Samples spanned by one codeword (M for Manchester, 6M for 6b8b).
  std::size_t symbol_len() const noexcept;
  /// Info bits carried by one codeword.
  std::size_t info_bits_per_symbol() const noexcept;
};

/// Throws ConfigError when fs/bitrate or the coded-bit length is not an integer.
ModParams make_mod_params(const ChirpParams& chirp, CodeName code, double bitrate);

/// Fractional-slope modulation of a coded frame. Coded bit x selects slope
/// kappa_x for each of its coded_bit_len samples; the accumulated frequency is
/// wrapped by exactly b0 at every chirp-period boundary.
IqBuffer modulate(const CodedFrame& frame, const ModParams& mp);

/// Noiseless deviation of the modulated IF from the reference chirp:
///   d[i] = sum_{j <= i} (kappa_{x[j]} - k0)
/// Returns to zero at the last sample of every info bit (Manchester) or
/// codeword (6b8b).
IfTrack ideal_deviation_track(const CodedFrame& frame, const ModParams& mp);

/// Largest |d| any codeword of the active code can reach, Hz.
double peak_deviation(const ModParams& mp);

}  // namespace fcssk
