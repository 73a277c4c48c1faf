#pragma once

#include <cstddef>

#include "fcssk/sigcore.hpp"

namespace fcssk {

struct SyncEstimate {
  std::size_t tau_hat = 0;  // samples, in [0, n)
  double delta_f1 = 0.0;    // Hz, beat tone of the segment after the offset
  double delta_f2 = 0.0;    // Hz, beat tone of the segment before the offset
  double confidence = 0.0;  // rejected-candidate spread / chosen-candidate spread
};

/// Blind chirp-timing estimate from one period of the received stream.
///
/// The first period is mixed against the local reference; the strongest beat
/// line f_p (parabolic sub-bin refinement) gives the two offset candidates
/// tau = n*f_p/b0 and tau = n*(1 - f_p/b0). Each candidate is applied and
/// re-mixed, and the one whose baseband spectrum has the smaller
/// energy-weighted spread wins (ties toward the smaller offset).
///
/// Throws ConfigError if rx is shorter than one period, SyncFailure when the
/// beat spectrum has no line above the noise floor.
SyncEstimate spectral_timing(const IqBuffer& rx, const ChirpParams& params);

/// spectral_timing followed by two refinements over the whole buffer:
///   1. a change-point scan that finds where, in every period, the beat
///      switches from the line f_b + b0 to f_b (robust at low SNR and under
///      heavy modulation, where the spectral line is smeared);
///   2. a least-squares fit of the b0 slope break in the unwrapped beat phase
///      (+-128 samples), kept only when the phase residual is small.
/// Errors as spectral_timing.
SyncEstimate estimate_timing(const IqBuffer& rx, const ChirpParams& params);

/// Drops the first tau_hat samples.
IqBuffer align(const IqBuffer& rx, const SyncEstimate& est);

}  // namespace fcssk
