#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fcssk/sigcore.hpp"
#include "fcssk/txmod.hpp"

namespace fcssk {

inline constexpr std::size_t kLowpassTaps = 129;

/// Receiver lowpass cutoff: max(4 * peak ideal deviation, 64 Hz).
double lowpass_cutoff(const ModParams& mp);

/// Linear-phase windowed-sinc lowpass (Hann window), unit DC gain.
std::vector<double> design_lowpass(double cutoff_hz, double fs, std::size_t taps = kLowpassTaps);

/// |H(f)| of a real FIR at frequency f (Hz).
double fir_magnitude(std::span<const double> taps, double freq_hz, double fs);

/// Mixes rx against the reference chirp (rx * conj(c)) and lowpass filters.
/// The filter's (taps-1)/2 group delay is removed, so output sample i stays
/// aligned with rx sample i; the input is zero-extended at both ends.
IqBuffer downconvert(const IqBuffer& rx, const ChirpParams& params, double cutoff_hz);

/// Second-order DPLL configuration. Loop filter gains follow
///   c2 = 2 zeta w0 / fs,  c1 = c2^2 / (4 zeta^2),  w0 = 2 pi f_nat.
struct DpllParams {
  double zeta = 0.0;
  double f_nat = 0.0;  // Hz
  double c1 = 0.0;     // integral path
  double c2 = 0.0;     // proportional path
  double fs = 0.0;
};

/// Throws ConfigError unless fs >= 50 * f_nat and zeta > 0.
DpllParams make_dpll_params(double fs, double f_nat, double zeta = 0.70710678118654752440);

/// f_nat = fs / (2 * coded_bit_len), zeta = 1/sqrt(2).
DpllParams default_dpll_params(const ModParams& mp);

/// Closed-loop response from input phase (rad) to loop frequency
/// (rad/sample) at frequency f:
///   H(z) = (c1 (z-1) + c2 (z-1)^2) / ((z-1)^2 + c2 (z-1) + c1)
std::complex<double> dpll_response(const DpllParams& p, double freq_hz);

/// Runs the loop over bb; output values are the loop frequency in Hz, one per
/// input sample (offset 0). The phase integrator starts at arg(bb[0]).
IfTrack dpll_track(const IqBuffer& bb, const DpllParams& p);

struct LlsParams {
  int lambda = 5;              // polynomial degree
  std::size_t window_len = 0;  // samples
  std::size_t stride = 0;      // samples between window starts
};

/// lambda = 5, window = coded-bit length, stride = window / 4.
LlsParams default_lls_params(const ModParams& mp);

/// Sliding-window polynomial fit of the unwrapped phase.
///
/// The pseudo-inverse of the window Vandermonde matrix is built once; each
/// window's coefficients are one matrix-vector product. Every window reports
/// the derivative on its central stride-long segment; the first and last
/// windows also cover the stream edges, so the output has one value per
/// input sample (offset 0). Throws ConfigError on invalid parameters or a
/// signal shorter than one window.
IfTrack lls_track(const IqBuffer& bb, const LlsParams& p);

/// Phase of bb accumulated from per-sample differences, starting at arg(bb[0]).
std::vector<double> unwrap_phase(std::span<const Complex> bb);

}  // namespace fcssk
