#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fcssk/codec.hpp"
#include "fcssk/sigcore.hpp"

namespace fcssk {

/// Cramer-Rao bound on the variance of a single-tone frequency estimate:
///   12 fs^2 / ((2 pi)^2 snr n_obs (n_obs^2 - 1))   [Hz^2]
/// Throws ConfigError for n_obs < 2 or snr <= 0.
double crb_variance(double snr_linear, std::size_t n_obs, double fs);

/// Observation window per coded bit: M/2 (Manchester) or 3M/4 (6b8b).
std::size_t observation_length(CodeName code, std::size_t m);

/// Area under the baseband deviation per bit, b0 M^2 / (2n) for Manchester
/// and 9/4 of that for 6b8b.
double bit_energy(CodeName code, const ChirpParams& params, std::size_t m);

/// Gaussian tail Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

/// Q(sqrt(2 e_b / var_f)).
double pe_crb(double e_b, double var_f);

struct TheoryPoint {
  double snr_db = 0.0;
  CodeName code = CodeName::manchester;
  double bitrate = 0.0;
  std::size_t n_obs = 0;
  double var_f = 0.0;
  double e_b = 0.0;
  double pe = 0.0;
};

/// One point per grid entry. Throws ConfigError on an empty grid or a
/// bitrate that does not divide fs into a valid symbol length.
std::vector<TheoryPoint> theory_curve(CodeName code, double bitrate, const ChirpParams& params,
                                      std::span<const double> snr_grid_db);

/// SNR (dB) at which the curve reaches `pe`, by bisection on [lo, hi].
double snr_at_pe(CodeName code, double bitrate, const ChirpParams& params, double pe,
                 double lo_db = -100.0, double hi_db = 100.0);

}  // namespace fcssk
