#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fcssk/codec.hpp"
#include "fcssk/receiver.hpp"

namespace fcssk {

inline constexpr std::size_t kDefaultBits = 100000;
inline constexpr std::size_t kQuickBits = 10000;

struct RunConfig {
  double b0 = 1024.0;
  double rep_rate = 4.0;
  double fs = 65536.0;
  bool strict = false;
  std::vector<CodeName> codes{CodeName::manchester};
  std::vector<double> bitrates{128.0};
  std::vector<Estimator> estimators{Estimator::dpll};
  double snr_start = -30.0;
  double snr_stop = 30.0;
  double snr_step = 2.0;
  std::size_t bits = kDefaultBits;  // info bits per grid point
  std::uint64_t seed = 1;
  bool sync = true;
  std::size_t burst_periods = 16;   // chirp periods per simulated burst
};

/// Throws ConfigError on an empty or reversed grid, a nonpositive step, or
/// empty code/bitrate/estimator lists.
void validate(const RunConfig& cfg);

/// start, start + step, ... up to stop (inclusive within 1e-9 dB).
std::vector<double> snr_grid(const RunConfig& cfg);

/// One CSV row. `estimator` is "dpll", "lls", or "crb" for theory rows.
struct BerRecord {
  double snr_db = 0.0;
  CodeName code = CodeName::manchester;
  double bitrate = 0.0;
  std::string estimator;
  std::size_t bits = 0;
  std::size_t errors = 0;
  double ber = 0.0;
};

/// Orders by (code name, bitrate, estimator name, snr).
void sort_records(std::vector<BerRecord>& records);

/// Monte-Carlo BER sweep.
///
/// Each grid point transmits floor(bits / p) * p info bits in bursts of about
/// `burst_periods` chirp periods. Every burst draws its info bits, its delay
/// tau in [0, n) and its noise from streams seeded by (seed, code, bitrate,
/// snr, burst index, purpose); the estimator is not part of the seed, so all
/// estimators see identical received samples. When sync fails on a burst the
/// receiver proceeds with tau_hat = 0. Records come back sorted.
std::vector<BerRecord> simulate(const RunConfig& cfg);

/// Rows of the closed-form curve for every (code, bitrate) on the grid, with
/// estimator "crb", bits = errors = 0 and ber = pe.
std::vector<BerRecord> theory_records(const RunConfig& cfg);

}  // namespace fcssk
