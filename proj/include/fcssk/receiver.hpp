#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "fcssk/detect.hpp"
#include "fcssk/sigcore.hpp"
#include "fcssk/sync.hpp"
#include "fcssk/txmod.hpp"

namespace fcssk {

enum class Estimator { dpll, lls };

std::string_view to_string(Estimator est);
/// Accepts "dpll" and "lls"; throws ConfigError otherwise.
Estimator parse_estimator(std::string_view text);

/// Timing correction and the front end that feeds the estimators.
struct FrontEnd {
  std::optional<SyncEstimate> sync;  // empty when sync was disabled
  IqBuffer baseband;                 // aligned, lowpass-filtered, symbol-framed
  std::size_t symbols = 0;
  std::size_t dropped_samples = 0;   // aligned samples past the last symbol
};

/// Runs sync (when enabled), drops the estimated offset, frames the stream to
/// `symbols` whole symbols (0 = round the aligned length to the nearest
/// symbol count) by truncation or by repeating the last sample, and
/// downconverts. Sync errors propagate.
FrontEnd front_end(const IqBuffer& rx, const ModParams& mp, bool use_sync, std::size_t symbols = 0);

/// IF track of a front-end output with the chosen estimator and its defaults.
IfTrack estimate_if(const IqBuffer& baseband, const ModParams& mp, Estimator est);

struct Reception {
  std::optional<SyncEstimate> sync;
  Decision decision;
};

/// Full receive chain: front_end, estimate_if, detect.
Reception receive(const IqBuffer& rx, const ModParams& mp, Estimator est, bool use_sync,
                  std::size_t symbols = 0);

}  // namespace fcssk
