#include "fcssk/receiver.hpp"

#include <cmath>

#include "fcssk/errors.hpp"
#include "fcssk/ifest.hpp"

namespace fcssk {

std::string_view to_string(Estimator est) {
  return est == Estimator::dpll ? "dpll" : "lls";
}

Estimator parse_estimator(std::string_view text) {
  if (text == "dpll") {
    return Estimator::dpll;
  }
  if (text == "lls") {
    return Estimator::lls;
  }
  throw ConfigError("unknown estimator '" + std::string(text) + "' (expected dpll or lls)");
}

FrontEnd front_end(const IqBuffer& rx, const ModParams& mp, bool use_sync, std::size_t symbols) {
  FrontEnd fe;
  IqBuffer aligned;
  if (use_sync) {
    fe.sync = estimate_timing(rx, mp.chirp);
    aligned = align(rx, *fe.sync);
  } else {
    aligned = rx;
  }
  const std::size_t sym_len = mp.symbol_len();
  if (symbols == 0) {
    symbols = (aligned.size() + sym_len / 2) / sym_len;
  }
  fe.symbols = symbols;
  const std::size_t target = symbols * sym_len;
  if (aligned.size() > target) {
    fe.dropped_samples = aligned.size() - target;
    aligned.samples.resize(target);
  } else if (aligned.size() < target) {
    if (aligned.empty()) {
      throw FramingError("no samples left after timing alignment");
    }
    aligned.samples.resize(target, aligned.samples.back());
  }
  fe.baseband = downconvert(aligned, mp.chirp, lowpass_cutoff(mp));
  return fe;
}

IfTrack estimate_if(const IqBuffer& baseband, const ModParams& mp, Estimator est) {
  if (est == Estimator::dpll) {
    return dpll_track(baseband, default_dpll_params(mp));
  }
  return lls_track(baseband, default_lls_params(mp));
}

Reception receive(const IqBuffer& rx, const ModParams& mp, Estimator est, bool use_sync,
                  std::size_t symbols) {
  Reception out;
  const FrontEnd fe = front_end(rx, mp, use_sync, symbols);
  out.sync = fe.sync;
  if (fe.symbols > 0) {
    out.decision = detect(estimate_if(fe.baseband, mp, est), mp);
  }
  out.decision.dropped_samples += fe.dropped_samples;
  return out;
}

}  // namespace fcssk
