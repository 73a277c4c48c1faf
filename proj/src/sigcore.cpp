#include "fcssk/sigcore.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ChirpParams derive_params(double b0, double rep_rate, double fs, bool strict) {
  if (!(b0 > 0.0) || !(rep_rate > 0.0) || !(fs > 0.0)) {
    throw ConfigError("b0, rep_rate and fs must be positive");
  }
  const double ratio = fs / rep_rate;
  const double n_real = std::round(ratio);
  if (n_real < 2.0 || n_real * rep_rate != fs) {
    std::ostringstream os;
    os << "fs (" << fs << ") is not an integer multiple of rep_rate (" << rep_rate << ")";
    throw ConfigError(os.str());
  }
  if (b0 >= fs / 2.0) {
    std::ostringstream os;
    os << "chirp bandwidth " << b0 << " Hz aliases at fs = " << fs;
    throw AliasingError(os.str());
  }
  if (strict) {
    if (rep_rate < 2.0 || rep_rate > 4.0) {
      throw ConfigError("strict: repetition rate must lie in [2, 4] Hz");
    }
    if (b0 < 700.0) {
      throw ConfigError("strict: chirp bandwidth must be at least 700 Hz");
    }
  }

  ChirpParams p;
  p.b0 = b0;
  p.rep_rate = rep_rate;
  p.fs = fs;
  p.n = static_cast<std::size_t>(n_real);
  p.k0 = b0 / n_real;
  p.t0 = 1.0 / rep_rate;
  return p;
}

ChirpSynthesizer::ChirpSynthesizer(const ChirpParams& params)
    : b0_(params.b0),
      phase_scale_(kTwoPi / params.fs),
      period_(params.n),
      freq_(-params.k0) {}

Complex ChirpSynthesizer::next(double slope) {
  if (index_ != 0 && index_ % period_ == 0) {
    freq_ -= b0_;
  }
  freq_ += slope;
  phase_ += phase_scale_ * freq_;
  // |increment| < pi while |f| < fs/2, so one correction keeps phase in (-pi, pi].
  if (phase_ > std::numbers::pi) {
    phase_ -= kTwoPi;
  } else if (phase_ <= -std::numbers::pi) {
    phase_ += kTwoPi;
  }
  ++index_;
  return std::polar(1.0, phase_);
}

IqBuffer reference_samples(const ChirpParams& params, std::size_t count) {
  IqBuffer out;
  out.fs = params.fs;
  out.samples.resize(count);
  ChirpSynthesizer synth(params);
  for (auto& s : out.samples) {
    s = synth.next(params.k0);
  }
  return out;
}

IqBuffer reference_chirp(const ChirpParams& params, std::size_t n_periods) {
  if (n_periods == 0) {
    throw ConfigError("reference_chirp needs at least one period");
  }
  return reference_samples(params, n_periods * params.n);
}

IfTrack instantaneous_frequency(const IqBuffer& buf) {
  if (buf.size() < 2) {
    throw SignalError("instantaneous frequency needs at least two samples");
  }
  IfTrack track;
  track.fs = buf.fs;
  track.offset = 1;
  track.values.resize(buf.size() - 1);
  const double scale = buf.fs / kTwoPi;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (buf.samples[i] == Complex{0.0, 0.0}) {
      std::ostringstream os;
      os << "undefined phase: zero sample at index " << i;
      throw SignalError(os.str());
    }
  }
  for (std::size_t i = 0; i + 1 < buf.size(); ++i) {
    track.values[i] = std::arg(buf.samples[i + 1] * std::conj(buf.samples[i])) * scale;
  }
  return track;
}

}  // namespace fcssk
