#include "fcssk/txmod.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {

void check_frame(const CodedFrame& frame, const ModParams& mp) {
  if (frame.code != mp.code) {
    throw ConfigError("frame code '" + std::string(to_string(frame.code)) +
                      "' does not match modulator code '" + std::string(to_string(mp.code)) + "'");
  }
  if (frame.coded_bit_len != 0 && frame.coded_bit_len != mp.coded_bit_len) {
    throw ConfigError("frame coded-bit length does not match modulator parameters");
  }
}

}  // namespace

std::size_t ModParams::symbol_len() const noexcept {
  return code == CodeName::manchester ? m : 6 * m;
}

std::size_t ModParams::info_bits_per_symbol() const noexcept {
  return code == CodeName::manchester ? 1 : 6;
}

ModParams make_mod_params(const ChirpParams& chirp, CodeName code, double bitrate) {
  if (!(bitrate > 0.0)) {
    throw ConfigError("bitrate must be positive");
  }
  const double m_real = std::round(chirp.fs / bitrate);
  if (m_real < 2.0 || m_real * bitrate != chirp.fs) {
    std::ostringstream os;
    os << "fs (" << chirp.fs << ") is not an integer multiple of the bitrate (" << bitrate << ")";
    throw ConfigError(os.str());
  }
  ModParams mp;
  mp.chirp = chirp;
  mp.code = code;
  mp.bitrate = bitrate;
  mp.m = static_cast<std::size_t>(m_real);
  mp.coded_bit_len = coded_bit_length(code, mp.m);
  mp.kappa0 = 0.0;
  mp.kappa1 = 2.0 * chirp.k0;
  return mp;
}

IqBuffer modulate(const CodedFrame& frame, const ModParams& mp) {
  check_frame(frame, mp);
  IqBuffer out;
  out.fs = mp.chirp.fs;
  out.samples.resize(frame.bits.size() * mp.coded_bit_len);
  ChirpSynthesizer synth(mp.chirp);
  std::size_t pos = 0;
  for (std::uint8_t bit : frame.bits) {
    const double slope = bit ? mp.kappa1 : mp.kappa0;
    for (std::size_t i = 0; i < mp.coded_bit_len; ++i) {
      out.samples[pos++] = synth.next(slope);
    }
  }
  return out;
}

IfTrack ideal_deviation_track(const CodedFrame& frame, const ModParams& mp) {
  check_frame(frame, mp);
  IfTrack track;
  track.fs = mp.chirp.fs;
  track.offset = 0;
  track.values.resize(frame.bits.size() * mp.coded_bit_len);
  // Integer step count keeps the deviation exact: each sample adds +k0 or -k0.
  long long steps = 0;
  std::size_t pos = 0;
  for (std::uint8_t bit : frame.bits) {
    const int dir = bit ? 1 : -1;
    for (std::size_t i = 0; i < mp.coded_bit_len; ++i) {
      steps += dir;
      track.values[pos++] = static_cast<double>(steps) * mp.chirp.k0;
    }
  }
  return track;
}

double peak_deviation(const ModParams& mp) {
  const CodeSpec& spec = code_spec(mp.code);
  long long peak = 0;
  for (std::size_t v = 0; v < spec.codebook.size(); ++v) {
    long long run = 0;
    for (std::uint8_t bit : codeword_bits(spec, v)) {
      run += bit ? 1 : -1;
      peak = std::max(peak, std::llabs(run));
    }
  }
  return static_cast<double>(peak) * static_cast<double>(mp.coded_bit_len) * mp.chirp.k0;
}

}  // namespace fcssk
