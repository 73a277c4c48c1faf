#include "fcssk/detect.hpp"

#include <cmath>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i] * b[i];
  }
  return acc;
}

void check_track(const IfTrack& track, const ModParams& mp) {
  if (track.offset != 0) {
    throw ConfigError("detector expects a track with offset 0");
  }
  if (track.fs != mp.chirp.fs && track.fs != 0.0) {
    throw ConfigError("track sample rate does not match the modulation parameters");
  }
}

}  // namespace

TemplateBank::TemplateBank(const ModParams& mp, const CodeSpec& code) {
  if (mp.code != code.name) {
    throw ConfigError("template bank code does not match the modulation parameters");
  }
  symbol_len_ = mp.symbol_len();
  const std::size_t count = mp.code == CodeName::manchester ? 2 : code.codebook.size();
  templates_.reserve(count);
  norms_.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    CodedFrame frame;
    frame.code = mp.code;
    frame.coded_bit_len = mp.coded_bit_len;
    if (mp.code == CodeName::manchester) {
      frame.bits = {static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(1 - k)};
    } else {
      frame.bits = codeword_bits(code, k);
    }
    std::vector<double> t = ideal_deviation_track(frame, mp).values;
    const double energy = std::sqrt(dot(t.data(), t.data(), t.size()));
    if (energy > 0.0) {
      for (double& v : t) {
        v /= energy;
      }
    }
    templates_.push_back(std::move(t));
    norms_.push_back(energy);
  }
}

Decision detect_manchester(const IfTrack& track, const ModParams& mp) {
  if (mp.code != CodeName::manchester) {
    throw ConfigError("Manchester detector used with another code");
  }
  check_track(track, mp);
  const TemplateBank bank(mp, code_spec(CodeName::manchester));
  const std::vector<double>& one = bank.unit(1);
  const std::size_t len = bank.symbol_len();
  const std::size_t count = track.size() / len;

  Decision out;
  out.bits.reserve(count);
  out.metrics.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double c = dot(track.values.data() + s * len, one.data(), len);
    out.bits.push_back(c > 0.0 ? 1 : 0);
    out.metrics.push_back(c / bank.norm(1));
  }
  out.dropped_samples = track.size() - count * len;
  return out;
}

Decision detect_6b8b(const IfTrack& track, const ModParams& mp, const CodeSpec& code) {
  if (mp.code != CodeName::b6b8 || code.name != CodeName::b6b8) {
    throw ConfigError("6b8b detector used with another code");
  }
  check_track(track, mp);
  const TemplateBank bank(mp, code);
  const std::size_t len = bank.symbol_len();
  const std::size_t count = track.size() / len;

  Decision out;
  out.bits.reserve(count * static_cast<std::size_t>(code.p));
  out.metrics.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double* seg = track.values.data() + s * len;
    std::size_t best = 0;
    double best_c = dot(seg, bank.unit(0).data(), len);
    for (std::size_t k = 1; k < bank.size(); ++k) {
      const double c = dot(seg, bank.unit(k).data(), len);
      if (c > best_c) {
        best_c = c;
        best = k;
      }
    }
    for (int b = code.p - 1; b >= 0; --b) {
      out.bits.push_back(static_cast<std::uint8_t>((best >> b) & 1U));
    }
    out.metrics.push_back(best_c / bank.norm(best));
  }
  out.dropped_samples = track.size() - count * len;
  return out;
}

Decision detect(const IfTrack& track, const ModParams& mp) {
  if (mp.code == CodeName::manchester) {
    return detect_manchester(track, mp);
  }
  return detect_6b8b(track, mp, code_spec(CodeName::b6b8));
}

}  // namespace fcssk
