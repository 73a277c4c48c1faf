#pragma once

#include <cstddef>
#include <vector>

#include "fcssk/codec.hpp"
#include "fcssk/sigcore.hpp"
#include "fcssk/txmod.hpp"

namespace fcssk {

struct Decision {
  Bits bits;
  std::vector<double> metrics;      // one per decided symbol
  std::size_t dropped_samples = 0;  // trailing samples short of a full symbol
};

/// Unit-energy deviation templates, one per codeword value, each spanning one
/// symbol (M samples for Manchester, 6M for 6b8b). Built from
/// ideal_deviation_track so they match the modulator exactly.
class TemplateBank {
 public:
  TemplateBank(const ModParams& mp, const CodeSpec& code);

  std::size_t size() const noexcept { return templates_.size(); }
  std::size_t symbol_len() const noexcept { return symbol_len_; }
  const std::vector<double>& unit(std::size_t k) const { return templates_.at(k); }
  /// Energy norm of the unnormalized deviation template k.
  double norm(std::size_t k) const { return norms_.at(k); }

 private:
  std::size_t symbol_len_ = 0;
  std::vector<std::vector<double>> templates_;
  std::vector<double> norms_;
};

/// Per info bit, correlates the M-sample IF segment with the unit bit-1
/// triangle; positive correlation decides 1 (ties decide 0). The metric is
/// the correlation divided by the ideal triangle's norm, so a noiseless
/// bit 1 scores 1.
Decision detect_manchester(const IfTrack& track, const ModParams& mp);

/// Per codeword, picks the template with the largest correlation (ties toward
/// the lowest codebook index) and emits its 6 info bits MSB-first. The metric
/// is the winning correlation divided by the ideal template norm.
Decision detect_6b8b(const IfTrack& track, const ModParams& mp, const CodeSpec& code);

/// Dispatches on mp.code.
Decision detect(const IfTrack& track, const ModParams& mp);

}  // namespace fcssk
