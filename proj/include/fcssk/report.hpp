#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fcssk/simulate.hpp"

namespace fcssk {

inline constexpr std::string_view kCsvHeader = "snr_db,code,bitrate,estimator,bits,errors,ber";

/// Header plus one LF-terminated row per record; ber with 6 significant digits.
std::string to_csv(const std::vector<BerRecord>& records);

/// Columns are matched by header name (any order). Throws FormatError naming
/// the first missing column, or ParseError on a malformed row.
std::vector<BerRecord> parse_csv(std::string_view text);

/// Log-y BER vs SNR chart, one polyline per (code, bitrate, estimator) with a
/// legend. Zero-BER points are not drawn. Throws FormatError on no records.
std::string render_svg(const std::vector<BerRecord>& records);

}  // namespace fcssk
