#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fcssk/codec.hpp"
#include "fcssk/sigcore.hpp"

namespace fcssk {

/// Interleaved I,Q binary32 little-endian, no header.
std::string encode_cf32(const IqBuffer& buf);
/// Throws FormatError unless the byte count is a multiple of 8.
IqBuffer decode_cf32(std::string_view bytes, double fs);

/// ASCII '0'/'1'; whitespace is skipped. Any other byte raises ParseError
/// carrying its 1-based line/column and 0-based byte offset.
Bits parse_bits(std::string_view text);
/// Bits as '0'/'1' characters, 64 per line; empty input gives an empty string.
std::string format_bits(const Bits& bits);

/// Whole-file helpers; throw Error when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

}  // namespace fcssk
