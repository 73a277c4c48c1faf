#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fcssk {

using Bits = std::vector<std::uint8_t>;

enum class CodeName { manchester, b6b8 };

std::string_view to_string(CodeName code);
/// Accepts "manchester" and "6b8b"; throws ConfigError otherwise.
CodeName parse_code(std::string_view text);

/// Constant-weight block code mapping p info bits onto q coded bits of weight w.
/// Codewords are stored MSB-first: bit (q-1) of codebook[v] is transmitted first.
struct CodeSpec {
  CodeName name = CodeName::manchester;
  int p = 0;
  int q = 0;
  int w = 0;
  std::vector<std::uint8_t> codebook;  // 2^p entries (6b8b only)
};

CodeSpec manchester_spec();

/// 64-entry weight-4 octet table. All 70 weight-4 octets are ranked by the sum
/// of their leading and trailing run lengths; the top six (ties toward the
/// lexicographically smaller octet) are discarded and the remaining 64 are
/// assigned to values 0..63 in ascending order.
CodeSpec build_6b8b_codebook();

/// Shared immutable instance of either code.
const CodeSpec& code_spec(CodeName code);

/// Samples per coded bit for M samples per info bit: M/2 (Manchester) or 3M/4
/// (6b8b). Throws ConfigError when not an integer.
std::size_t coded_bit_length(CodeName code, std::size_t m);

struct CodedFrame {
  Bits bits;
  CodeName code = CodeName::manchester;
  std::size_t coded_bit_len = 0;  // samples per coded bit; 0 when unset
};

/// Each info bit u becomes (u, !u). `m` is the info-bit length in samples (0 = unset).
CodedFrame manchester_encode(std::span<const std::uint8_t> info, std::size_t m = 0);

struct ManchesterDecoded {
  Bits bits;
  std::vector<std::size_t> violations;  // pair indices holding (0,0) or (1,1)
};

/// Hard-decision inverse; invalid pairs decode to 0 and are listed in `violations`.
/// Throws FramingError on odd length.
ManchesterDecoded manchester_decode(std::span<const std::uint8_t> coded);

/// Throws FramingError unless the input length is a multiple of 6.
CodedFrame b6b8_encode(std::span<const std::uint8_t> info, std::size_t m = 0);

/// Throws FramingError unless the length is a multiple of 8, CodeViolation on
/// an octet outside the codebook.
Bits b6b8_decode_hard(std::span<const std::uint8_t> coded);

CodedFrame encode(CodeName code, std::span<const std::uint8_t> info, std::size_t m = 0);

/// Coded bits of one codeword, MSB first.
Bits codeword_bits(const CodeSpec& spec, std::size_t value);

}  // namespace fcssk
