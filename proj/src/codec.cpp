#include "fcssk/codec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <string>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {

int boundary_run_sum(unsigned octet) {
  auto bit = [octet](int pos) { return (octet >> (7 - pos)) & 1u; };
  int lead = 1;
  while (lead < 8 && bit(lead) == bit(0)) {
    ++lead;
  }
  int trail = 1;
  while (trail < 8 && bit(7 - trail) == bit(7)) {
    ++trail;
  }
  return lead + trail;
}

constexpr std::size_t kExcludedOctets = 6;

}  // namespace

std::string_view to_string(CodeName code) {
  switch (code) {
    case CodeName::manchester:
      return "manchester";
    case CodeName::b6b8:
      return "6b8b";
  }
  return "?";
}

CodeName parse_code(std::string_view text) {
  if (text == "manchester") {
    return CodeName::manchester;
  }
  if (text == "6b8b") {
    return CodeName::b6b8;
  }
  throw ConfigError("unknown code '" + std::string(text) + "' (expected manchester or 6b8b)");
}

CodeSpec manchester_spec() {
  CodeSpec spec;
  spec.name = CodeName::manchester;
  spec.p = 1;
  spec.q = 2;
  spec.w = 1;
  spec.codebook = {0b01, 0b10};
  return spec;
}

CodeSpec build_6b8b_codebook() {
  std::vector<unsigned> candidates;
  for (unsigned v = 0; v < 256; ++v) {
    if (std::popcount(v) == 4) {
      candidates.push_back(v);
    }
  }
  std::vector<unsigned> ranked = candidates;
  std::stable_sort(ranked.begin(), ranked.end(), [](unsigned a, unsigned b) {
    const int ra = boundary_run_sum(a);
    const int rb = boundary_run_sum(b);
    return ra != rb ? ra > rb : a < b;
  });
  const std::vector<unsigned> excluded(ranked.begin(), ranked.begin() + kExcludedOctets);

  CodeSpec spec;
  spec.name = CodeName::b6b8;
  spec.p = 6;
  spec.q = 8;
  spec.w = 4;
  for (unsigned v : candidates) {
    if (std::find(excluded.begin(), excluded.end(), v) == excluded.end()) {
      spec.codebook.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return spec;
}

const CodeSpec& code_spec(CodeName code) {
  static const CodeSpec manchester = manchester_spec();
  static const CodeSpec b6b8 = build_6b8b_codebook();
  return code == CodeName::manchester ? manchester : b6b8;
}

std::size_t coded_bit_length(CodeName code, std::size_t m) {
  if (code == CodeName::manchester) {
    if (m % 2 != 0) {
      throw ConfigError("Manchester needs an even number of samples per info bit");
    }
    return m / 2;
  }
  if ((3 * m) % 4 != 0) {
    throw ConfigError("6b8b needs samples per info bit divisible by 4");
  }
  return 3 * m / 4;
}

Bits codeword_bits(const CodeSpec& spec, std::size_t value) {
  Bits out(static_cast<std::size_t>(spec.q));
  const unsigned word = spec.codebook.at(value);
  for (int i = 0; i < spec.q; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((word >> (spec.q - 1 - i)) & 1u);
  }
  return out;
}

CodedFrame manchester_encode(std::span<const std::uint8_t> info, std::size_t m) {
  CodedFrame frame;
  frame.code = CodeName::manchester;
  frame.coded_bit_len = m == 0 ? 0 : coded_bit_length(CodeName::manchester, m);
  frame.bits.reserve(2 * info.size());
  for (std::uint8_t u : info) {
    const std::uint8_t bit = u ? 1 : 0;
    frame.bits.push_back(bit);
    frame.bits.push_back(bit ^ 1u);
  }
  return frame;
}

ManchesterDecoded manchester_decode(std::span<const std::uint8_t> coded) {
  if (coded.size() % 2 != 0) {
    throw FramingError("Manchester stream has odd length " + std::to_string(coded.size()));
  }
  ManchesterDecoded out;
  out.bits.reserve(coded.size() / 2);
  for (std::size_t i = 0; i < coded.size() / 2; ++i) {
    const bool a = coded[2 * i] != 0;
    const bool b = coded[2 * i + 1] != 0;
    if (a == b) {
      out.violations.push_back(i);
      out.bits.push_back(0);
    } else {
      out.bits.push_back(a ? 1 : 0);
    }
  }
  return out;
}

CodedFrame b6b8_encode(std::span<const std::uint8_t> info, std::size_t m) {
  if (info.size() % 6 != 0) {
    throw FramingError("6b8b input length " + std::to_string(info.size()) +
                       " is not a multiple of 6");
  }
  const CodeSpec& spec = code_spec(CodeName::b6b8);
  CodedFrame frame;
  frame.code = CodeName::b6b8;
  frame.coded_bit_len = m == 0 ? 0 : coded_bit_length(CodeName::b6b8, m);
  frame.bits.reserve(info.size() / 6 * 8);
  for (std::size_t blk = 0; blk < info.size() / 6; ++blk) {
    std::size_t value = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      value = (value << 1) | (info[6 * blk + i] ? 1u : 0u);
    }
    const unsigned word = spec.codebook[value];
    for (int i = 7; i >= 0; --i) {
      frame.bits.push_back(static_cast<std::uint8_t>((word >> i) & 1u));
    }
  }
  return frame;
}

Bits b6b8_decode_hard(std::span<const std::uint8_t> coded) {
  if (coded.size() % 8 != 0) {
    throw FramingError("6b8b stream length " + std::to_string(coded.size()) +
                       " is not a multiple of 8");
  }
  const CodeSpec& spec = code_spec(CodeName::b6b8);
  std::array<int, 256> inverse;
  inverse.fill(-1);
  for (std::size_t v = 0; v < spec.codebook.size(); ++v) {
    inverse[spec.codebook[v]] = static_cast<int>(v);
  }
  Bits out;
  out.reserve(coded.size() / 8 * 6);
  for (std::size_t blk = 0; blk < coded.size() / 8; ++blk) {
    unsigned word = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      word = (word << 1) | (coded[8 * blk + i] ? 1u : 0u);
    }
    const int value = inverse[word];
    if (value < 0) {
      std::ostringstream os;
      os << "octet 0x" << std::hex << word << std::dec << " at block " << blk
         << " is not a 6b8b codeword";
      throw CodeViolation(os.str(), blk);
    }
    for (int i = 5; i >= 0; --i) {
      out.push_back(static_cast<std::uint8_t>((value >> i) & 1));
    }
  }
  return out;
}

CodedFrame encode(CodeName code, std::span<const std::uint8_t> info, std::size_t m) {
  return code == CodeName::manchester ? manchester_encode(info, m) : b6b8_encode(info, m);
}

}  // namespace fcssk
