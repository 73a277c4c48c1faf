#include "fcssk/fileio.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "fcssk/errors.hpp"

namespace fcssk {

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xFFU) << 24) | ((v & 0xFF00U) << 8) | ((v >> 8) & 0xFF00U) | (v >> 24);
  }
  return v;
}

void put_float(std::string& out, float f) {
  const std::uint32_t v = to_le(std::bit_cast<std::uint32_t>(f));
  char raw[4];
  std::memcpy(raw, &v, 4);
  out.append(raw, 4);
}

float get_float(const char* p) {
  std::uint32_t v = 0;
  std::memcpy(&v, p, 4);
  return std::bit_cast<float>(to_le(v));
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

}  // namespace

std::string encode_cf32(const IqBuffer& buf) {
  std::string out;
  out.reserve(buf.size() * 8);
  for (const Complex& z : buf.samples) {
    put_float(out, static_cast<float>(z.real()));
    put_float(out, static_cast<float>(z.imag()));
  }
  return out;
}

IqBuffer decode_cf32(std::string_view bytes, double fs) {
  if (bytes.size() % 8 != 0) {
    std::ostringstream os;
    os << "cf32 data of " << bytes.size() << " bytes is not a whole number of samples";
    throw FormatError(os.str());
  }
  IqBuffer buf;
  buf.fs = fs;
  buf.samples.reserve(bytes.size() / 8);
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    buf.samples.emplace_back(get_float(bytes.data() + i), get_float(bytes.data() + i + 4));
  }
  return buf;
}

Bits parse_bits(std::string_view text) {
  Bits bits;
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!is_space(c)) {
      std::ostringstream os;
      os << "invalid bit character at line " << line << ", column " << column << " (offset " << i
         << ")";
      throw ParseError(os.str(), line, column, i);
    }
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return bits;
}

std::string format_bits(const Bits& bits) {
  std::string out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out.push_back(bits[i] ? '1' : '0');
    if (i % 64 == 63 || i + 1 == bits.size()) {
      out.push_back('\n');
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path.string() + "' for reading");
  }
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw Error("failed writing '" + path.string() + "'");
  }
}

}  // namespace fcssk
