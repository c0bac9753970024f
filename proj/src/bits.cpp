#include "inexact/bits.hpp"

#include "inexact/error.hpp"

namespace inexact {

Row pack_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() > static_cast<std::size_t>(kMaxBits)) {
    throw invalid_input_error("bit vector longer than " + std::to_string(kMaxBits));
  }
  Row row = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] > 1) {
      throw invalid_input_error("bit " + std::to_string(j) + " is not 0 or 1");
    }
    row |= static_cast<Row>(bits[j]) << j;
  }
  return row;
}

std::vector<std::uint8_t> unpack_bits(Row row, int n) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    bits[static_cast<std::size_t>(j)] = bit_of(row, j) ? 1 : 0;
  }
  return bits;
}

std::vector<std::uint8_t> parse_bit_string(std::string_view text) {
  if (text.empty()) throw invalid_input_error("empty bit string");
  std::vector<std::uint8_t> bits(text.size());
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c != '0' && c != '1') {
      throw invalid_input_error("bit string may only contain 0 and 1: '" + std::string(text) + "'");
    }
    bits[text.size() - 1 - pos] = c == '1' ? 1 : 0;
  }
  return bits;
}

std::string format_bit_string(Row row, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j) {
    if (bit_of(row, j)) s[static_cast<std::size_t>(n - 1 - j)] = '1';
  }
  return s;
}

}  // namespace inexact
