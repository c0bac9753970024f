#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace inexact {

/// An input row packed into an integer: bit j of the row is input bit b_j.
using Row = std::uint64_t;

/// Largest n for which rows fit the packed representation with room for
/// the integer outputs of BE and Sorting.
inline constexpr int kMaxBits = 62;

inline int popcount(Row r) { return std::popcount(r); }

inline bool bit_of(Row r, int j) { return ((r >> j) & 1U) != 0; }

inline Row low_mask(int n) { return n >= 64 ? ~Row{0} : (Row{1} << n) - 1; }

/// Packs b_0..b_{n-1}; every entry must be 0 or 1.
Row pack_bits(std::span<const std::uint8_t> bits);

std::vector<std::uint8_t> unpack_bits(Row row, int n);

/// Parses a bit string written most significant first ("b_{n-1}...b_0"),
/// the order used by the truth tables, so "110" is b_2=1, b_1=1, b_0=0.
std::vector<std::uint8_t> parse_bit_string(std::string_view text);

std::string format_bit_string(Row row, int n);

}  // namespace inexact
