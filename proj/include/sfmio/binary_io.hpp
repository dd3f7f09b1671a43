#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <type_traits>

#include "sfmio/error.hpp"

namespace sfmio {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
T byte_swapped(T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
    std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

/// Reads one little-endian value; throws ParseError on a truncated stream.
template <typename T>
T read_le(std::istream& in) {
  T value;
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T)))
    throw ParseError("truncated stream while reading binary value");
  if constexpr (std::endian::native == std::endian::big) value = byte_swapped(value);
  return value;
}

template <typename T>
T read_be(std::istream& in) {
  T value;
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T)))
    throw ParseError("truncated stream while reading binary value");
  if constexpr (std::endian::native == std::endian::little) value = byte_swapped(value);
  return value;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  if constexpr (std::endian::native == std::endian::big) value = byte_swapped(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void write_be(std::ostream& out, T value) {
  if constexpr (std::endian::native == std::endian::little) value = byte_swapped(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

/// Reads bytes up to and including the next NUL; returns them without it.
inline std::string read_nul_terminated(std::istream& in) {
  std::string out;
  char c;
  while (in.get(c)) {
    if (c == '\0') return out;
    out.push_back(c);
  }
  throw ParseError("truncated stream while reading string");
}

}  // namespace sfmio
