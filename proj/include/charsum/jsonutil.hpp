#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

namespace charsum::jsonutil {

/// Hexadecimal float encoding: lossless, locale-independent, byte-stable.
inline std::string hexfloat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

inline double parse_hexfloat(const std::string& s) {
  return std::strtod(s.c_str(), nullptr);
}

/// FNV-1a 64-bit digest, rendered as 16 hex digits.
inline std::string digest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace charsum::jsonutil
