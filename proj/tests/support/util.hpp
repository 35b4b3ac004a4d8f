#pragma once

// Shared helpers for the test suites: hex parsing for frozen vectors and an
// error-code capture wrapper for failure-class assertions.

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nicbe/errors.hpp"

namespace nicbe::testutil {

inline std::vector<uint8_t> from_hex(std::string_view hex) {
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
  std::vector<uint8_t> out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = uint8_t(nib(hex[2 * i]) << 4 | nib(hex[2 * i + 1]));
  return out;
}

// Runs f and reports the ErrorCode it raises; ok means it completed.
template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

}  // namespace nicbe::testutil
