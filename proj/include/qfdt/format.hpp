// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace qfdt {

/// Deterministic, locale-free rendering of a feature value: integer form for
/// whole numbers, shortest round-trip decimal otherwise. Used everywhere a
/// value becomes text (model branch keys, CSV cells) so output is
/// byte-stable across runs and platforms.
inline std::string format_value(double v) {
  char buf[32];
  if (std::nearbyint(v) == v && std::abs(v) < 1e15) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf),
                                   static_cast<std::int64_t>(v));
    return std::string(buf, ptr);
  }
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Fixed two-decimal percentage (e.g. 0.90909 -> "90.91").
inline std::string format_percent(double ratio) {
  char buf[32];
  int n = std::snprintf(buf, sizeof(buf), "%.2f", ratio * 100.0);
  return std::string(buf, buf + n);
}

}  // namespace qfdt
