#pragma once

#include <cstdint>
#include <string>

#include "cachemodel/geometry.hpp"

namespace cachemodel {

/// Fixed 6-decimal formatting; every numeric output goes through this so
/// golden files diff cleanly.
std::string fmt6(double v);

/// Counts print as integers when integral, 6-decimal fixed otherwise.
std::string fmt_count(double v);

/// 16384 -> "16k", 4194304 -> "4M"; exact byte count when not a clean
/// multiple.
std::string format_size(std::uint64_t bytes);

/// "16k"/"4M"/"32768" -> bytes.
std::uint64_t parse_size(const std::string& text);

/// Sweep-style configuration label: `<l1>-<l2>-<l1 assoc>-<l2 assoc>`,
/// e.g. "16k-64k-2-8".
std::string config_label(const CacheGeometry& l1, const CacheGeometry& l2);

}  // namespace cachemodel
