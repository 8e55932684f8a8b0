#include "cachemodel/format.hpp"

#include <cmath>
#include <cstdio>

#include "cachemodel/errors.hpp"

namespace cachemodel {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt_count(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) < 1e-9 && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", r);
        return buf;
    }
    return fmt6(v);
}

std::string format_size(std::uint64_t bytes) {
    constexpr std::uint64_t kKi = 1024;
    constexpr std::uint64_t kMi = 1024 * 1024;
    if (bytes >= kMi && bytes % kMi == 0) return std::to_string(bytes / kMi) + "M";
    if (bytes >= kKi && bytes % kKi == 0) return std::to_string(bytes / kKi) + "k";
    return std::to_string(bytes);
}

std::uint64_t parse_size(const std::string& text) {
    if (text.empty()) throw Error("empty size");
    std::uint64_t scale = 1;
    std::string digits = text;
    switch (text.back()) {
        case 'k':
        case 'K':
            scale = 1024;
            digits.pop_back();
            break;
        case 'm':
        case 'M':
            scale = 1024 * 1024;
            digits.pop_back();
            break;
        case 'g':
        case 'G':
            scale = 1024ULL * 1024 * 1024;
            digits.pop_back();
            break;
        default:
            break;
    }
    if (digits.empty()) throw Error("bad size '" + text + "'");
    std::size_t pos = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(digits, &pos);
    } catch (const std::exception&) {
        throw Error("bad size '" + text + "'");
    }
    if (pos != digits.size()) throw Error("bad size '" + text + "'");
    return value * scale;
}

std::string config_label(const CacheGeometry& l1, const CacheGeometry& l2) {
    return format_size(l1.size) + "-" + format_size(l2.size) + "-" +
           std::to_string(l1.associativity) + "-" + std::to_string(l2.associativity);
}

}  // namespace cachemodel
