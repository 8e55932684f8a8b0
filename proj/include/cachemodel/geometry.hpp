#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "cachemodel/errors.hpp"

namespace cachemodel {

/// Size / associativity / line size of one cache level. The set count is
/// derived and must come out as a power of two so set indexing is a mask.
struct CacheGeometry {
    std::uint64_t size = 0;           // bytes
    std::uint32_t associativity = 1;  // ways
    std::uint32_t line_size = 64;     // bytes, power of two

    static CacheGeometry make(std::uint64_t size, std::uint32_t assoc, std::uint32_t line) {
        CacheGeometry g{size, assoc, line};
        g.validate();
        return g;
    }

    void validate() const {
        if (line_size == 0 || !std::has_single_bit(line_size))
            throw GeometryError("line size must be a nonzero power of two, got " +
                                std::to_string(line_size));
        if (associativity == 0) throw GeometryError("associativity must be >= 1");
        const std::uint64_t way_bytes = std::uint64_t(associativity) * line_size;
        if (size == 0 || size % way_bytes != 0)
            throw GeometryError("cache size " + std::to_string(size) +
                                " is not divisible by associativity * line size (" +
                                std::to_string(way_bytes) + ")");
        if (!std::has_single_bit(size / way_bytes))
            throw GeometryError("set count " + std::to_string(size / way_bytes) +
                                " is not a power of two");
    }

    std::uint64_t set_count() const { return size / (std::uint64_t(associativity) * line_size); }
    std::uint64_t capacity_lines() const { return size / line_size; }

    std::uint64_t line_index(std::uint64_t byte_addr) const { return byte_addr / line_size; }
    std::uint64_t line_addr(std::uint64_t byte_addr) const {
        return byte_addr & ~std::uint64_t(line_size - 1);
    }
    std::uint64_t set_index(std::uint64_t byte_addr) const {
        return line_index(byte_addr) & (set_count() - 1);
    }

    bool operator==(const CacheGeometry&) const = default;
};

}  // namespace cachemodel
