#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace lstar {

// Grid coordinate: x = column, y = row, origin top-left.
struct Cell {
    int x = 0;
    int y = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace lstar

template <>
struct std::hash<lstar::Cell> {
    std::size_t operator()(const lstar::Cell& c) const noexcept {
        return lstar::hash_mix(std::hash<int>{}(c.x), std::hash<int>{}(c.y));
    }
};
