#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ose {

/// The mt19937_64 engine is fully specified by the standard, so seeded
/// streams match across platforms. The standard distributions are not;
/// the helpers below replace the ones we need.
using Rng = std::mt19937_64;

/// Uniform draw from {0, ..., bound - 1} by rejection, bias-free and
/// identical on every conforming implementation.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

/// First `count` steps of a Fisher-Yates shuffle over {0, ..., size - 1};
/// returns the selected indices in draw order.
inline std::vector<std::size_t> sample_indices(Rng& rng, std::size_t size, std::size_t count) {
    std::vector<std::size_t> pool(size);
    for (std::size_t i = 0; i < size; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count && i < size; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(draw_below(rng, size - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

} // namespace ose
